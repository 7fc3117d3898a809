#include "normcheck/core.hpp"

#include <sstream>

namespace normcheck {

struct Formula::Node {
    Kind kind;
    FactAtom atom;
    Formula lhs;
    Formula rhs;
};

Formula::Formula() : node_(nullptr) {}

Formula Formula::truth() { return Formula(); }

Formula Formula::falsity()
{
    return Formula(std::make_shared<const Node>(Node{Kind::constant_false, {}, {}, {}}));
}

Formula Formula::make_atom(FactAtom a)
{
    return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(a), {}, {}}));
}

Formula Formula::negation(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Kind::negation, {}, std::move(f), {}}));
}

Formula Formula::conjunction(Formula l, Formula r)
{
    return Formula(std::make_shared<const Node>(Node{Kind::conjunction, {}, std::move(l), std::move(r)}));
}

Formula Formula::disjunction(Formula l, Formula r)
{
    return Formula(std::make_shared<const Node>(Node{Kind::disjunction, {}, std::move(l), std::move(r)}));
}

Formula Formula::implication(Formula l, Formula r)
{
    return Formula(std::make_shared<const Node>(Node{Kind::implication, {}, std::move(l), std::move(r)}));
}

// A null node encodes the constant true so that default construction is cheap.
Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::constant_true; }

const FactAtom& Formula::atom() const
{
    if (kind() != Kind::atom)
        throw DefectError("Formula::atom on non-atom");
    return node_->atom;
}

const Formula& Formula::operand() const
{
    if (kind() != Kind::negation)
        throw DefectError("Formula::operand on non-negation");
    return node_->lhs;
}

const Formula& Formula::lhs() const
{
    if (!node_ || node_->kind == Kind::atom || node_->kind == Kind::constant_false)
        throw DefectError("Formula::lhs on leaf");
    return node_->lhs;
}

const Formula& Formula::rhs() const
{
    if (!node_ || node_->kind < Kind::conjunction)
        throw DefectError("Formula::rhs on non-binary formula");
    return node_->rhs;
}

bool Formula::is_ground() const
{
    switch (kind()) {
    case Kind::constant_true:
    case Kind::constant_false: return true;
    case Kind::atom: return node_->atom.is_ground();
    case Kind::negation: return node_->lhs.is_ground();
    default: return node_->lhs.is_ground() && node_->rhs.is_ground();
    }
}

void Formula::collect_atoms(std::vector<FactAtom>& out) const
{
    switch (kind()) {
    case Kind::constant_true:
    case Kind::constant_false: return;
    case Kind::atom: out.push_back(node_->atom); return;
    case Kind::negation: node_->lhs.collect_atoms(out); return;
    default:
        node_->lhs.collect_atoms(out);
        node_->rhs.collect_atoms(out);
    }
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Formula::Kind::constant_true:
    case Formula::Kind::constant_false: return true;
    case Formula::Kind::atom: return a.node_->atom == b.node_->atom;
    case Formula::Kind::negation: return a.node_->lhs == b.node_->lhs;
    default: return a.node_->lhs == b.node_->lhs && a.node_->rhs == b.node_->rhs;
    }
}

bool FactAtom::is_ground() const
{
    for (const auto& t : args)
        if (t.is_variable())
            return false;
    return true;
}

namespace {

template <typename Range, typename Fn>
std::string render_call(const std::string& name, const Range& args, Fn&& fn)
{
    if (args.empty())
        return name;
    std::string out = name + "(";
    bool first = true;
    for (const auto& a : args) {
        if (!first)
            out += ", ";
        out += fn(a);
        first = false;
    }
    return out + ")";
}

int precedence(Formula::Kind k)
{
    switch (k) {
    case Formula::Kind::implication: return 1;
    case Formula::Kind::disjunction: return 2;
    case Formula::Kind::conjunction: return 3;
    case Formula::Kind::negation: return 4;
    default: return 5;
    }
}

void render(const Formula& f, std::ostringstream& out);

void render_child(const Formula& child, int min_prec, std::ostringstream& out)
{
    if (precedence(child.kind()) < min_prec) {
        out << '(';
        render(child, out);
        out << ')';
    } else {
        render(child, out);
    }
}

void render(const Formula& f, std::ostringstream& out)
{
    switch (f.kind()) {
    case Formula::Kind::constant_true: out << "true"; return;
    case Formula::Kind::constant_false: out << "false"; return;
    case Formula::Kind::atom: out << to_string(f.atom()); return;
    case Formula::Kind::negation:
        out << "not ";
        render_child(f.operand(), 4, out);
        return;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        // Left-associative: a right child of equal precedence needs parentheses.
        int p = precedence(f.kind());
        render_child(f.lhs(), p, out);
        out << (f.kind() == Formula::Kind::conjunction ? " and " : " or ");
        render_child(f.rhs(), p + 1, out);
        return;
    }
    case Formula::Kind::implication:
        render_child(f.lhs(), 2, out);
        out << " -> ";
        render_child(f.rhs(), 1, out);
        return;
    }
}

} // namespace

std::string to_string(const FactAtom& a)
{
    return render_call(a.symbol, a.args, [](const Term& t) { return t.name; });
}

std::string to_string(const GroundAtom& a)
{
    return render_call(a.symbol, a.args, [](const std::string& s) { return s; });
}

std::string to_string(const GroundAct& a)
{
    // Ground acts always print their argument list, even when empty.
    std::string out = a.act + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i)
        out += (i ? ", " : "") + a.args[i];
    return out + ")";
}

std::string to_string(const DutyKey& k)
{
    return render_call(k.duty, k.args, [](const std::string& s) { return s; });
}

std::string to_string(const Formula& f)
{
    std::ostringstream out;
    render(f, out);
    return out.str();
}

FactAtom lift(const GroundAtom& a)
{
    FactAtom out{a.symbol, {}};
    for (const auto& c : a.args)
        out.args.push_back(Term::constant(c));
    return out;
}

FactAtom substitute(const FactAtom& a, const Binding& binding)
{
    FactAtom out{a.symbol, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        if (!t.is_variable()) {
            out.args.push_back(t);
            continue;
        }
        auto it = binding.find(t.name);
        if (it == binding.end())
            throw BindingError(t.name);
        out.args.push_back(Term::constant(it->second));
    }
    return out;
}

GroundAtom ground(const FactAtom& a, const Binding& binding)
{
    GroundAtom out{a.symbol, {}};
    for (const auto& t : substitute(a, binding).args)
        out.args.push_back(t.name);
    return out;
}

Formula substitute(const Formula& f, const Binding& binding)
{
    switch (f.kind()) {
    case Formula::Kind::constant_true:
    case Formula::Kind::constant_false: return f;
    case Formula::Kind::atom: return Formula::make_atom(substitute(f.atom(), binding));
    case Formula::Kind::negation: return Formula::negation(substitute(f.operand(), binding));
    case Formula::Kind::conjunction:
        return Formula::conjunction(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
    case Formula::Kind::disjunction:
        return Formula::disjunction(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
    case Formula::Kind::implication:
        return Formula::implication(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
    }
    throw DefectError("substitute: unknown formula kind");
}

std::string to_string(const Diagnostic& d)
{
    std::string out;
    if (d.line > 0)
        out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
    out += d.is_error() ? "error: " : "warning: ";
    out += d.message;
    return out;
}

} // namespace normcheck
