#include "normcheck/sdl.hpp"

#include <algorithm>

namespace normcheck::sdl {

struct Formula::Node {
    Kind kind;
    std::string name;
    std::optional<Formula> lhs;
    std::optional<Formula> rhs;
};

Formula Formula::atom(std::string name)
{
    return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(name), {}, {}}));
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

Formula Formula::obligation(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Kind::obligation, {}, std::move(f), {}}));
}

Formula Formula::permission(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{Kind::permission, {}, std::move(f), {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::name() const
{
    if (node_->kind != Kind::atom)
        throw DefectError("sdl::Formula::name on non-atom");
    return node_->name;
}

const Formula& Formula::operand() const
{
    if (!node_->lhs || node_->rhs)
        throw DefectError("sdl::Formula::operand on non-unary formula");
    return *node_->lhs;
}

const Formula& Formula::lhs() const
{
    if (!node_->rhs)
        throw DefectError("sdl::Formula::lhs on non-binary formula");
    return *node_->lhs;
}

const Formula& Formula::rhs() const
{
    if (!node_->rhs)
        throw DefectError("sdl::Formula::rhs on non-binary formula");
    return *node_->rhs;
}

int Formula::modal_depth() const
{
    switch (kind()) {
    case Kind::atom: return 0;
    case Kind::negation: return operand().modal_depth();
    case Kind::obligation:
    case Kind::permission: return 1 + operand().modal_depth();
    default: return std::max(lhs().modal_depth(), rhs().modal_depth());
    }
}

std::size_t Formula::connective_count() const
{
    switch (kind()) {
    case Kind::atom: return 0;
    case Kind::negation:
    case Kind::obligation:
    case Kind::permission: return 1 + operand().connective_count();
    default: return 1 + lhs().connective_count() + rhs().connective_count();
    }
}

void Formula::collect_atoms(std::set<std::string>& out) const
{
    switch (kind()) {
    case Kind::atom: out.insert(name()); return;
    case Kind::negation:
    case Kind::obligation:
    case Kind::permission: operand().collect_atoms(out); return;
    default:
        lhs().collect_atoms(out);
        rhs().collect_atoms(out);
    }
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.node_->name != b.node_->name)
        return false;
    return a.node_->lhs == b.node_->lhs && a.node_->rhs == b.node_->rhs;
}

bool operator<(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return false;
    if (a.kind() != b.kind())
        return a.kind() < b.kind();
    if (a.node_->name != b.node_->name)
        return a.node_->name < b.node_->name;
    if (a.node_->lhs != b.node_->lhs)
        return a.node_->lhs < b.node_->lhs;
    return a.node_->rhs < b.node_->rhs;
}

namespace {

int precedence(Formula::Kind k)
{
    switch (k) {
    case Formula::Kind::implication: return 1;
    case Formula::Kind::disjunction: return 2;
    case Formula::Kind::conjunction: return 3;
    default: return 4;
    }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& f, int min_prec, std::string& out)
{
    bool parens = precedence(f.kind()) < min_prec;
    if (parens)
        out += '(';
    render(f, out);
    if (parens)
        out += ')';
}

void render(const Formula& f, std::string& out)
{
    switch (f.kind()) {
    case Formula::Kind::atom: out += f.name(); return;
    case Formula::Kind::negation:
        out += '~';
        render_child(f.operand(), 4, out);
        return;
    case Formula::Kind::obligation:
    case Formula::Kind::permission:
        out += f.kind() == Formula::Kind::obligation ? "O(" : "P(";
        render(f.operand(), out);
        out += ')';
        return;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        int p = precedence(f.kind());
        render_child(f.lhs(), p, out);
        out += f.kind() == Formula::Kind::conjunction ? " & " : " | ";
        render_child(f.rhs(), p + 1, out);
        return;
    }
    case Formula::Kind::implication:
        render_child(f.lhs(), 2, out);
        out += " -> ";
        render_child(f.rhs(), 1, out);
        return;
    }
}

Formula nnf(const Formula& f, bool positive)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::atom: return positive ? f : Formula::negation(f);
    case K::negation: return nnf(f.operand(), !positive);
    case K::conjunction:
        return positive ? Formula::conjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                        : Formula::disjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::disjunction:
        return positive ? Formula::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                        : Formula::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::implication:
        return positive ? Formula::disjunction(nnf(f.lhs(), false), nnf(f.rhs(), true))
                        : Formula::conjunction(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case K::obligation: {
        Formula o = Formula::obligation(nnf(f.operand(), true));
        return positive ? o : Formula::negation(o);
    }
    case K::permission: {
        // P(g) = ~O(~g)
        Formula o = Formula::obligation(nnf(f.operand(), false));
        return positive ? Formula::negation(o) : o;
    }
    }
    throw DefectError("nnf: unknown formula kind");
}

} // namespace

std::string to_string(const Formula& f)
{
    std::string out;
    render(f, out);
    return out;
}

Formula normalize(const Formula& f) { return nnf(f, true); }

std::set<std::string> atoms_of(const std::vector<Formula>& gamma)
{
    std::set<std::string> out;
    for (const auto& f : gamma)
        f.collect_atoms(out);
    return out;
}

int modal_depth(const std::vector<Formula>& gamma)
{
    int d = 0;
    for (const auto& f : gamma)
        d = std::max(d, f.modal_depth());
    return d;
}

std::string to_string(Verdict v)
{
    return v == Verdict::satisfiable ? "satisfiable" : "unsatisfiable";
}

} // namespace normcheck::sdl
