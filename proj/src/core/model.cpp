#include "normcheck/core.hpp"

#include <algorithm>
#include <functional>

namespace normcheck {

bool ObjectDomain::contains(const std::string& constant) const
{
    return std::find(members.begin(), members.end(), constant) != members.end();
}

std::vector<Param> ActFrame::params() const
{
    std::vector<Param> out{actor};
    out.insert(out.end(), objects.begin(), objects.end());
    return out;
}

std::vector<Param> DutyFrame::params() const
{
    std::vector<Param> out{holder};
    out.insert(out.end(), objects.begin(), objects.end());
    return out;
}

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, const std::string& name)
{
    for (const auto& item : items)
        if (item.name == name)
            return &item;
    return nullptr;
}

} // namespace

const ObjectDomain* Model::find_domain(const std::string& name) const { return find_named(domains, name); }
const FactSymbol* Model::find_fact(const std::string& name) const { return find_named(facts, name); }
const ActFrame* Model::find_act(const std::string& name) const { return find_named(acts, name); }
const DutyFrame* Model::find_duty(const std::string& name) const { return find_named(duties, name); }

void Model::add(ObjectDomain d)
{
    order.push_back({DeclKind::domain, domains.size()});
    domains.push_back(std::move(d));
}

void Model::add(FactSymbol f)
{
    order.push_back({DeclKind::fact, facts.size()});
    facts.push_back(std::move(f));
}

void Model::add(ActFrame a)
{
    order.push_back({DeclKind::act, acts.size()});
    acts.push_back(std::move(a));
}

void Model::add(DutyFrame d)
{
    order.push_back({DeclKind::duty, duties.size()});
    duties.push_back(std::move(d));
}

void Model::add_initial(GroundAtom a)
{
    bool seen = std::any_of(order.begin(), order.end(), [](const DeclRef& r) { return r.kind == DeclKind::init; });
    if (!seen)
        order.push_back({DeclKind::init, 0});
    initial_facts.push_back(std::move(a));
}

bool operator==(const Model& a, const Model& b)
{
    return a.domains == b.domains && a.facts == b.facts && a.acts == b.acts && a.duties == b.duties
        && a.initial_facts == b.initial_facts && a.order == b.order;
}

std::optional<DutyStatus> State::duty_status(const DutyKey& k) const
{
    auto it = duties.find(k);
    if (it == duties.end())
        return std::nullopt;
    return it->second;
}

std::string to_string(DutyStatus s)
{
    switch (s) {
    case DutyStatus::active: return "active";
    case DutyStatus::terminated: return "terminated";
    case DutyStatus::enforced: return "enforced";
    }
    return "?";
}

const Param* binding_source(const ActFrame& act, const DutyFrame& duty, const Param& duty_param)
{
    if (act.actor.name == duty_param.name)
        return &act.actor;
    for (const auto& p : act.objects)
        if (p.name == duty_param.name)
            return &p;
    if (duty_param.name == duty.holder.name)
        return &act.actor;
    return nullptr;
}

Binding bind_params(const std::vector<Param>& params, const std::vector<std::string>& args)
{
    if (params.size() != args.size())
        throw DefectError("bind_params: arity mismatch");
    Binding b;
    for (std::size_t i = 0; i < params.size(); ++i)
        b[params[i].name] = args[i];
    return b;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

class Checker {
public:
    explicit Checker(const Model& m) : model_(m) {}

    std::vector<Diagnostic> run()
    {
        check_domains();
        check_unique_names();
        for (const auto& f : model_.facts)
            check_fact(f);
        for (const auto& a : model_.acts)
            check_act(a);
        for (const auto& d : model_.duties)
            check_duty(d);
        check_cycles();
        check_init();
        return std::move(diags_);
    }

private:
    void error(const std::string& decl, std::string message)
    {
        Diagnostic d;
        d.severity = Severity::error;
        d.message = std::move(message);
        d.declaration = decl;
        if (auto it = model_.lines.find(decl); it != model_.lines.end()) {
            d.line = it->second;
            d.column = 1;
        }
        diags_.push_back(std::move(d));
    }

    void check_domains()
    {
        std::set<std::string> names;
        for (const auto& d : model_.domains) {
            if (!names.insert(d.name).second)
                error(d.name, "duplicate domain '" + d.name + "'");
            if (d.members.empty())
                error(d.name, "domain '" + d.name + "' has no members");
            std::set<std::string> seen;
            for (const auto& m : d.members)
                if (!seen.insert(m).second)
                    error(d.name, "domain '" + d.name + "' lists '" + m + "' twice");
        }
    }

    void check_unique_names()
    {
        std::set<std::string> names;
        auto visit = [&](const std::string& n) {
            if (!names.insert(n).second)
                error(n, "duplicate declaration '" + n + "'");
        };
        for (const auto& f : model_.facts)
            visit(f.name);
        for (const auto& a : model_.acts)
            visit(a.name);
        for (const auto& d : model_.duties)
            visit(d.name);
    }

    void check_params(const std::string& decl, const std::vector<Param>& params)
    {
        std::set<std::string> names;
        for (const auto& p : params) {
            if (!names.insert(p.name).second)
                error(decl, "parameter '" + p.name + "' declared twice in '" + decl + "'");
            if (!model_.find_domain(p.domain))
                error(decl, "unknown domain '" + p.domain + "' in '" + decl + "'");
        }
    }

    // Returns false if the atom is ill-typed; diagnostics already emitted.
    bool check_atom(const std::string& decl, const FactAtom& atom, const std::vector<Param>& scope)
    {
        const FactSymbol* sym = model_.find_fact(atom.symbol);
        if (!sym) {
            error(decl, "unknown fact '" + atom.symbol + "' in '" + decl + "'");
            return false;
        }
        if (sym->params.size() != atom.args.size()) {
            error(decl, "fact '" + atom.symbol + "' expects " + std::to_string(sym->params.size())
                            + " argument(s), got " + std::to_string(atom.args.size()) + " in '" + decl + "'");
            return false;
        }
        bool ok = true;
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const Term& t = atom.args[i];
            const std::string& want = sym->params[i].domain;
            if (t.is_variable()) {
                auto it = std::find_if(scope.begin(), scope.end(), [&](const Param& p) { return p.name == t.name; });
                if (it == scope.end()) {
                    error(decl, "variable '" + t.name + "' is not a parameter of '" + decl + "'");
                    ok = false;
                } else if (it->domain != want) {
                    error(decl, "variable '" + t.name + "' has domain " + it->domain + " but '" + atom.symbol
                                    + "' expects " + want);
                    ok = false;
                }
            } else {
                const ObjectDomain* dom = model_.find_domain(want);
                if (dom && !dom->contains(t.name)) {
                    error(decl, "'" + t.name + "' is not a member of " + want + " in '" + decl + "'");
                    ok = false;
                }
            }
        }
        return ok;
    }

    void check_formula(const std::string& decl, const Formula& f, const std::vector<Param>& scope)
    {
        std::vector<FactAtom> atoms;
        f.collect_atoms(atoms);
        for (const auto& a : atoms)
            check_atom(decl, a, scope);
    }

    void check_fact(const FactSymbol& f)
    {
        check_params(f.name, f.params);
        if (f.kind == FactKind::derived) {
            if (!f.derivation)
                error(f.name, "derived fact '" + f.name + "' has no derivation formula");
            else
                check_formula(f.name, *f.derivation, f.params);
        } else if (f.derivation) {
            error(f.name, "atomic fact '" + f.name + "' carries a derivation formula");
        }
    }

    void check_assignable(const std::string& decl, const FactAtom& a, const std::vector<Param>& scope)
    {
        if (!check_atom(decl, a, scope))
            return;
        if (model_.find_fact(a.symbol)->kind == FactKind::derived)
            error(decl, "derived fact '" + a.symbol + "' cannot be created or terminated by '" + decl + "'");
    }

    void check_act(const ActFrame& a)
    {
        auto params = a.params();
        check_params(a.name, params);
        check_formula(a.name, a.precondition, params);
        for (const auto& atom : a.creates)
            check_assignable(a.name, atom, params);
        for (const auto& atom : a.terminates)
            check_assignable(a.name, atom, params);
    }

    void check_duty(const DutyFrame& d)
    {
        auto params = d.params();
        check_params(d.name, params);
        auto check_list = [&](const std::vector<std::string>& acts, const char* role) {
            if (acts.empty())
                error(d.name, std::string("duty '") + d.name + "' has an empty " + role + " list");
            for (const auto& name : acts) {
                const ActFrame* act = model_.find_act(name);
                if (!act) {
                    error(d.name, "duty '" + d.name + "' refers to unknown act '" + name + "'");
                    continue;
                }
                for (const auto& p : params) {
                    const Param* src = binding_source(*act, d, p);
                    if (!src)
                        error(d.name, "act '" + name + "' does not bind duty parameter '" + p.name + "' of '"
                                          + d.name + "'");
                    else if (src->domain != p.domain)
                        error(d.name, "act '" + name + "' binds duty parameter '" + p.name + "' of '" + d.name
                                          + "' with domain " + src->domain + ", expected " + p.domain);
                }
            }
        };
        check_list(d.created_by, "created-by");
        check_list(d.enforced_by, "enforced-by");
        check_list(d.terminated_by, "terminated-by");
    }

    void check_cycles()
    {
        // Tarjan over the derived-fact dependency graph; one error per cyclic SCC.
        std::map<std::string, std::vector<std::string>> edges;
        for (const auto& f : model_.facts) {
            if (f.kind != FactKind::derived || !f.derivation)
                continue;
            std::vector<FactAtom> atoms;
            f.derivation->collect_atoms(atoms);
            auto& out = edges[f.name];
            for (const auto& a : atoms) {
                const FactSymbol* s = model_.find_fact(a.symbol);
                if (s && s->kind == FactKind::derived)
                    out.push_back(a.symbol);
            }
        }

        std::map<std::string, int> index, low;
        std::set<std::string> on_stack;
        std::vector<std::string> stack;
        int counter = 0;

        std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack.insert(v);
            for (const auto& w : edges[v]) {
                if (!index.contains(w)) {
                    strongconnect(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.contains(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] != index[v])
                return;
            std::vector<std::string> component;
            std::string w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                component.push_back(w);
            } while (w != v);
            const auto& succ = edges[v];
            bool self_loop = std::find(succ.begin(), succ.end(), v) != succ.end();
            if (component.size() > 1 || self_loop) {
                std::reverse(component.begin(), component.end());
                std::string names;
                for (const auto& c : component)
                    names += (names.empty() ? "" : ", ") + c;
                error(component.front(), "cyclic derivation among derived facts: " + names);
            }
        };

        for (const auto& f : model_.facts)
            if (f.kind == FactKind::derived && !index.contains(f.name))
                strongconnect(f.name);
    }

    void check_init()
    {
        for (const auto& g : model_.initial_facts) {
            const FactSymbol* sym = model_.find_fact(g.symbol);
            if (!sym) {
                error("Init", "unknown fact '" + g.symbol + "' in Init");
                continue;
            }
            if (sym->kind == FactKind::derived) {
                error("Init", "derived fact '" + g.symbol + "' cannot be asserted in Init");
                continue;
            }
            check_atom("Init", lift(g), {});
        }
    }

    const Model& model_;
    std::vector<Diagnostic> diags_;
};

} // namespace

std::vector<Diagnostic> check_wellformed(const Model& model)
{
    return Checker(model).run();
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

std::string join_messages(const std::vector<Diagnostic>& diags)
{
    std::string msg = "ill-formed model";
    for (const auto& d : diags)
        if (d.is_error())
            msg += "\n  " + d.message;
    return msg;
}

// Every argument tuple over the given parameter domains, in lexicographic order.
std::vector<std::vector<std::string>> product(const Model& m, const std::vector<Param>& params)
{
    std::vector<std::vector<std::string>> out{{}};
    for (const auto& p : params) {
        std::vector<std::string> members = m.find_domain(p.domain)->members;
        std::sort(members.begin(), members.end());
        std::vector<std::vector<std::string>> next;
        for (const auto& prefix : out)
            for (const auto& c : members) {
                auto t = prefix;
                t.push_back(c);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

ModelError::ModelError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_messages(diags)), diags_(std::move(diags))
{
}

GroundModel::GroundModel(Model model) : model_(std::make_shared<const Model>(std::move(model)))
{
    if (auto diags = check_wellformed(*model_); has_errors(diags))
        throw ModelError(std::move(diags));

    std::vector<const ActFrame*> acts;
    for (const auto& a : model_->acts)
        acts.push_back(&a);
    std::sort(acts.begin(), acts.end(), [](auto* x, auto* y) { return x->name < y->name; });
    for (const auto* a : acts)
        for (auto& args : product(*model_, a->params()))
            acts_.push_back(GroundAct{a->name, std::move(args)});

    std::vector<const DutyFrame*> duties;
    for (const auto& d : model_->duties)
        duties.push_back(&d);
    std::sort(duties.begin(), duties.end(), [](auto* x, auto* y) { return x->name < y->name; });
    for (const auto* d : duties)
        for (auto& args : product(*model_, d->params()))
            duties_.push_back(DutyKey{d->name, std::move(args)});

    for (std::size_t i = 0; i < acts_.size(); ++i)
        index_.emplace(acts_[i], i);
}

const ActFrame& GroundModel::frame_of(const GroundAct& act) const
{
    const ActFrame* f = model_->find_act(act.act);
    if (!f)
        throw DefectError("unknown act '" + act.act + "'");
    return *f;
}

Binding GroundModel::binding_of(const GroundAct& act) const
{
    return bind_params(frame_of(act).params(), act.args);
}

DutyKey GroundModel::duty_key_for(const DutyFrame& duty, const GroundAct& act) const
{
    const ActFrame& frame = frame_of(act);
    Binding b = bind_params(frame.params(), act.args);
    DutyKey key{duty.name, {}};
    for (const auto& p : duty.params()) {
        const Param* src = binding_source(frame, duty, p);
        if (!src)
            throw DefectError("act '" + act.act + "' cannot bind duty '" + duty.name + "'");
        key.args.push_back(b.at(src->name));
    }
    return key;
}

Binding GroundModel::binding_of(const DutyKey& key) const
{
    const DutyFrame* d = model_->find_duty(key.duty);
    if (!d)
        throw DefectError("unknown duty '" + key.duty + "'");
    return bind_params(d->params(), key.args);
}

State GroundModel::initial_state() const
{
    State s;
    s.facts.insert(model_->initial_facts.begin(), model_->initial_facts.end());
    return s;
}

std::optional<std::size_t> GroundModel::index_of(const GroundAct& act) const
{
    auto it = index_.find(act);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

GroundModel ground_model(const Model& model)
{
    return GroundModel(model);
}

// ---------------------------------------------------------------------------
// Evaluation

bool eval(const GroundModel& gm, const State& state, const GroundAtom& atom)
{
    const FactSymbol* sym = gm.model().find_fact(atom.symbol);
    if (!sym)
        throw DefectError("unknown fact symbol '" + atom.symbol + "'");
    if (sym->params.size() != atom.args.size())
        throw DefectError("arity mismatch for '" + atom.symbol + "'");
    if (sym->kind == FactKind::atomic)
        return state.holds(atom);
    return eval(gm, state, substitute(*sym->derivation, bind_params(sym->params, atom.args)));
}

bool eval(const GroundModel& gm, const State& state, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::constant_true: return true;
    case Formula::Kind::constant_false: return false;
    case Formula::Kind::atom: {
        const FactAtom& a = f.atom();
        if (!a.is_ground())
            throw DefectError("eval on non-ground atom " + to_string(a));
        GroundAtom g{a.symbol, {}};
        for (const auto& t : a.args)
            g.args.push_back(t.name);
        return eval(gm, state, g);
    }
    case Formula::Kind::negation: return !eval(gm, state, f.operand());
    case Formula::Kind::conjunction: return eval(gm, state, f.lhs()) && eval(gm, state, f.rhs());
    case Formula::Kind::disjunction: return eval(gm, state, f.lhs()) || eval(gm, state, f.rhs());
    case Formula::Kind::implication: return !eval(gm, state, f.lhs()) || eval(gm, state, f.rhs());
    }
    throw DefectError("eval: unknown formula kind");
}

} // namespace normcheck
