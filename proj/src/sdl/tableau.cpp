#include "normcheck/sdl.hpp"

#include <algorithm>
#include <map>

namespace normcheck::sdl {

namespace {

// One tableau world: the positive atoms of its open branch and the worlds
// created for its diamonds (or for seriality).
struct WorldTree {
    std::set<std::string> true_atoms;
    std::vector<WorldTree> children;
};

struct Branch {
    std::map<std::string, bool> literals;
    std::set<Formula> boxes;      // bodies of O(...)
    std::set<Formula> diamonds;   // bodies of ~O(...)
};

class Prover {
public:
    explicit Prover(const TableauOptions& options) : options_(options) {}

    std::optional<WorldTree> world(const std::vector<Formula>& formulas, std::size_t depth)
    {
        return expand(formulas, Branch{}, depth);
    }

    std::vector<std::string> certificate;
    std::size_t expansions = 0;

private:
    void tick()
    {
        if (++expansions > options_.node_budget)
            throw ResourceLimitError("tableau exceeded its node budget of " + std::to_string(options_.node_budget));
    }

    void close(std::size_t depth, std::string why)
    {
        certificate.push_back("w" + std::to_string(depth) + ": " + std::move(why));
    }

    // Formulas are in normal form: negation only in front of atoms and O.
    std::optional<WorldTree> expand(std::vector<Formula> todo, Branch branch, std::size_t depth)
    {
        using K = Formula::Kind;
        while (!todo.empty()) {
            Formula f = todo.back();
            todo.pop_back();
            tick();
            switch (f.kind()) {
            case K::atom:
            case K::negation: {
                if (f.kind() == K::negation && f.operand().kind() == K::obligation) {
                    branch.diamonds.insert(f.operand().operand());
                    break;
                }
                bool positive = f.kind() == K::atom;
                const std::string& name = positive ? f.name() : f.operand().name();
                auto [it, inserted] = branch.literals.emplace(name, positive);
                if (!inserted && it->second != positive) {
                    close(depth, "clash on " + name + " and ~" + name);
                    return std::nullopt;
                }
                break;
            }
            case K::conjunction:
                todo.push_back(f.rhs());
                todo.push_back(f.lhs());
                break;
            case K::disjunction: {
                auto left_todo = todo;
                left_todo.push_back(f.lhs());
                if (auto w = expand(std::move(left_todo), branch, depth))
                    return w;
                todo.push_back(f.rhs());
                return expand(std::move(todo), std::move(branch), depth);
            }
            case K::obligation: branch.boxes.insert(f.operand()); break;
            default: throw DefectError("tableau input not normalized: " + to_string(f));
            }
        }
        return modal_step(branch, depth);
    }

    std::optional<WorldTree> modal_step(const Branch& branch, std::size_t depth)
    {
        WorldTree w;
        for (const auto& [name, positive] : branch.literals)
            if (positive)
                w.true_atoms.insert(name);

        std::vector<Formula> box_bodies(branch.boxes.begin(), branch.boxes.end());
        for (const auto& d : branch.diamonds) {
            auto succ = box_bodies;
            succ.push_back(normalize(Formula::negation(d)));
            auto child = world(succ, depth + 1);
            if (!child) {
                close(depth, "successor for ~O(" + to_string(d) + ") is unsatisfiable");
                return std::nullopt;
            }
            w.children.push_back(std::move(*child));
        }
        if (branch.diamonds.empty() && options_.serial && !box_bodies.empty()) {
            auto child = world(box_bodies, depth + 1);
            if (!child) {
                close(depth, "serial successor is unsatisfiable (D)");
                return std::nullopt;
            }
            w.children.push_back(std::move(*child));
        }
        return w;
    }

    const TableauOptions& options_;
};

void flatten(const WorldTree& t, bool serial, KripkeModel& m)
{
    std::size_t id = m.valuation.size();
    m.valuation.push_back(t.true_atoms);
    m.successors.emplace_back();
    for (const auto& child : t.children) {
        std::size_t child_id = m.valuation.size();
        m.successors[id].push_back(child_id);
        flatten(child, serial, m);
    }
    // A world with no modal obligations left still needs an accessible world.
    if (t.children.empty() && serial)
        m.successors[id].push_back(id);
}

} // namespace

TableauResult consistent(const std::vector<Formula>& gamma, const TableauOptions& options)
{
    std::vector<Formula> normalized;
    for (const auto& f : gamma)
        normalized.push_back(normalize(f));

    Prover prover(options);
    auto tree = prover.world(normalized, 0);
    TableauResult result{tree ? Verdict::satisfiable : Verdict::unsatisfiable, std::nullopt, {}, prover.expansions};
    if (tree) {
        KripkeModel m;
        flatten(*tree, options.serial, m);
        m.worlds = m.valuation.size();
        result.model = std::move(m);
    } else {
        result.certificate = std::move(prover.certificate);
    }
    return result;
}

bool entails(const std::vector<Formula>& gamma, const Formula& phi, const TableauOptions& options)
{
    auto with_negation = gamma;
    with_negation.push_back(Formula::negation(phi));
    return !consistent(with_negation, options).satisfiable();
}

// ---------------------------------------------------------------------------
// Kripke semantics

bool KripkeModel::is_serial() const
{
    for (std::size_t w = 0; w < worlds; ++w)
        if (w >= successors.size() || successors[w].empty())
            return false;
    return true;
}

bool holds(const KripkeModel& m, std::size_t world, const Formula& f)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::atom: return m.valuation.at(world).contains(f.name());
    case K::negation: return !holds(m, world, f.operand());
    case K::conjunction: return holds(m, world, f.lhs()) && holds(m, world, f.rhs());
    case K::disjunction: return holds(m, world, f.lhs()) || holds(m, world, f.rhs());
    case K::implication: return !holds(m, world, f.lhs()) || holds(m, world, f.rhs());
    case K::obligation:
        return std::all_of(m.successors.at(world).begin(), m.successors.at(world).end(),
                           [&](std::size_t v) { return holds(m, v, f.operand()); });
    case K::permission:
        return std::any_of(m.successors.at(world).begin(), m.successors.at(world).end(),
                           [&](std::size_t v) { return holds(m, v, f.operand()); });
    }
    throw DefectError("holds: unknown formula kind");
}

bool check_model(const KripkeModel& m, const std::vector<Formula>& gamma)
{
    if (m.worlds == 0 || m.valuation.size() != m.worlds || m.successors.size() != m.worlds)
        return false;
    return std::all_of(gamma.begin(), gamma.end(), [&](const Formula& f) { return holds(m, 0, f); });
}

} // namespace normcheck::sdl
