#pragma once

// Propositional Standard Deontic Logic (KD): formulas, a tableau prover with
// countermodel extraction, Kripke semantics, and an exhaustive model
// enumerator used as an independent check on the prover.

#include "normcheck/diagnostic.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace normcheck::sdl {

class Formula {
public:
    enum class Kind { atom, negation, conjunction, disjunction, implication, obligation, permission };

    static Formula atom(std::string name);
    static Formula negation(Formula f);
    static Formula conjunction(Formula l, Formula r);
    static Formula disjunction(Formula l, Formula r);
    static Formula implication(Formula l, Formula r);
    static Formula obligation(Formula f);
    static Formula permission(Formula f);

    Kind kind() const;
    const std::string& name() const;    // atom
    const Formula& operand() const;     // negation, obligation, permission
    const Formula& lhs() const;         // binary kinds
    const Formula& rhs() const;

    int modal_depth() const;
    std::size_t connective_count() const;
    void collect_atoms(std::set<std::string>& out) const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator<(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Concrete syntax: atoms [a-z][a-z0-9_]*, ~ & | ->, O(...), P(...).
std::string to_string(const Formula& f);

ParseResult<Formula> parse(std::string_view text);

// One formula per line, '#' comments and blank lines ignored. Diagnostic
// lines refer to the file.
ParseResult<std::vector<Formula>> parse_file(std::string_view text);

// Negation normal form in which negation applies only to atoms and to O.
// P and -> are eliminated; P(f) becomes ~O(nnf(~f)).
Formula normalize(const Formula& f);

std::set<std::string> atoms_of(const std::vector<Formula>& gamma);
int modal_depth(const std::vector<Formula>& gamma);

struct KripkeModel {
    std::size_t worlds = 1;                           // world 0 is designated
    std::vector<std::vector<std::size_t>> successors; // sorted, per world
    std::vector<std::set<std::string>> valuation;     // true atoms, per world

    bool is_serial() const;
    bool operator==(const KripkeModel&) const = default;
};

bool holds(const KripkeModel& m, std::size_t world, const Formula& f);

// Every formula of gamma true at the designated world.
bool check_model(const KripkeModel& m, const std::vector<Formula>& gamma);

struct TableauOptions {
    bool serial = true;                  // false gives plain K
    std::size_t node_budget = 1'000'000;
};

enum class Verdict { satisfiable, unsatisfiable };

std::string to_string(Verdict v);

struct TableauResult {
    Verdict verdict;
    std::optional<KripkeModel> model;   // present iff satisfiable
    std::vector<std::string> certificate;   // closed branches, for unsatisfiable verdicts
    std::size_t expansions = 0;

    bool satisfiable() const { return verdict == Verdict::satisfiable; }
};

// Throws ResourceLimitError when the node budget runs out.
TableauResult consistent(const std::vector<Formula>& gamma, const TableauOptions& options = {});

bool entails(const std::vector<Formula>& gamma, const Formula& phi, const TableauOptions& options = {});

// Serial models with at most `max_worlds` worlds satisfying gamma at world 0,
// in canonical form: every world reachable from world 0 and numbered in
// breadth-first discovery order, worlds at distance >= modal depth of gamma
// carrying only a self-loop, and atoms outside gamma false. Every serial
// model of gamma within the bound has a canonical counterpart here that
// agrees at world 0. Stops after `limit` models. Throws ResourceLimitError
// when atoms x max_worlds exceeds 24.
std::vector<KripkeModel> enumerate_models(const std::vector<Formula>& gamma, std::size_t max_worlds,
                                          std::size_t limit = static_cast<std::size_t>(-1));

} // namespace normcheck::sdl
