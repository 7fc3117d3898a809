#pragma once

// Frame-language domain types: acts, facts and duties over finite object
// domains, plus grounding and Boolean evaluation against a state.

#include "normcheck/diagnostic.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace normcheck {

using Binding = std::map<std::string, std::string>;

struct ObjectDomain {
    std::string name;
    std::vector<std::string> members;

    bool contains(const std::string& constant) const;
    bool operator==(const ObjectDomain&) const = default;
};

struct Term {
    enum class Kind { variable, constant };
    Kind kind = Kind::constant;
    std::string name;

    static Term variable(std::string n) { return {Kind::variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::constant, std::move(n)}; }
    bool is_variable() const { return kind == Kind::variable; }

    auto operator<=>(const Term&) const = default;
};

struct FactAtom {
    std::string symbol;
    std::vector<Term> args;

    bool is_ground() const;
    auto operator<=>(const FactAtom&) const = default;
};

struct GroundAtom {
    std::string symbol;
    std::vector<std::string> args;

    auto operator<=>(const GroundAtom&) const = default;
};

std::string to_string(const FactAtom& a);
std::string to_string(const GroundAtom& a);
FactAtom lift(const GroundAtom& a);

// Immutable Boolean formula over fact atoms. Copies share structure.
class Formula {
public:
    enum class Kind { constant_true, constant_false, atom, negation, conjunction, disjunction, implication };

    Formula();   // constant true

    static Formula truth();
    static Formula falsity();
    static Formula make_atom(FactAtom a);
    static Formula negation(Formula f);
    static Formula conjunction(Formula l, Formula r);
    static Formula disjunction(Formula l, Formula r);
    static Formula implication(Formula l, Formula r);

    Kind kind() const;
    const FactAtom& atom() const;      // kind() == atom
    const Formula& operand() const;    // negation
    const Formula& lhs() const;        // binary kinds
    const Formula& rhs() const;

    bool is_ground() const;
    void collect_atoms(std::vector<FactAtom>& out) const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);

// Replace every variable by its binding. Throws BindingError naming the
// first unbound variable.
Formula substitute(const Formula& f, const Binding& binding);
FactAtom substitute(const FactAtom& a, const Binding& binding);
GroundAtom ground(const FactAtom& a, const Binding& binding);

class BindingError : public std::invalid_argument {
public:
    BindingError(const std::string& variable)
        : std::invalid_argument("unbound variable '" + variable + "'"), variable_(variable) {}
    const std::string& variable() const { return variable_; }

private:
    std::string variable_;
};

struct Param {
    std::string name;
    std::string domain;

    bool operator==(const Param&) const = default;
};

enum class FactKind { atomic, derived };

struct FactSymbol {
    std::string name;
    std::vector<Param> params;
    FactKind kind = FactKind::atomic;
    std::optional<Formula> derivation;
    std::vector<std::string> sources;

    bool operator==(const FactSymbol&) const = default;
};

struct ActFrame {
    std::string name;
    Param actor;
    std::vector<Param> objects;
    Formula precondition;
    std::vector<FactAtom> creates;
    std::vector<FactAtom> terminates;
    std::vector<std::string> sources;

    // Actor first, then object parameters in declaration order.
    std::vector<Param> params() const;
    bool operator==(const ActFrame&) const = default;
};

struct DutyFrame {
    std::string name;
    Param holder;
    std::vector<Param> objects;
    std::vector<std::string> created_by;
    std::vector<std::string> enforced_by;
    std::vector<std::string> terminated_by;
    std::vector<std::string> sources;

    std::vector<Param> params() const;
    bool operator==(const DutyFrame&) const = default;
};

enum class DeclKind { domain, fact, act, duty, init };

struct DeclRef {
    DeclKind kind;
    std::size_t index;   // unused for init

    bool operator==(const DeclRef&) const = default;
};

struct Model {
    std::vector<ObjectDomain> domains;
    std::vector<FactSymbol> facts;
    std::vector<ActFrame> acts;
    std::vector<DutyFrame> duties;
    std::vector<GroundAtom> initial_facts;

    // Source order of declarations; all Init clauses collapse onto the first.
    std::vector<DeclRef> order;

    // Declaration name -> 1-based source line. Not part of structural equality.
    std::map<std::string, int> lines;

    const ObjectDomain* find_domain(const std::string& name) const;
    const FactSymbol* find_fact(const std::string& name) const;
    const ActFrame* find_act(const std::string& name) const;
    const DutyFrame* find_duty(const std::string& name) const;

    void add(ObjectDomain d);
    void add(FactSymbol f);
    void add(ActFrame a);
    void add(DutyFrame d);
    void add_initial(GroundAtom a);

    friend bool operator==(const Model& a, const Model& b);
};

// Empty iff every structural invariant of the model holds.
std::vector<Diagnostic> check_wellformed(const Model& model);

struct GroundAct {
    std::string act;
    std::vector<std::string> args;   // actor first

    auto operator<=>(const GroundAct&) const = default;
};

std::string to_string(const GroundAct& a);

enum class DutyStatus { active, terminated, enforced };

std::string to_string(DutyStatus s);

// Identity of a ground duty: frame plus holder/object constants.
struct DutyKey {
    std::string duty;
    std::vector<std::string> args;

    auto operator<=>(const DutyKey&) const = default;
};

std::string to_string(const DutyKey& k);

struct DutyInstance {
    DutyKey key;
    Binding binding;
    DutyStatus status = DutyStatus::active;
};

struct State {
    std::set<GroundAtom> facts;
    std::map<DutyKey, DutyStatus> duties;

    bool holds(const GroundAtom& a) const { return facts.contains(a); }
    std::optional<DutyStatus> duty_status(const DutyKey& k) const;

    auto operator<=>(const State&) const = default;
};

Binding bind_params(const std::vector<Param>& params, const std::vector<std::string>& args);

class ModelError : public std::runtime_error {
public:
    explicit ModelError(std::vector<Diagnostic> diags);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

// A well-formed model together with all its ground acts and potential duty
// instances, ordered by frame name and then argument tuple.
class GroundModel {
public:
    explicit GroundModel(Model model);

    const Model& model() const { return *model_; }
    const std::vector<GroundAct>& acts() const { return acts_; }
    const std::vector<DutyKey>& duties() const { return duties_; }

    const ActFrame& frame_of(const GroundAct& act) const;
    Binding binding_of(const GroundAct& act) const;

    // Duty instance a ground act refers to for the given duty frame,
    // using the by-name binding rule.
    DutyKey duty_key_for(const DutyFrame& duty, const GroundAct& act) const;
    Binding binding_of(const DutyKey& key) const;

    // Initial state as declared by the model's Init clause.
    State initial_state() const;

    // Position of a ground act in acts(); nullopt if it does not exist.
    std::optional<std::size_t> index_of(const GroundAct& act) const;

private:
    std::shared_ptr<const Model> model_;
    std::vector<GroundAct> acts_;
    std::vector<DutyKey> duties_;
    std::map<GroundAct, std::size_t> index_;
};

// Throws ModelError if check_wellformed reports errors.
GroundModel ground_model(const Model& model);

// Boolean value of a ground formula in a state. Derived atoms expand through
// their derivation formulas. Throws DefectError on unknown symbols or
// non-ground input.
bool eval(const GroundModel& gm, const State& state, const Formula& formula);
bool eval(const GroundModel& gm, const State& state, const GroundAtom& atom);

// Which duty parameter an act parameter supplies: by name, except that the
// duty holder falls back to the act's actor when the act has no parameter
// named like the holder. Returns nullptr if neither applies.
const Param* binding_source(const ActFrame& act, const DutyFrame& duty, const Param& duty_param);

} // namespace normcheck
