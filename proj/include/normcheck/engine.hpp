#pragma once

// Transition semantics of ground acts: fact updates, duty lifecycles, trace
// execution, bounded state-space exploration and stuck-duty detection.

#include "normcheck/core.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace normcheck {

enum class EventKind { act_performed, fact_created, fact_terminated, duty_created, duty_terminated, duty_enforced };

std::string to_string(EventKind k);

struct Event {
    EventKind kind;
    std::string subject;
    std::size_t step = 0;

    bool operator==(const Event&) const = default;
};

bool enabled(const GroundModel& gm, const State& state, const GroundAct& act);

struct Applied {
    State state;
    std::vector<Event> events;
};

struct PreconditionViolated {
    GroundAct act;
    State state;   // the unchanged pre-state
    std::string reason;
};

using ApplyResult = std::variant<Applied, PreconditionViolated>;

// Effects in order: terminated facts, created facts, duty terminations, duty
// enforcements, duty creations. The precondition is read in the pre-state.
ApplyResult apply(const GroundModel& gm, const State& state, const GroundAct& act, std::size_t step = 0);

struct RunFailure {
    std::size_t step;
    std::string reason;
};

struct RunResult {
    std::vector<State> states;   // states[0] is the initial state
    std::vector<Event> events;
    std::optional<RunFailure> failure;

    bool completed() const { return !failure; }
    const State& final_state() const { return states.back(); }
};

RunResult run(const GroundModel& gm, const State& initial, const std::vector<GroundAct>& trace);

struct StateGraph {
    struct Edge {
        std::size_t from;
        std::size_t act;   // index into GroundModel::acts()
        std::size_t to;
    };

    std::vector<State> nodes;   // nodes[root] is the initial state
    std::vector<Edge> edges;
    std::vector<std::size_t> depth;
    std::vector<std::optional<std::size_t>> parent_edge;   // BFS tree, gives shortest paths
    std::size_t root = 0;
    std::size_t horizon = 0;

    std::optional<std::size_t> find(const State& s) const;
    std::vector<std::size_t> path_to(std::size_t node) const;   // edge indices from root
};

struct ExploreOptions {
    std::size_t node_cap = 100000;
};

// Breadth-first closure of apply over every enabled ground act, up to
// `horizon` steps from `initial`. Throws ResourceLimitError past the node cap.
StateGraph explore(const GroundModel& gm, const State& initial, std::size_t horizon, ExploreOptions options = {});

struct ConflictReport {
    DutyKey duty;
    Binding binding;
    std::size_t state;
    std::string reason = "stuck-duty";
    std::vector<GroundAct> witness;   // shortest path from the root to `state`
};

// Every (node, active duty) pair from which no terminating or enforcing act of
// that duty is enabled in the node or any node reachable from it in the graph.
// Reachability is limited to the explored horizon.
std::vector<ConflictReport> detect_conflicts(const GroundModel& gm, const StateGraph& graph);

} // namespace normcheck
