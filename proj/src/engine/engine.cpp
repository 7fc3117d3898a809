#include "normcheck/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace normcheck {

std::string to_string(EventKind k)
{
    switch (k) {
    case EventKind::act_performed: return "act-performed";
    case EventKind::fact_created: return "fact-created";
    case EventKind::fact_terminated: return "fact-terminated";
    case EventKind::duty_created: return "duty-created";
    case EventKind::duty_terminated: return "duty-terminated";
    case EventKind::duty_enforced: return "duty-enforced";
    }
    return "?";
}

bool enabled(const GroundModel& gm, const State& state, const GroundAct& act)
{
    const ActFrame& frame = gm.frame_of(act);
    return eval(gm, state, substitute(frame.precondition, gm.binding_of(act)));
}

namespace {

bool lists(const std::vector<std::string>& names, const std::string& act)
{
    return std::find(names.begin(), names.end(), act) != names.end();
}

} // namespace

ApplyResult apply(const GroundModel& gm, const State& state, const GroundAct& act, std::size_t step)
{
    const ActFrame& frame = gm.frame_of(act);
    if (frame.params().size() != act.args.size())
        throw DefectError("ground act " + to_string(act) + " has the wrong arity");
    Binding binding = gm.binding_of(act);
    if (!eval(gm, state, substitute(frame.precondition, binding)))
        return PreconditionViolated{act, state, "precondition of " + to_string(act) + " does not hold"};

    Applied out{state, {}};
    State& next = out.state;
    auto emit = [&](EventKind k, std::string subject) { out.events.push_back(Event{k, std::move(subject), step}); };

    emit(EventKind::act_performed, to_string(act));
    for (const auto& a : frame.terminates) {
        GroundAtom g = ground(a, binding);
        if (next.facts.erase(g))
            emit(EventKind::fact_terminated, to_string(g));
    }
    for (const auto& a : frame.creates) {
        GroundAtom g = ground(a, binding);
        if (next.facts.insert(g).second)
            emit(EventKind::fact_created, to_string(g));
    }

    const auto& duties = gm.model().duties;
    for (const auto& d : duties) {
        if (!lists(d.terminated_by, act.act))
            continue;
        DutyKey key = gm.duty_key_for(d, act);
        auto it = next.duties.find(key);
        if (it != next.duties.end() && it->second == DutyStatus::active) {
            it->second = DutyStatus::terminated;
            emit(EventKind::duty_terminated, to_string(key));
        }
    }
    for (const auto& d : duties) {
        if (!lists(d.enforced_by, act.act))
            continue;
        DutyKey key = gm.duty_key_for(d, act);
        auto it = next.duties.find(key);
        if (it != next.duties.end() && it->second == DutyStatus::active) {
            it->second = DutyStatus::enforced;
            emit(EventKind::duty_enforced, to_string(key));
        }
    }
    for (const auto& d : duties) {
        if (!lists(d.created_by, act.act))
            continue;
        DutyKey key = gm.duty_key_for(d, act);
        auto [it, inserted] = next.duties.try_emplace(key, DutyStatus::active);
        if (inserted || it->second != DutyStatus::active) {
            it->second = DutyStatus::active;
            emit(EventKind::duty_created, to_string(key));
        }
    }
    return out;
}

RunResult run(const GroundModel& gm, const State& initial, const std::vector<GroundAct>& trace)
{
    RunResult result;
    result.states.push_back(initial);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        auto r = apply(gm, result.states.back(), trace[i], i);
        if (auto* failed = std::get_if<PreconditionViolated>(&r)) {
            result.failure = RunFailure{i, failed->reason};
            break;
        }
        auto& applied = std::get<Applied>(r);
        result.events.insert(result.events.end(), applied.events.begin(), applied.events.end());
        result.states.push_back(std::move(applied.state));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Exploration

std::optional<std::size_t> StateGraph::find(const State& s) const
{
    auto it = std::find(nodes.begin(), nodes.end(), s);
    if (it == nodes.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> StateGraph::path_to(std::size_t node) const
{
    std::vector<std::size_t> path;
    while (auto e = parent_edge.at(node)) {
        path.push_back(*e);
        node = edges[*e].from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

StateGraph explore(const GroundModel& gm, const State& initial, std::size_t horizon, ExploreOptions options)
{
    StateGraph g;
    g.horizon = horizon;
    std::map<State, std::size_t> seen;

    auto add_node = [&](State s, std::size_t depth, std::optional<std::size_t> via) {
        if (g.nodes.size() >= options.node_cap)
            throw ResourceLimitError("state graph exceeds the node cap of " + std::to_string(options.node_cap));
        std::size_t id = g.nodes.size();
        seen.emplace(s, id);
        g.nodes.push_back(std::move(s));
        g.depth.push_back(depth);
        g.parent_edge.push_back(via);
        return id;
    };

    add_node(initial, 0, std::nullopt);
    const auto& acts = gm.acts();
    // Nodes are appended in BFS order, so a plain index sweep is the queue.
    for (std::size_t current = 0; current < g.nodes.size(); ++current) {
        if (g.depth[current] >= horizon)
            continue;
        for (std::size_t a = 0; a < acts.size(); ++a) {
            auto r = apply(gm, g.nodes[current], acts[a]);
            auto* applied = std::get_if<Applied>(&r);
            if (!applied)
                continue;
            std::size_t edge_id = g.edges.size();
            std::size_t target;
            if (auto it = seen.find(applied->state); it != seen.end())
                target = it->second;
            else
                target = add_node(std::move(applied->state), g.depth[current] + 1, edge_id);
            g.edges.push_back({current, a, target});
        }
    }
    return g;
}

std::vector<ConflictReport> detect_conflicts(const GroundModel& gm, const StateGraph& graph)
{
    const auto& acts = gm.acts();
    const std::size_t n = graph.nodes.size();

    std::vector<std::vector<std::size_t>> enabled_acts(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t a = 0; a < acts.size(); ++a)
            if (enabled(gm, graph.nodes[v], acts[a]))
                enabled_acts[v].push_back(a);

    std::vector<std::vector<std::size_t>> predecessors(n);
    for (const auto& e : graph.edges)
        predecessors[e.to].push_back(e.from);

    std::set<DutyKey> active_somewhere;
    for (const auto& s : graph.nodes)
        for (const auto& [key, status] : s.duties)
            if (status == DutyStatus::active)
                active_somewhere.insert(key);

    std::map<std::size_t, std::vector<DutyKey>> stuck;
    for (const auto& key : active_somewhere) {
        const DutyFrame& duty = *gm.model().find_duty(key.duty);
        std::vector<bool> discharges(acts.size(), false);
        for (std::size_t a = 0; a < acts.size(); ++a) {
            const auto& name = acts[a].act;
            if (!lists(duty.terminated_by, name) && !lists(duty.enforced_by, name))
                continue;
            discharges[a] = gm.duty_key_for(duty, acts[a]) == key;
        }

        // Backward closure from every node where a discharging act is enabled.
        std::vector<bool> can_discharge(n, false);
        std::deque<std::size_t> queue;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t a : enabled_acts[v]) {
                if (discharges[a]) {
                    can_discharge[v] = true;
                    queue.push_back(v);
                    break;
                }
            }
        }
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t u : predecessors[v]) {
                if (!can_discharge[u]) {
                    can_discharge[u] = true;
                    queue.push_back(u);
                }
            }
        }

        for (std::size_t v = 0; v < n; ++v)
            if (!can_discharge[v] && graph.nodes[v].duty_status(key) == DutyStatus::active)
                stuck[v].push_back(key);
    }

    std::vector<ConflictReport> reports;
    for (auto& [v, keys] : stuck) {
        std::sort(keys.begin(), keys.end());
        for (const auto& key : keys) {
            ConflictReport r{key, gm.binding_of(key), v, "stuck-duty", {}};
            for (std::size_t e : graph.path_to(v))
                r.witness.push_back(acts[graph.edges[e].act]);
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

} // namespace normcheck
