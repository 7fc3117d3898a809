// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check records the first reason it failed.

#include "support/generators.hpp"

#include "normcheck/chisholm.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace normcheck;
using normcheck::testing::read_asset;

namespace {

struct Check {
    std::string failure;

    void require(bool ok, const std::string& what)
    {
        if (!ok && failure.empty())
            failure = what;
    }
    bool passed() const { return failure.empty(); }
};

std::vector<sdl::Formula> sdl_formulas(const std::vector<std::string>& texts)
{
    std::vector<sdl::Formula> out;
    for (const auto& t : texts)
        out.push_back(*sdl::parse(t).value);
    return out;
}

bool lists(const std::vector<std::string>& names, const std::string& act)
{
    return std::find(names.begin(), names.end(), act) != names.end();
}

// 1. The wide/narrow encoding is inconsistent.
std::string criterion_1(Check& c)
{
    auto rows = sdl::chisholm_report();
    auto it = std::find_if(rows.begin(), rows.end(), [](const sdl::ChisholmRow& r) {
        return r.encoding.rule2 == sdl::Scope::wide && r.encoding.rule3 == sdl::Scope::narrow;
    });
    c.require(it != rows.end(), "no wide/narrow row");
    if (it == rows.end())
        return "";
    c.require(it->result.verdict == sdl::Verdict::unsatisfiable, "wide/narrow reported satisfiable");
    c.require(!it->result.certificate.empty(), "no closure certificate");
    // The bundled file is the same reading.
    auto file = sdl::parse_file(read_asset("chisholm-mixed.sdl"));
    c.require(file.ok() && !sdl::consistent(*file.value).satisfiable(), "chisholm-mixed.sdl not unsatisfiable");
    return "wide/narrow unsatisfiable, " + std::to_string(it->result.certificate.size()) + " closed branch(es)";
}

// 2. The other three encodings have small checked models; narrow/narrow
// flags the dependence of rule 2.
std::string criterion_2(Check& c)
{
    auto rows = sdl::chisholm_report();
    std::ostringstream detail;
    std::size_t sat = 0;
    for (const auto& r : rows) {
        if (r.encoding.rule2 == sdl::Scope::wide && r.encoding.rule3 == sdl::Scope::narrow)
            continue;
        const std::string label = r.encoding.label();
        c.require(r.result.satisfiable(), label + " reported unsatisfiable");
        if (!r.result.model)
            continue;
        ++sat;
        c.require(r.result.model->worlds <= 3, label + " model has more than 3 worlds");
        c.require(r.result.model->is_serial(), label + " model is not serial");
        c.require(sdl::check_model(*r.result.model, r.encoding.formulas), label + " model fails check_model");
        // Independent confirmation by the enumerator.
        c.require(!sdl::enumerate_models(r.encoding.formulas, 3, 1).empty(), label + " has no enumerated model");
        detail << label << ":" << r.result.model->worlds << "w ";
        if (r.encoding.rule2 == sdl::Scope::narrow && r.encoding.rule3 == sdl::Scope::narrow) {
            c.require(r.rule2_entailed_by_rest, "narrow/narrow does not flag rule 2");
            // Rule 2 follows from ~r alone.
            auto not_r = sdl_formulas({"~r"});
            c.require(sdl::entails(not_r, r.encoding.formulas[1]), "~r does not entail r -> O(~p)");
        }
    }
    c.require(sat == 3, "expected three satisfiable encodings");
    return detail.str() + "narrow/narrow rule2-dep";
}

// 3. No stuck duties on the library model; both traces complete.
std::string criterion_3(Check& c)
{
    GroundModel gm(testing::library_model());
    auto graph = explore(gm, gm.initial_state(), 6);
    auto conflicts = detect_conflicts(gm, graph);
    c.require(conflicts.empty(), std::to_string(conflicts.size()) + " conflict(s) at horizon 6");

    std::size_t enforced_counts[2] = {0, 0};
    const char* traces[] = {"compliant.trace", "overdue.trace"};
    for (int i = 0; i < 2; ++i) {
        auto trace = parse_trace(read_asset(traces[i]), gm.model());
        c.require(trace.ok(), std::string(traces[i]) + " does not parse");
        if (!trace.ok())
            continue;
        auto r = run(gm, gm.initial_state(), *trace.value);
        c.require(r.completed(), std::string(traces[i]) + " does not complete");
        enforced_counts[i] = static_cast<std::size_t>(std::count_if(
            r.events.begin(), r.events.end(), [](const Event& e) { return e.kind == EventKind::duty_enforced; }));
    }
    c.require(enforced_counts[0] == 0, "compliant trace enforces a duty");
    c.require(enforced_counts[1] == 1, "overdue trace does not enforce exactly one duty");
    return std::to_string(graph.nodes.size()) + " nodes, " + std::to_string(graph.edges.size())
           + " edges, 0 conflicts";
}

// 4. Tableau verdicts on random sets, checked by check_model and the
// model enumerator.
std::string criterion_4(Check& c)
{
    std::mt19937 rng(4242);
    const int sets = 200;
    int sat = 0, unsat = 0;
    for (int i = 0; i < sets; ++i) {
        auto gamma = testing::random_sdl_set(rng);
        std::string text;
        for (const auto& f : gamma)
            text += "{" + sdl::to_string(f) + "} ";
        c.require(sdl::atoms_of(gamma).size() <= 3 && sdl::modal_depth(gamma) <= 2, "generator out of range: " + text);
        auto r = sdl::consistent(gamma);
        if (r.satisfiable()) {
            ++sat;
            c.require(r.model && r.model->is_serial() && sdl::check_model(*r.model, gamma),
                      "witness fails check_model: " + text);
        } else {
            ++unsat;
            c.require(sdl::enumerate_models(gamma, 5, 1).empty(), "enumerator finds a model: " + text);
        }
    }
    return std::to_string(sets) + " sets, " + std::to_string(sat) + " sat, " + std::to_string(unsat) + " unsat";
}

// 5. D separates {O(p), O(~p)} from plain K.
std::string criterion_5(Check& c)
{
    auto file = sdl::parse_file(read_asset("conflicting-obligations.sdl"));
    c.require(file.ok(), "conflicting-obligations.sdl does not parse");
    auto gamma = sdl_formulas({"O(p)", "O(~p)"});
    c.require(file.ok() && *file.value == gamma, "bundled file is not {O(p), O(~p)}");
    auto kd = sdl::consistent(gamma, {true});
    auto k = sdl::consistent(gamma, {false});
    c.require(!kd.satisfiable(), "satisfiable under KD");
    c.require(k.satisfiable(), "unsatisfiable under K");
    if (k.model) {
        c.require(sdl::check_model(*k.model, gamma), "K model fails check_model");
        c.require(!k.model->is_serial(), "K model is serial");
    }
    return "KD unsatisfiable, K satisfiable";
}

// 6a. Frame property and duty-status monotonicity of one step.
bool step_laws_hold(const GroundModel& gm, const State& pre, const GroundAct& act, const State& post)
{
    const ActFrame& frame = gm.frame_of(act);
    Binding b = gm.binding_of(act);
    std::set<GroundAtom> created, terminated;
    for (const auto& a : frame.creates)
        created.insert(ground(a, b));
    for (const auto& a : frame.terminates)
        terminated.insert(ground(a, b));
    for (const auto& f : post.facts)
        if (!pre.facts.contains(f) && !created.contains(f))
            return false;
    for (const auto& f : pre.facts)
        if (!post.facts.contains(f) && !terminated.contains(f))
            return false;
    for (const auto& f : created)
        if (!post.facts.contains(f))
            return false;

    for (const auto& key : gm.duties()) {
        auto before = pre.duty_status(key);
        auto after = post.duty_status(key);
        if (before == after)
            continue;
        const DutyFrame& duty = *gm.model().find_duty(key.duty);
        if (!after || gm.duty_key_for(duty, act) != key)
            return false;
        bool allowed = false;
        switch (*after) {
        case DutyStatus::active: allowed = lists(duty.created_by, act.act) && before != DutyStatus::active; break;
        case DutyStatus::terminated: allowed = before == DutyStatus::active && lists(duty.terminated_by, act.act); break;
        case DutyStatus::enforced: allowed = before == DutyStatus::active && lists(duty.enforced_by, act.act); break;
        }
        if (!allowed)
            return false;
    }
    return true;
}

// 6. Engine laws on random instances, and explore against brute force.
std::string criterion_6(Check& c)
{
    std::mt19937 rng(6060);
    const int instances = 500;
    std::size_t steps = 0;
    for (int i = 0; i < instances; ++i) {
        GroundModel gm(testing::random_model(rng));
        for (const auto& d : gm.model().domains)
            c.require(d.members.size() <= 2, "domain larger than 2");
        State init = gm.initial_state();
        auto trace = testing::random_trace(gm, rng, 1 + rng() % 8);
        auto r = run(gm, init, trace);
        const std::string tag = "instance " + std::to_string(i) + ": ";

        for (std::size_t k = 0; k + 1 < r.states.size(); ++k, ++steps)
            c.require(step_laws_hold(gm, r.states[k], trace[k], r.states[k + 1]), tag + "frame/monotonicity");

        if (r.completed()) {
            std::size_t cut = rng() % (trace.size() + 1);
            Trace t1(trace.begin(), trace.begin() + static_cast<long>(cut));
            Trace t2(trace.begin() + static_cast<long>(cut), trace.end());
            auto r1 = run(gm, init, t1);
            auto r2 = run(gm, r1.final_state(), t2);
            c.require(r1.completed() && r2.completed() && r2.final_state() == r.final_state(),
                      tag + "compositionality");
        } else {
            c.require(r.failure->step < trace.size(), tag + "failure step out of range");
            auto out = apply(gm, r.final_state(), trace[r.failure->step]);
            auto* v = std::get_if<PreconditionViolated>(&out);
            c.require(v && v->state == r.final_state(), tag + "failed apply changed the state");
        }
        for (const auto& s : r.states)
            for (const auto& a : gm.acts()) {
                auto out = apply(gm, s, a);
                if (auto* v = std::get_if<PreconditionViolated>(&out))
                    c.require(v->state == s && !enabled(gm, s, a), tag + "failed apply changed the state");
            }

        std::size_t horizon = i % 5;
        auto graph = explore(gm, init, horizon);
        auto brute = testing::reachable_by_traces(gm, init, horizon);
        std::set<State> nodes(graph.nodes.begin(), graph.nodes.end());
        c.require(nodes.size() == graph.nodes.size() && nodes == brute, tag + "explore differs from brute force");
    }
    return std::to_string(instances) + " instances, " + std::to_string(steps) + " steps, explore horizons 0-4";
}

// 7. parse . serialize . parse is the identity.
std::string criterion_7(Check& c)
{
    auto bundled = parse_model(read_asset("library.norm"));
    c.require(bundled.ok(), "library.norm does not parse");
    if (bundled.ok()) {
        auto again = parse_model(serialize_model(*bundled.value));
        c.require(again.ok() && *again.value == *bundled.value, "library.norm does not round-trip");
    }
    std::mt19937 rng(7070);
    const int models = 100;
    for (int i = 0; i < models; ++i) {
        Model m = testing::random_model(rng);
        auto once = parse_model(serialize_model(m));
        c.require(once.ok() && *once.value == m, "random model " + std::to_string(i) + " does not round-trip");
        if (once.ok()) {
            auto twice = parse_model(serialize_model(*once.value));
            c.require(twice.ok() && *twice.value == *once.value, "random model " + std::to_string(i) + " unstable");
        }
    }
    return "bundled model and " + std::to_string(models) + " random models";
}

struct Criterion {
    int number;
    const char* title;
    double seconds_limit;   // 0: no limit
    std::function<std::string(Check&)> body;
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {1, "Chisholm contradiction in the wide/narrow encoding", 1.0, criterion_1},
        {2, "other encodings satisfiable with small models", 0.0, criterion_2},
        {3, "library model free of stuck duties, traces complete", 5.0, criterion_3},
        {4, "tableau sound and complete on random sets", 60.0, criterion_4},
        {5, "seriality toggle", 0.0, criterion_5},
        {6, "engine laws and explore against brute force", 0.0, criterion_6},
        {7, "parser round trip", 0.0, criterion_7},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        Check c;
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        try {
            detail = crit.body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (crit.seconds_limit > 0)
            c.require(seconds < crit.seconds_limit, "took longer than " + std::to_string(crit.seconds_limit) + " s");
        failures += !c.passed();
        std::printf("%s criterion %d: %s (%.2f s) - %s\n", c.passed() ? "PASS" : "FAIL", crit.number, crit.title,
                    seconds, c.passed() ? detail.c_str() : c.failure.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
