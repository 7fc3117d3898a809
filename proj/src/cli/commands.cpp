#include "normcheck/cli.hpp"

#include "normcheck/chisholm.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace normcheck::cli {

using nlohmann::json;

Limits Limits::from_environment()
{
    Limits limits;
    if (const char* env = std::getenv("NORMCHECK_NODE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            limits.node_cap = static_cast<std::size_t>(v);
            limits.tableau_budget = static_cast<std::size_t>(v);
        }
    }
    return limits;
}

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << path << ": cannot open file\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_diagnostics(const std::string& path, const std::vector<Diagnostic>& diags, std::ostream& err)
{
    for (const auto& d : diags)
        err << path << ":" << to_string(d) << '\n';
}

// Parses and grounds a model file; reports problems on `err`.
std::optional<GroundModel> load_model(const std::string& path, std::ostream& err)
{
    auto text = read_file(path, err);
    if (!text)
        return std::nullopt;
    auto parsed = parse_model(*text);
    print_diagnostics(path, parsed.diagnostics, err);
    if (!parsed.value)
        return std::nullopt;
    return GroundModel(std::move(*parsed.value));
}

json binding_json(const Binding& b)
{
    json out = json::object();
    for (const auto& [k, v] : b)
        out[k] = v;
    return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? sep : "") + items[i];
    return out;
}

} // namespace

std::vector<std::string> fact_strings(const State& s)
{
    std::vector<std::string> out;
    for (const auto& f : s.facts)
        out.push_back(to_string(f));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> duty_strings(const State& s)
{
    std::vector<std::string> out;
    for (const auto& [key, status] : s.duties)
        out.push_back(to_string(key) + ": " + to_string(status));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// JSON

json run_json(const GroundModel& gm, const Trace& trace, const RunResult& result)
{
    json steps = json::array();
    std::size_t executed = result.states.size() - 1;
    for (std::size_t i = 0; i < executed; ++i) {
        json events = json::array();
        for (const auto& e : result.events)
            if (e.step == i)
                events.push_back({{"kind", to_string(e.kind)}, {"subject", e.subject}});
        steps.push_back({{"act", to_string(trace[i])}, {"events", events}});
    }

    const State& final_state = result.final_state();
    json duties = json::array();
    for (const auto& [key, status] : final_state.duties)
        duties.push_back({{"name", key.duty}, {"binding", binding_json(gm.binding_of(key))}, {"status", to_string(status)}});

    json out;
    if (result.completed()) {
        out["outcome"] = "completed";
    } else {
        out["outcome"] = "failed-at(" + std::to_string(result.failure->step) + ")";
        out["failed_step"] = result.failure->step;
        out["reason"] = result.failure->reason;
    }
    out["steps"] = steps;
    out["final"] = {{"facts", fact_strings(final_state)}, {"duties", duties}};
    return out;
}

json explore_json(const StateGraph& graph, const std::vector<ConflictReport>& conflicts)
{
    json list = json::array();
    for (const auto& c : conflicts) {
        std::vector<std::string> witness;
        for (const auto& a : c.witness)
            witness.push_back(to_string(a));
        list.push_back({{"duty", c.duty.duty},
                        {"binding", binding_json(c.binding)},
                        {"state_index", c.state},
                        {"reason", c.reason},
                        {"witness", witness}});
    }
    return {{"horizon", graph.horizon},
            {"nodes", graph.nodes.size()},
            {"edges", graph.edges.size()},
            {"conflicts", list}};
}

json model_json(const sdl::KripkeModel& m)
{
    json worlds = json::array();
    json edges = json::array();
    json valuation = json::object();
    for (std::size_t w = 0; w < m.worlds; ++w) {
        std::string name = "w" + std::to_string(w);
        worlds.push_back(name);
        for (std::size_t v : m.successors[w])
            edges.push_back({name, "w" + std::to_string(v)});
        valuation[name] = std::vector<std::string>(m.valuation[w].begin(), m.valuation[w].end());
    }
    return {{"worlds", worlds}, {"edges", edges}, {"valuation", valuation}};
}

json verdict_json(const sdl::TableauResult& r)
{
    return {{"verdict", to_string(r.verdict)},
            {"model", r.model ? model_json(*r.model) : json(nullptr)},
            {"certificate_size", r.certificate.size()}};
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string to_dot(const GroundModel& gm, const StateGraph& graph)
{
    std::ostringstream out;
    out << "digraph states {\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        auto facts = fact_strings(graph.nodes[i]);
        auto duties = duty_strings(graph.nodes[i]);
        // Escape user text first, then insert the DOT line break.
        std::string escaped = dot_escape("facts: {" + join(facts, ", ") + "}") + "\\n"
                            + dot_escape("duties: {" + join(duties, ", ") + "}");
        out << "  s" << i << " [label=\"" << escaped << "\"];\n";
    }
    for (const auto& e : graph.edges)
        out << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(to_string(gm.acts()[e.act]))
            << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const std::string& model_path, Streams io)
{
    auto text = read_file(model_path, io.err);
    if (!text)
        return exit_input_error;
    auto parsed = parse_model(*text);
    print_diagnostics(model_path, parsed.diagnostics, io.err);
    if (!parsed.value)
        return exit_input_error;
    const Model& m = *parsed.value;
    io.out << model_path << ": ok (" << m.domains.size() << " domains, " << m.facts.size() << " facts, "
           << m.acts.size() << " acts, " << m.duties.size() << " duties)\n";
    return exit_ok;
}

int cmd_run(const std::string& model_path, const std::string& trace_path, bool as_json, Streams io)
{
    auto gm = load_model(model_path, io.err);
    if (!gm)
        return exit_input_error;
    auto trace_text = read_file(trace_path, io.err);
    if (!trace_text)
        return exit_input_error;
    auto trace = parse_trace(*trace_text, gm->model());
    print_diagnostics(trace_path, trace.diagnostics, io.err);
    if (!trace.value)
        return exit_input_error;

    RunResult result = run(*gm, gm->initial_state(), *trace.value);
    if (as_json) {
        io.out << run_json(*gm, *trace.value, result).dump(2) << '\n';
    } else {
        std::size_t executed = result.states.size() - 1;
        for (std::size_t i = 0; i < executed; ++i) {
            io.out << "step " << i << ": " << to_string((*trace.value)[i]) << '\n';
            for (const auto& e : result.events)
                if (e.step == i && e.kind != EventKind::act_performed)
                    io.out << "  " << to_string(e.kind) << ' ' << e.subject << '\n';
        }
        if (result.completed())
            io.out << "outcome: completed\n";
        else
            io.out << "outcome: failed-at(" << result.failure->step << "): " << result.failure->reason << '\n';
        io.out << "final facts: {" << join(fact_strings(result.final_state()), ", ") << "}\n";
        io.out << "final duties:\n";
        for (const auto& d : duty_strings(result.final_state()))
            io.out << "  " << d << '\n';
    }
    return result.completed() ? exit_ok : exit_expectation_failed;
}

int cmd_explore(const ExploreArgs& args, Streams io)
{
    auto gm = load_model(args.model_path, io.err);
    if (!gm)
        return exit_input_error;

    StateGraph graph;
    try {
        graph = explore(*gm, gm->initial_state(), args.horizon, ExploreOptions{args.limits.node_cap});
    } catch (const ResourceLimitError& e) {
        io.err << "explore: " << e.what() << '\n';
        return exit_resource_limit;
    }
    auto conflicts = detect_conflicts(*gm, graph);

    if (args.dot_path) {
        std::ofstream dot(*args.dot_path, std::ios::binary);
        if (!dot) {
            io.err << *args.dot_path << ": cannot write file\n";
            return exit_input_error;
        }
        dot << to_dot(*gm, graph);
    }

    if (args.json) {
        io.out << explore_json(graph, conflicts).dump(2) << '\n';
    } else {
        io.out << "horizon: " << args.horizon << '\n';
        io.out << "nodes: " << graph.nodes.size() << '\n';
        io.out << "edges: " << graph.edges.size() << '\n';
        io.out << "conflicts: " << conflicts.size() << " (stuck within horizon " << args.horizon << ")\n";
        for (const auto& c : conflicts) {
            std::vector<std::string> witness;
            for (const auto& a : c.witness)
                witness.push_back(to_string(a));
            io.out << "  stuck duty " << to_string(c.duty) << " in state " << c.state << " via ["
                   << join(witness, ", ") << "]\n";
        }
    }
    if (args.expect_none && !conflicts.empty())
        return exit_expectation_failed;
    return exit_ok;
}

namespace {

void print_model(const sdl::KripkeModel& m, std::ostream& out)
{
    std::vector<std::string> worlds, edges;
    for (std::size_t w = 0; w < m.worlds; ++w) {
        worlds.push_back("w" + std::to_string(w));
        for (std::size_t v : m.successors[w])
            edges.push_back("w" + std::to_string(w) + "->w" + std::to_string(v));
    }
    out << "  worlds: " << join(worlds, " ") << '\n';
    out << "  edges: " << join(edges, " ") << '\n';
    out << "  valuation:\n";
    for (std::size_t w = 0; w < m.worlds; ++w)
        out << "    w" << w << ": {"
            << join(std::vector<std::string>(m.valuation[w].begin(), m.valuation[w].end()), ", ") << "}\n";
}

} // namespace

int cmd_sdl_check(const std::string& formula_path, std::optional<sdl::Verdict> expect, bool as_json, Streams io,
                  Limits limits)
{
    auto text = read_file(formula_path, io.err);
    if (!text)
        return exit_input_error;
    auto parsed = sdl::parse_file(*text);
    print_diagnostics(formula_path, parsed.diagnostics, io.err);
    if (!parsed.value)
        return exit_input_error;

    sdl::TableauResult result;
    try {
        result = sdl::consistent(*parsed.value, sdl::TableauOptions{true, limits.tableau_budget});
    } catch (const ResourceLimitError& e) {
        io.err << "sdl check: " << e.what() << '\n';
        return exit_resource_limit;
    }

    if (as_json) {
        io.out << verdict_json(result).dump(2) << '\n';
    } else {
        io.out << "verdict: " << to_string(result.verdict) << '\n';
        if (result.model) {
            io.out << "countermodel:\n";
            print_model(*result.model, io.out);
        } else {
            io.out << "certificate: " << result.certificate.size() << " closed branch(es)\n";
            for (const auto& line : result.certificate)
                io.out << "  " << line << '\n';
        }
    }
    if (expect && *expect != result.verdict)
        return exit_expectation_failed;
    return exit_ok;
}

int cmd_sdl_chisholm(bool as_json, Streams io, Limits limits)
{
    std::vector<sdl::ChisholmRow> rows;
    try {
        rows = sdl::chisholm_report(sdl::TableauOptions{true, limits.tableau_budget});
    } catch (const ResourceLimitError& e) {
        io.err << "sdl chisholm: " << e.what() << '\n';
        return exit_resource_limit;
    }

    if (as_json) {
        json out = json::array();
        for (const auto& row : rows) {
            std::vector<std::string> formulas;
            for (const auto& f : row.encoding.formulas)
                formulas.push_back(to_string(f));
            json entry = verdict_json(row.result);
            entry["label"] = row.encoding.label();
            entry["rule2_scope"] = to_string(row.encoding.rule2);
            entry["rule3_scope"] = to_string(row.encoding.rule3);
            entry["formulas"] = formulas;
            entry["rule2_entailed_by_rest"] = row.rule2_entailed_by_rest;
            entry["rule3_entailed_by_rest"] = row.rule3_entailed_by_rest;
            entry["notes"] = row.notes;
            out.push_back(std::move(entry));
        }
        io.out << out.dump(2) << '\n';
    } else {
        io.out << "Library rules 1-3 with the violation ~r, standard SDL reconstruction\n";
        io.out << std::left << std::setw(14) << "encoding" << std::setw(16) << "verdict" << std::setw(11)
               << "rule2-dep" << std::setw(11) << "rule3-dep" << "formulas\n";
        for (const auto& row : rows) {
            std::vector<std::string> formulas;
            for (const auto& f : row.encoding.formulas)
                formulas.push_back(to_string(f));
            io.out << std::setw(14) << row.encoding.label() << std::setw(16) << to_string(row.result.verdict)
                   << std::setw(11) << (row.rule2_entailed_by_rest ? "yes" : "no") << std::setw(11)
                   << (row.rule3_entailed_by_rest ? "yes" : "no") << "{" << join(formulas, ", ") << "}\n";
            for (const auto& note : row.notes)
                io.out << "    " << note << '\n';
        }
    }
    return sdl::chisholm_pattern_holds(rows) ? exit_ok : exit_expectation_failed;
}

} // namespace normcheck::cli
