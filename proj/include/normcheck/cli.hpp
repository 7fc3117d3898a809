#pragma once

// Command implementations behind the `normcheck` executable. Each command
// writes verdicts to `out`, diagnostics to `err`, and returns an exit status.

#include "normcheck/engine.hpp"
#include "normcheck/parser.hpp"
#include "normcheck/sdl.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace normcheck::cli {

enum ExitStatus : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_expectation_failed = 2,
    exit_resource_limit = 3,
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

// Budgets for exploration and the tableau; NORMCHECK_NODE_CAP overrides both.
struct Limits {
    std::size_t node_cap = 100000;
    std::size_t tableau_budget = 1'000'000;

    static Limits from_environment();
};

int cmd_validate(const std::string& model_path, Streams io);

int cmd_run(const std::string& model_path, const std::string& trace_path, bool json, Streams io);

struct ExploreArgs {
    std::string model_path;
    std::size_t horizon = 0;
    std::optional<std::string> dot_path;
    bool json = false;
    bool expect_none = false;
    Limits limits = Limits::from_environment();
};

int cmd_explore(const ExploreArgs& args, Streams io);

int cmd_sdl_check(const std::string& formula_path, std::optional<sdl::Verdict> expect, bool json, Streams io,
                  Limits limits = Limits::from_environment());

int cmd_sdl_chisholm(bool json, Streams io, Limits limits = Limits::from_environment());

// Full command line, argv[0] included.
int run_main(int argc, const char* const* argv, Streams io);

// JSON shapes; all lists sorted for determinism.
nlohmann::json run_json(const GroundModel& gm, const Trace& trace, const RunResult& result);
nlohmann::json explore_json(const StateGraph& graph, const std::vector<ConflictReport>& conflicts);
nlohmann::json verdict_json(const sdl::TableauResult& result);
nlohmann::json model_json(const sdl::KripkeModel& model);

// Graphviz rendering: one node per state, one edge per ground act.
std::string to_dot(const GroundModel& gm, const StateGraph& graph);

// Sorted "fact" strings and "duty: status" strings describing a state.
std::vector<std::string> fact_strings(const State& s);
std::vector<std::string> duty_strings(const State& s);

} // namespace normcheck::cli
