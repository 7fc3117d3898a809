#include "normcheck/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace normcheck::cli {

int run_main(int argc, const char* const* argv, Streams io)
{
    CLI::App app{"normcheck: frame-based norm models and SDL consistency checks"};
    app.require_subcommand(1);

    std::string model_path, trace_path, formula_path;
    bool json = false;

    auto* validate = app.add_subcommand("validate", "Parse a model and check it is well-formed");
    validate->add_option("model", model_path, "Model file")->required();

    auto* run = app.add_subcommand("run", "Execute a trace of ground acts");
    run->add_option("model", model_path, "Model file")->required();
    run->add_option("trace", trace_path, "Trace file")->required();
    run->add_flag("--json", json, "Emit JSON");

    ExploreArgs explore_args;
    std::string dot_path, explore_expect;
    auto* explore = app.add_subcommand("explore", "Explore reachable states and report stuck duties");
    explore->add_option("model", explore_args.model_path, "Model file")->required();
    explore->add_option("--horizon", explore_args.horizon, "Maximum trace length")->required();
    explore->add_option("--dot", dot_path, "Write the state graph in DOT format");
    explore->add_flag("--json", explore_args.json, "Emit JSON");
    explore->add_option("--expect", explore_expect, "Exit with status 2 unless the expectation holds")
        ->check(CLI::IsMember({"none"}));

    auto* sdl_cmd = app.add_subcommand("sdl", "Standard Deontic Logic tools");
    sdl_cmd->require_subcommand(1);
    std::string sdl_expect;
    auto* check = sdl_cmd->add_subcommand("check", "Decide consistency of a formula file");
    check->add_option("file", formula_path, "Formula file, one formula per line")->required();
    check->add_option("--expect", sdl_expect, "Expected verdict")->check(CLI::IsMember({"sat", "unsat"}));
    check->add_flag("--json", json, "Emit JSON");
    auto* chisholm = sdl_cmd->add_subcommand("chisholm", "Check the four encodings of the library rules");
    chisholm->add_flag("--json", json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, io.out, io.err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    if (*validate)
        return cmd_validate(model_path, io);
    if (*run)
        return cmd_run(model_path, trace_path, json, io);
    if (*explore) {
        if (!dot_path.empty())
            explore_args.dot_path = dot_path;
        explore_args.expect_none = explore_expect == "none";
        return cmd_explore(explore_args, io);
    }
    if (*check) {
        std::optional<sdl::Verdict> expect;
        if (sdl_expect == "sat")
            expect = sdl::Verdict::satisfiable;
        else if (sdl_expect == "unsat")
            expect = sdl::Verdict::unsatisfiable;
        return cmd_sdl_check(formula_path, expect, json, io);
    }
    if (*chisholm)
        return cmd_sdl_chisholm(json, io);
    return exit_input_error;
}

} // namespace normcheck::cli
