#include "doctest.h"
#include "support/generators.hpp"

#include "normcheck/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using normcheck::testing::asset_path;
using nlohmann::json;

namespace {

struct Output {
    int status;
    std::string out;
    std::string err;
};

Output cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "normcheck");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int status = normcheck::cli::run_main(static_cast<int>(argv.size()), argv.data(), {out, err});
    return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto path = std::filesystem::temp_directory_path() / ("normcheck-test-" + name);
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

std::size_t count(const std::string& haystack, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

struct DotSummary {
    bool ok = false;
    std::size_t nodes = 0;
    std::size_t edges = 0;
};

// Accepts exactly the subset of DOT the exporter is meant to produce:
// declared nodes, edges between declared nodes, properly escaped labels.
DotSummary check_dot(const std::string& text)
{
    static const std::string label = R"(\[label="(?:[^"\\]|\\.)*"\];)";
    static const std::regex node_re(R"(  s(\d+) )" + label);
    static const std::regex edge_re(R"(  s(\d+) -> s(\d+) )" + label);
    DotSummary s;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
        lines.push_back(line);
    if (lines.size() < 3 || lines.front() != "digraph states {" || lines.back() != "}")
        return s;
    std::set<std::string> declared;
    std::smatch m;
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        if (lines[i] == "  node [shape=box];")
            continue;
        if (std::regex_match(lines[i], m, node_re)) {
            if (!declared.insert(m[1]).second)
                return s;
            ++s.nodes;
        } else if (std::regex_match(lines[i], m, edge_re)) {
            if (!declared.contains(m[1]) || !declared.contains(m[2]))
                return s;
            ++s.edges;
        } else {
            return s;
        }
    }
    s.ok = true;
    return s;
}

const std::string library = asset_path("library.norm");

} // namespace

TEST_CASE("validate")
{
    auto ok = cli({"validate", library});
    CHECK(ok.status == 0);
    CHECK(ok.out == library + ": ok (4 domains, 4 facts, 4 acts, 1 duties)\n");

    auto missing = cli({"validate", "/nonexistent/model.norm"});
    CHECK(missing.status == 1);
    CHECK(missing.err.find("cannot open file") != std::string::npos);

    auto bad = temp_file("bad.norm", "Domain Agent = alice\n"
                                      "Fact f(Agent)\n"
                                      "Act go(actor: Agent)\n"
                                      "  creates: f(actor)\n"
                                      "Duty d(holder: Agent)\n"
                                      "  created-by: fly\n"
                                      "  enforced-by: go\n"
                                      "  terminated-by: go\n");
    auto r = cli({"validate", bad});
    CHECK(r.status == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find(bad + ":5:") != std::string::npos);
    CHECK(r.err.find("fly") != std::string::npos);
}

TEST_CASE("run in text form")
{
    auto compliant = cli({"run", library, asset_path("compliant.trace")});
    CHECK(compliant.status == 0);
    CHECK(compliant.out.find("outcome: completed\n") != std::string::npos);
    CHECK(count(compliant.out, "duty-enforced") == 0);
    CHECK(count(compliant.out, "step ") == 2);
    CHECK(compliant.out.find("return-duty(alice, b1): terminated") != std::string::npos);

    auto overdue = cli({"run", library, asset_path("overdue.trace")});
    CHECK(overdue.status == 0);
    CHECK(count(overdue.out, "  duty-enforced return-duty(alice, b1)\n") == 1);
    CHECK(overdue.out.find("final facts: {borrowed(alice, b1), disciplined(alice, b1), overdue(b1)}\n")
          != std::string::npos);

    auto failing = cli({"run", library, asset_path("return-first.trace")});
    CHECK(failing.status == 2);
    CHECK(failing.out.rfind("outcome: failed-at(0): ", 0) == 0);
}

TEST_CASE("run reports trace errors as input errors")
{
    auto trace = temp_file("bad.trace", "borrow(alice)\n");
    auto r = cli({"run", library, trace});
    CHECK(r.status == 1);
    CHECK(r.err.find(trace + ":1:") != std::string::npos);
}

TEST_CASE("run --json agrees with the text form")
{
    for (auto name : {"compliant.trace", "overdue.trace", "return-first.trace"}) {
        auto text = cli({"run", library, asset_path(name)});
        auto js = cli({"run", library, asset_path(name), "--json"});
        CHECK(js.status == text.status);
        json doc = json::parse(js.out);
        REQUIRE(doc.contains("outcome"));
        REQUIRE(doc.contains("steps"));
        REQUIRE(doc.contains("final"));
        CHECK(text.out.find("outcome: " + doc["outcome"].get<std::string>()) != std::string::npos);
        CHECK(doc["steps"].size() == count(text.out, "step "));
        for (const auto& step : doc["steps"])
            for (const auto& e : step["events"])
                if (e["kind"] != "act-performed")
                    CHECK(text.out.find("  " + e["kind"].get<std::string>() + " " + e["subject"].get<std::string>())
                          != std::string::npos);
        for (const auto& d : doc["final"]["duties"]) {
            REQUIRE(d.contains("binding"));
            CHECK(text.out.find(": " + d["status"].get<std::string>()) != std::string::npos);
        }
    }
    json overdue = json::parse(cli({"run", library, asset_path("overdue.trace"), "--json"}).out);
    CHECK(overdue["outcome"] == "completed");
    CHECK(overdue["final"]["duties"][0]["binding"] == json{{"holder", "alice"}, {"item", "b1"}});
}

TEST_CASE("explore on the library and the stuck model")
{
    auto lib = cli({"explore", library, "--horizon", "6", "--expect", "none"});
    CHECK(lib.status == 0);
    CHECK(lib.out.find("conflicts: 0 (stuck within horizon 6)\n") != std::string::npos);

    auto zero = cli({"explore", library, "--horizon", "0"});
    CHECK(zero.out == "horizon: 0\nnodes: 1\nedges: 0\nconflicts: 0 (stuck within horizon 0)\n");

    auto stuck = asset_path("stuck.norm");
    auto plain = cli({"explore", stuck, "--horizon", "3"});
    CHECK(plain.status == 0);
    CHECK(plain.out.find("  stuck duty chore(alice) in state 1 via [start(alice)]\n") != std::string::npos);
    CHECK(cli({"explore", stuck, "--horizon", "3", "--expect", "none"}).status == 2);
}

TEST_CASE("explore --json and --dot describe the same graph")
{
    auto dot = std::filesystem::temp_directory_path() / "normcheck-test-graph.dot";
    std::filesystem::remove(dot);
    auto r = cli({"explore", library, "--horizon", "4", "--json", "--dot", dot.string()});
    CHECK(r.status == 0);
    json doc = json::parse(r.out);
    for (auto key : {"horizon", "nodes", "edges", "conflicts"})
        CHECK(doc.contains(key));
    CHECK(doc["horizon"] == 4);
    CHECK(doc["conflicts"].empty());

    std::ifstream in(dot);
    std::stringstream text;
    text << in.rdbuf();
    auto summary = check_dot(text.str());
    CHECK(summary.ok);
    CHECK(summary.nodes == doc["nodes"].get<std::size_t>());
    CHECK(summary.edges == doc["edges"].get<std::size_t>());

    auto stuck = json::parse(cli({"explore", asset_path("stuck.norm"), "--horizon", "2", "--json"}).out);
    REQUIRE(stuck["conflicts"].size() == 1);
    const auto& c = stuck["conflicts"][0];
    CHECK(c["duty"] == "chore");
    CHECK(c["binding"] == json{{"holder", "alice"}});
    CHECK(c["reason"] == "stuck-duty");
    CHECK(c["witness"] == json{"start(alice)"});
}

TEST_CASE("DOT checker rejects malformed graphs")
{
    CHECK(check_dot("digraph states {\n  s0 [label=\"a\"];\n}\n").ok);
    CHECK_FALSE(check_dot("digraph states {\n  s0 -> s1 [label=\"a\"];\n}\n").ok);
    CHECK_FALSE(check_dot("digraph states {\n  s0 [label=\"a\"b\"];\n}\n").ok);
    CHECK_FALSE(check_dot("digraph states {\n  s0 [label=\"a\"];\n").ok);
}

TEST_CASE("the node cap is a resource error")
{
    setenv("NORMCHECK_NODE_CAP", "3", 1);
    auto r = cli({"explore", library, "--horizon", "6"});
    unsetenv("NORMCHECK_NODE_CAP");
    CHECK(r.status == 3);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("sdl check")
{
    auto mixed = cli({"sdl", "check", asset_path("chisholm-mixed.sdl")});
    CHECK(mixed.status == 0);
    CHECK(mixed.out.rfind("verdict: unsatisfiable\ncertificate: ", 0) == 0);
    CHECK(cli({"sdl", "check", asset_path("chisholm-mixed.sdl"), "--expect", "unsat"}).status == 0);
    CHECK(cli({"sdl", "check", asset_path("chisholm-mixed.sdl"), "--expect", "sat"}).status == 2);
    CHECK(cli({"sdl", "check", asset_path("conflicting-obligations.sdl"), "--expect", "unsat"}).status == 0);

    auto single = cli({"sdl", "check", temp_file("op.sdl", "O(p)\n")});
    CHECK(single.status == 0);
    CHECK(single.out.rfind("verdict: satisfiable\ncountermodel:\n", 0) == 0);
    CHECK(single.out.find("w0->w") != std::string::npos);

    auto js = json::parse(cli({"sdl", "check", asset_path("chisholm-narrow.sdl"), "--json"}).out);
    CHECK(js["verdict"] == "satisfiable");
    REQUIRE(js["model"].is_object());
    // Rebuild the model from JSON and check it satisfies the file.
    normcheck::sdl::KripkeModel m;
    m.worlds = js["model"]["worlds"].size();
    m.successors.resize(m.worlds);
    m.valuation.resize(m.worlds);
    for (const auto& e : js["model"]["edges"])
        m.successors[std::stoul(e[0].get<std::string>().substr(1))].push_back(
            std::stoul(e[1].get<std::string>().substr(1)));
    for (const auto& [w, atoms] : js["model"]["valuation"].items())
        for (const auto& a : atoms)
            m.valuation[std::stoul(w.substr(1))].insert(a.get<std::string>());
    auto gamma = normcheck::sdl::parse_file(normcheck::testing::read_asset("chisholm-narrow.sdl"));
    REQUIRE(gamma.ok());
    CHECK(normcheck::sdl::check_model(m, *gamma.value));

    auto broken = cli({"sdl", "check", temp_file("broken.sdl", "O(p\n")});
    CHECK(broken.status == 1);
    CHECK(broken.err.find(":1:4:") != std::string::npos);
    CHECK(cli({"sdl", "check", "/nonexistent.sdl"}).status == 1);
}

TEST_CASE("sdl chisholm")
{
    auto text = cli({"sdl", "chisholm"});
    CHECK(text.status == 0);
    CHECK(count(text.out, "unsatisfiable") == 1);
    CHECK(count(text.out, "satisfiable") == 4);
    CHECK(text.out.find("wide/narrow   unsatisfiable") != std::string::npos);
    CHECK(cli({"sdl", "chisholm"}).out == text.out);

    auto js = cli({"sdl", "chisholm", "--json"});
    CHECK(js.status == 0);
    json rows = json::parse(js.out);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        std::string label = row["label"];
        bool inconsistent = label == "wide/narrow";
        CHECK(row["verdict"] == (inconsistent ? "unsatisfiable" : "satisfiable"));
        CHECK(row["model"].is_null() == inconsistent);
        CHECK(row["formulas"].size() == 4);
        CHECK(text.out.find(label) != std::string::npos);
    }
    CHECK(rows[3]["label"] == "narrow/narrow");
    CHECK(rows[3]["rule2_entailed_by_rest"] == true);
}

TEST_CASE("usage errors and help")
{
    auto help = cli({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("explore") != std::string::npos);
    CHECK(cli({}).status == 1);
    CHECK(cli({"frobnicate"}).status == 1);
    CHECK(cli({"explore", library}).status == 1);
    CHECK(cli({"explore", library, "--horizon", "2", "--expect", "some"}).status == 1);
}
