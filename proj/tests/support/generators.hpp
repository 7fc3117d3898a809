#pragma once

// Shared test fixtures: asset loading, seeded random models/traces/formulas,
// and oracles that are independent of the implementation paths they check.

#include "normcheck/engine.hpp"
#include "normcheck/parser.hpp"
#include "normcheck/sdl.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace normcheck::testing {

std::string asset_path(const std::string& name);
std::string read_asset(const std::string& name);

// The bundled library model, parsed; aborts the test program if it fails.
Model library_model();

// Well-formed random model: domains of at most two members, 2-4 atomic
// facts, optionally one derived fact, 2-4 acts, 0-2 duties, random sources
// and initial facts.
Model random_model(std::mt19937& rng);

// Random trace that mostly follows enabled acts; with probability
// `disabled_rate` a step picks an arbitrary ground act instead.
Trace random_trace(const GroundModel& gm, std::mt19937& rng, std::size_t length, double disabled_rate = 0.1);

// Random formula over the model's fact symbols with variables from `scope`.
Formula random_formula(const Model& m, const std::vector<Param>& scope, std::mt19937& rng, int depth);

// Evaluates a possibly non-ground formula under an environment, expanding
// derived facts by binding their parameters in a fresh environment.
bool eval_with_env(const Model& m, const State& s, const Formula& f, const Binding& env);

// All states reachable by some executable trace of length <= horizon,
// found by enumerating every trace (no deduplication during the search).
std::set<State> reachable_by_traces(const GroundModel& gm, const State& initial, std::size_t horizon);

// SDL formulas over {p, q, r} with modal depth <= max_depth and at most
// max_connectives connectives.
sdl::Formula random_sdl_formula(std::mt19937& rng, int max_depth, int max_connectives);
std::vector<sdl::Formula> random_sdl_set(std::mt19937& rng);

} // namespace normcheck::testing
