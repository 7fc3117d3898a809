#pragma once

// Concrete syntax for models and traces.
//
//   Domain Agent = alice, bob
//   Fact borrowed(Agent, Item)
//   Fact may-borrow(Agent) = member(agent) and not suspended(agent)
//   Act borrow(actor: Agent, item: Item)
//     pre: not borrowed(actor, item)
//     creates: borrowed(actor, item)
//     source: "Library regulations, rule 1"
//   Duty return-duty(holder: Agent, item: Item)
//     created-by: borrow
//     enforced-by: take-disciplinary-action
//     terminated-by: return
//   Init: member(alice)
//
// A token in column 1 starts a new declaration; indented lines continue the
// current one. '#' starts a comment. Fact parameters are written either as a
// bare domain (named after the lowercased domain, with a numeric suffix from
// the second repetition on) or as `name: Domain`.

#include "normcheck/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace normcheck {

using Trace = std::vector<GroundAct>;

// Never throws on malformed input; every problem becomes a positioned diagnostic.
ParseResult<Model> parse_model(std::string_view text);

ParseResult<Trace> parse_trace(std::string_view text, const Model& model);

// Canonical text; parse_model(serialize_model(m)) reproduces m.
std::string serialize_model(const Model& model);

// Name given to the i-th parameter of a fact declared with bare domains.
std::string default_fact_param_name(const std::vector<std::string>& domains, std::size_t i);

} // namespace normcheck
