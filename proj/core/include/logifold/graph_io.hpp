#pragma once

#include "logifold/fuzzy.hpp"
#include "logifold/graph.hpp"

#include <string>
#include <string_view>

namespace logifold {

// JSON serialization of compiled graphs. Output is deterministic: vertices,
// arrows and deciders appear in id order and doubles use shortest round-trip
// formatting.
std::string dump_graph(const LinearLogicalGraph& g);
LinearLogicalGraph parse_graph(std::string_view text);

std::string dump_fuzzy_graph(const FuzzyLinearLogicalGraph& g);
FuzzyLinearLogicalGraph parse_fuzzy_graph(std::string_view text);

}  // namespace logifold
