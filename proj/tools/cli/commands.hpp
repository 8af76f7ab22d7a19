#pragma once

#include "logifold/compile.hpp"
#include "logifold/theory/report.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace logifold::cli {

struct CompileOptions {
  std::filesystem::path mlp;
  std::optional<std::filesystem::path> out;  // serialized graph; stdout when empty
  DiscoveryConfig discovery;
  std::optional<std::string> domain;  // "lo,hi", overrides discovery.domain
};

struct CombineOptions {
  std::vector<std::filesystem::path> predictions;
  std::filesystem::path truth;
  std::optional<std::string> ladder;  // comma-separated thresholds
  std::optional<std::filesystem::path> routing;
  std::optional<std::filesystem::path> out;  // TSV; stdout when empty
  std::uint64_t seed = 0;
};

struct TheoryOptions {
  theory::TheoryRunConfig run;
  std::optional<std::filesystem::path> out;
};

// Summary goes to `out`; the graph to options.out or, when absent, after the summary.
void cmd_compile(const CompileOptions& options, std::ostream& out, std::ostream& log);
// TSV goes to options.out or `out`; run metadata to `log`.
void cmd_combine(const CombineOptions& options, std::ostream& out, std::ostream& log);
void cmd_theory(const TheoryOptions& options, std::ostream& out);

std::vector<double> parse_ladder(const std::string& text);
Box parse_domain(const std::string& text, std::size_t input_dim);  // "lo,hi" cube

// Full command line. Typed errors print "error: <Kind>: <message>" to err and return 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace logifold::cli
