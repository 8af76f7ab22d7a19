#include "cli/commands.hpp"

#include "logifold/ensemble.hpp"
#include "logifold/error.hpp"
#include "logifold/graph_io.hpp"
#include "logifold/model_io.hpp"
#include "logifold/theory/dyadic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace logifold::cli {

namespace {

double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw InvalidArgument(what + ": \"" + std::string(s) + "\" is not a number");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  return f;
}

void write_summary(std::ostream& out, const CompileOptions& o, const MlpSpec& mlp, const CompileStats& stats) {
  out << "seed: " << o.discovery.seed << '\n'
      << "head: " << to_string(mlp.head()) << '\n'
      << "mode: " << to_string(stats.mode) << '\n'
      << "input_dim: " << mlp.input_dim() << '\n'
      << "hidden_units: " << mlp.hidden_units() << '\n';
  for (std::size_t l = 0; l < stats.chambers_per_level.size(); ++l)
    out << "chambers_level_" << l + 1 << ": " << stats.chambers_per_level[l] << '\n';
  out << "vertices: " << stats.vertices << '\n'
      << "arrows: " << stats.arrows << '\n'
      << "sinks: " << stats.sinks << '\n';
}

}  // namespace

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> t;
  for (auto part : split(text, ',')) t.push_back(parse_double(part, "ladder"));
  (void)ThresholdLadder(t);
  return t;
}

Box parse_domain(const std::string& text, std::size_t input_dim) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument("domain must be \"lo,hi\"");
  const double lo = parse_double(parts[0], "domain"), hi = parse_double(parts[1], "domain");
  if (!(lo < hi)) throw InvalidArgument("domain needs lo < hi");
  return Box::cube(input_dim, lo, hi);
}

void cmd_compile(const CompileOptions& o, std::ostream& out, std::ostream& log) {
  const MlpSpec mlp = load_mlp(o.mlp);
  DiscoveryConfig config = o.discovery;
  if (o.domain) config.domain = parse_domain(*o.domain, mlp.input_dim());

  std::string graph;
  CompileStats stats;
  if (mlp.head() == Head::Softmax) {
    auto c = compile_mlp_fuzzy_detailed(mlp, config);
    graph = dump_fuzzy_graph(c.graph);
    stats = std::move(c.stats);
  } else {
    auto c = compile_mlp_detailed(mlp, config);
    graph = dump_graph(c.graph);
    stats = std::move(c.stats);
  }
  if (o.out) {
    auto f = open_output(*o.out);
    f << graph;
    write_summary(out, o, mlp, stats);
  } else {
    write_summary(log, o, mlp, stats);
    out << graph;
  }
}

void cmd_combine(const CombineOptions& o, std::ostream& out, std::ostream& log) {
  if (o.predictions.empty()) throw InvalidArgument("combine needs at least one prediction file");
  const GroundTruth truth = load_ground_truth(o.truth);
  Dataset dataset{truth.instance_ids, std::nullopt};

  std::optional<RoutingSpec> spec;
  if (o.routing) spec = load_routing(*o.routing);

  std::vector<Chart> charts;
  std::vector<Vocabulary> vocabs;
  for (const auto& path : o.predictions) {
    auto m = std::make_shared<const PredictionMatrix>(load_predictions(path));
    charts.push_back(chart_from_matrix(m, dataset));
    if (!spec || spec->filter_id != m->model_id()) vocabs.push_back(m->vocab());
  }
  if (vocabs.empty()) throw InvalidArgument("combine needs at least one non-filter chart");
  GlobalLabelSpace global = union_label_space(std::span<const Vocabulary>(vocabs));

  ThresholdLadder ladder = o.ladder ? ThresholdLadder(parse_ladder(*o.ladder)) : ThresholdLadder::standard();
  std::optional<Routing> routing;
  if (spec) routing = Routing{spec->filter_id, {spec->coarse_to_expert.begin(), spec->coarse_to_expert.end()}};

  const Logifold lf(std::move(charts), std::move(global), std::move(ladder), std::move(dataset), std::move(routing));
  const auto t = resolve_truth(lf, truth);
  const EvaluationTable table = evaluate_table(lf, t);

  log << "# seed=" << o.seed << " charts=" << lf.charts().size() << " instances=" << lf.dataset().size()
      << " ladder=" << (o.ladder ? *o.ladder : std::string("standard"))
      << " routing=" << (spec ? spec->filter_id : std::string("none")) << '\n';
  if (o.out) {
    auto f = open_output(*o.out);
    write_table(f, table);
  } else {
    write_table(out, table);
  }
}

void cmd_theory(const TheoryOptions& o, std::ostream& out) {
  const std::string report = theory::theory_report(o.run);
  if (o.out) {
    auto f = open_output(*o.out);
    f << report;
  }
  out << report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"logifold: compile networks to linear logical graphs, combine charts, probe the dyadic example"};
  app.require_subcommand(1);

  CompileOptions compile;
  std::string compile_mode = "auto";
  auto* c = app.add_subcommand("compile", "compile an MLP (JSON) to a linear logical graph");
  c->add_option("mlp", compile.mlp, "network JSON")->required();
  c->add_option("--out", compile.out, "graph JSON output");
  c->add_option("--seed", compile.discovery.seed, "sampling seed");
  c->add_option("--mode", compile_mode, "auto | exhaustive | sampling");
  c->add_option("--samples", compile.discovery.samples, "sample count in sampling mode");
  c->add_option("--width-cap", compile.discovery.width_cap, "auto mode picks exhaustive up to this width");
  c->add_option("--max-regions", compile.discovery.max_regions, "region budget");
  c->add_option("--domain", compile.domain, "input cube \"lo,hi\"");

  CombineOptions combine;
  auto* m = app.add_subcommand("combine", "refined-voting table from prediction files");
  m->add_option("predictions", combine.predictions, "prediction files")->required();
  m->add_option("--truth", combine.truth, "ground-truth file")->required();
  m->add_option("--ladder", combine.ladder, "comma-separated certainty thresholds");
  m->add_option("--routing", combine.routing, "filter/expert routing file");
  m->add_option("--out", combine.out, "TSV output");
  m->add_option("--seed", combine.seed, "recorded in the run metadata");

  TheoryOptions theory;
  std::string theory_mode = "auto";
  auto* t = app.add_subcommand("theory", "proof quantities and agreement search for the dyadic example");
  t->add_option("--N,-N", theory.run.N, "member size budget");
  t->add_option("--K,-K", theory.run.K, "family size");
  t->add_option("--depth", theory.run.search.depth, "dyadic depth of breakpoints");
  t->add_option("--mode", theory_mode, "auto | exhaustive | random");
  t->add_option("--budget", theory.run.search.budget, "candidate evaluations");
  t->add_option("--restarts", theory.run.search.restarts, "random restarts");
  t->add_option("--families", theory.run.families, "sampled families for the proof checks");
  t->add_option("--seed", theory.run.search.seed, "seed");
  t->add_option("--out", theory.out, "report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*c) {
      if (compile_mode == "auto") compile.discovery.mode = DiscoveryMode::Auto;
      else if (compile_mode == "exhaustive") compile.discovery.mode = DiscoveryMode::Exhaustive;
      else if (compile_mode == "sampling") compile.discovery.mode = DiscoveryMode::Sampling;
      else throw InvalidArgument("unknown discovery mode '" + compile_mode + "'");
      cmd_compile(compile, out, err);
    } else if (*m) {
      cmd_combine(combine, out, err);
    } else if (*t) {
      theory.run.search.mode = theory::parse_search_mode(theory_mode);
      cmd_theory(theory, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace logifold::cli
