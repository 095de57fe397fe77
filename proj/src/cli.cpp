#include "cellgraph/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cellgraph/community.hpp"
#include "cellgraph/corr.hpp"
#include "cellgraph/digest.hpp"
#include "cellgraph/error.hpp"
#include "cellgraph/filter.hpp"
#include "cellgraph/records.hpp"
#include "cellgraph/series.hpp"
#include "cellgraph/socialnets.hpp"
#include "cellgraph/synth.hpp"
#include "text.hpp"

namespace cellgraph::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void setup_logging() {
  auto logger = spdlog::get("cellgraph");
  if (!logger) {
    logger = spdlog::stderr_color_mt("cellgraph");
    spdlog::set_default_logger(logger);
  }
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("CELLGRAPH_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return in;
}

void report_rejects(const std::string& path, const ParseReport& r) {
  if (r.rows_rejected == 0) return;
  spdlog::warn("{}: rejected {} of {} rows; first at line {}: {}", path, r.rows_rejected, r.rows_total,
               r.rejects.front().line, r.rejects.front().reason);
}

// Tracks what a run read and wrote, and emits manifest.json at the end.
class Run {
 public:
  Run(const std::vector<std::string>& args, fs::path out_dir)
      : args_(args), out_dir_(std::move(out_dir)), started_(std::chrono::steady_clock::now()) {}

  void input(const std::string& path) { inputs_[path] = sha256_file(path); }

  template <typename Writer>
  void output(const std::string& name, Writer&& write) {
    std::ostringstream buf;
    write(buf);
    const std::string bytes = buf.str();
    fs::create_directories(out_dir_);
    std::ofstream f(out_dir_ / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (out_dir_ / name).string());
    f << bytes;
    outputs_[name] = sha256_hex(bytes);
  }

  void config(ordered_json cfg) { config_ = std::move(cfg); }
  void result(const std::string& key, ordered_json value) { results_[key] = std::move(value); }

  void finish() {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    ordered_json m;
    m["tool"] = "cellgraph";
    m["version"] = kVersion;
    m["command_line"] = args_;
    m["config"] = config_;
    m["config_digest"] = sha256_hex(config_.dump());
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    if (!results_.empty()) m["results"] = results_;
    m["wall_clock_seconds"] = secs;
    fs::create_directories(out_dir_);
    std::ofstream f(out_dir_ / "manifest.json");
    if (!f) throw Error("cannot write manifest in " + out_dir_.string());
    f << m.dump(2) << '\n';
  }

 private:
  std::vector<std::string> args_;
  fs::path out_dir_;
  std::chrono::steady_clock::time_point started_;
  ordered_json config_ = ordered_json::object();
  ordered_json inputs_ = ordered_json::object();
  ordered_json outputs_ = ordered_json::object();
  ordered_json results_ = ordered_json::object();
};

// Options shared by the pipeline subcommands, layered over --config.
struct PipelineFlags {
  std::string config_file;
  std::string metric, attribution, ranking;
  std::int64_t bin = 0, span_begin = 0, span_end = 0;
  double resolution = 0, min_activity = 0, low_conf = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::map<std::string, CLI::Option*> opts;

  void add_to(CLI::App* app, bool with_series_options) {
    opts["config"] = app->add_option("--config", config_file, "JSON file mirroring the pipeline config")
                         ->check(CLI::ExistingFile);
    if (with_series_options) {
      opts["metric"] = app->add_option("--metric", metric, "bytes_total|bytes_down|bytes_up|flow_count");
      opts["bin"] = app->add_option("--bin", bin, "bin width in seconds (300, 900, 3600, 86400)");
      opts["span-begin"] = app->add_option("--span-begin", span_begin, "span start, epoch seconds");
      opts["span-end"] = app->add_option("--span-end", span_end, "span end (exclusive), epoch seconds");
      opts["attribution"] = app->add_option("--attribution", attribution, "proportional|start_bin");
      opts["ranking"] = app->add_option("--ranking", ranking, "value|abs_value");
      opts["min-activity"] = app->add_option("--min-activity", min_activity, "minimum total volume per entity");
      opts["low-confidence"] =
          app->add_option("--low-confidence", low_conf, "profile distance above which labels are flagged");
    } else {
      opts["span-begin"] = app->add_option("--span-begin", span_begin, "span start, epoch seconds");
      opts["span-end"] = app->add_option("--span-end", span_end, "span end (exclusive), epoch seconds");
    }
    opts["resolution"] = app->add_option("--resolution", resolution, "Louvain resolution");
    opts["seed"] = app->add_option("--seed", seed, "Louvain seed");
    opts["threads"] = app->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    cfg.threads = 0;
    if (!config_file.empty()) {
      auto in = open_input(config_file);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error("config " + config_file + ": " + e.what());
      }
      cfg = config_from_json(doc, cfg);
    }
    if (given("metric")) cfg.metric = parse_metric(metric);
    if (given("bin")) cfg.bin_width = bin;
    if (given("attribution")) cfg.attribution = parse_attribution(attribution);
    if (given("ranking")) cfg.ranking = parse_ranking(ranking);
    if (given("min-activity")) cfg.min_activity = min_activity;
    if (given("low-confidence")) cfg.low_confidence_distance = low_conf;
    if (given("resolution")) cfg.resolution = resolution;
    if (given("seed")) cfg.seed = seed;
    if (given("threads")) cfg.threads = threads;
    if (given("span-begin") != given("span-end")) throw InvalidArgument("--span-begin and --span-end go together");
    if (given("span-begin")) cfg.span = Span{span_begin, span_end};
    validate(cfg);
    return cfg;
  }
};

template <typename Parsed>
Parsed load(Run& run, const std::string& path, bool strict, Parsed (*parse)(std::istream&, bool)) {
  auto in = open_input(path);
  run.input(path);
  Parsed p = parse(in, strict);
  report_rejects(path, p.report);
  return p;
}

void write_graph_output(Run& run, const WeightedGraph& g, GraphFormat format) {
  run.output("graph." + std::string(file_extension(format)), [&](std::ostream& o) { write_graph(o, g, format); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging();
  CLI::App app{"Social-network analytics over cellular traffic records", "cellgraph"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string out_dir = ".";
  bool strict = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  };

  // synth-city
  auto* synth_city = app.add_subcommand("synth-city", "generate a synthetic city with planted scenarios");
  CityOptions city_opts;
  double noise = 0.1;
  std::string profiles_file;
  synth_city->add_option("--seed", city_opts.seed)->capture_default_str();
  synth_city->add_option("--cells-per-scenario", city_opts.cells_per_scenario)->capture_default_str();
  synth_city->add_option("--days", city_opts.days)->capture_default_str();
  synth_city->add_option("--bin", city_opts.bin_width)->capture_default_str();
  synth_city->add_option("--noise", noise, "noise sigma as a fraction of the bin mean")->capture_default_str();
  synth_city->add_option("--profiles", profiles_file, "reference profile CSV (label,h0..h23)")
      ->check(CLI::ExistingFile);
  add_common(synth_city);

  // synth-subs
  auto* synth_subs = app.add_subcommand("synth-subs", "generate Pareto-distributed subscriber totals");
  std::size_t subs_n = 10000;
  double subs_alpha = 0.5;
  std::uint64_t subs_seed = 1;
  synth_subs->add_option("--n", subs_n)->capture_default_str();
  synth_subs->add_option("--alpha", subs_alpha)->capture_default_str();
  synth_subs->add_option("--seed", subs_seed)->capture_default_str();
  add_common(synth_subs);

  // synth-calls
  auto* synth_calls = app.add_subcommand("synth-calls", "generate a planted-partition call graph");
  std::size_t users_per_block = 10, blocks = 4;
  double p_in = 0.9, p_out = 0.05;
  std::uint64_t calls_seed = 1;
  synth_calls->add_option("--users-per-block", users_per_block)->capture_default_str();
  synth_calls->add_option("--blocks", blocks)->capture_default_str();
  synth_calls->add_option("--p-in", p_in)->capture_default_str();
  synth_calls->add_option("--p-out", p_out)->capture_default_str();
  synth_calls->add_option("--seed", calls_seed)->capture_default_str();
  add_common(synth_calls);

  // aggregate
  auto* aggregate_cmd = app.add_subcommand("aggregate", "bin flow records into per-entity series");
  std::string flows_file, key_name = "cell";
  PipelineFlags agg_flags;
  aggregate_cmd->add_option("--flows", flows_file, "flow CSV")->required()->check(CLI::ExistingFile);
  aggregate_cmd->add_option("--key", key_name, "cell|user|app")->capture_default_str();
  aggregate_cmd->add_flag("--strict", strict, "abort on the first malformed row");
  agg_flags.add_to(aggregate_cmd, true);
  add_common(aggregate_cmd);

  // stats
  auto* stats = app.add_subcommand("stats", "temporal and concentration statistics");
  stats->require_subcommand(1);
  std::string series_file, entity, entity_b, totals_file, estimator = "overlap_pearson";
  std::size_t max_lag = 24;
  std::int64_t lag = 0;
  double share_p = 0.2;
  auto* acf = stats->add_subcommand("acf", "autocorrelation of one entity's series");
  acf->add_option("--series", series_file)->required()->check(CLI::ExistingFile);
  acf->add_option("--entity", entity)->required();
  acf->add_option("--max-lag", max_lag)->capture_default_str();
  add_common(acf);
  auto* xcf = stats->add_subcommand("xcf", "cross-correlation of two entities at a lag");
  xcf->add_option("--series", series_file)->required()->check(CLI::ExistingFile);
  xcf->add_option("--a", entity)->required();
  xcf->add_option("--b", entity_b)->required();
  xcf->add_option("--lag", lag)->capture_default_str();
  xcf->add_option("--estimator", estimator, "overlap_pearson|biased")->capture_default_str();
  add_common(xcf);
  auto* conc = stats->add_subcommand("concentration", "traffic share of the top-p fraction");
  std::string conc_key = "user";
  conc->add_option("--totals", totals_file, "entity_id,total CSV")->check(CLI::ExistingFile);
  conc->add_option("--flows", flows_file, "flow CSV (totals summed per --key)")->check(CLI::ExistingFile);
  conc->add_option("--key", conc_key, "cell|user|app, with --flows")->capture_default_str();
  conc->add_option("--p", share_p, "population fraction")->capture_default_str();
  add_common(conc);

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Pearson matrix over a series CSV");
  unsigned corr_threads = 0;
  correlate->add_option("--series", series_file)->required()->check(CLI::ExistingFile);
  correlate->add_option("--threads", corr_threads, "worker threads (0 = all cores)")->capture_default_str();
  add_common(correlate);

  // pmfg
  auto* pmfg_cmd = app.add_subcommand("pmfg", "planar maximally filtered graph of a matrix CSV");
  std::string matrix_file, ranking_name = "value", format_name = "graphml", kind_name = "bs";
  std::optional<double> threshold;
  pmfg_cmd->add_option("--matrix", matrix_file)->required()->check(CLI::ExistingFile);
  pmfg_cmd->add_option("--ranking", ranking_name, "value|abs_value")->capture_default_str();
  pmfg_cmd->add_option("--threshold", threshold, "keep pairs with r >= theta instead of PMFG");
  pmfg_cmd->add_option("--kind", kind_name, "bs|app|user")->capture_default_str();
  pmfg_cmd->add_option("--format", format_name, "graphml|dot|json")->capture_default_str();
  add_common(pmfg_cmd);

  // communities
  auto* communities = app.add_subcommand("communities", "Louvain communities of a JSON graph");
  std::string graph_file;
  double resolution = 1.0;
  std::uint64_t louvain_seed = 0;
  communities->add_option("--graph", graph_file, "graph JSON")->required()->check(CLI::ExistingFile);
  communities->add_option("--resolution", resolution)->capture_default_str();
  communities->add_option("--seed", louvain_seed)->capture_default_str();
  communities->add_option("--series", series_file, "series CSV; enables scenario labels")
      ->check(CLI::ExistingFile);
  communities->add_option("--profiles", profiles_file, "reference profile CSV")->check(CLI::ExistingFile);
  communities->add_option("--format", format_name, "graphml|dot|json")->capture_default_str();
  add_common(communities);

  // bssn / asn / usn
  std::string cells_file, calls_file;
  PipelineFlags bssn_flags, asn_flags, usn_flags;
  auto* bssn = app.add_subcommand("bssn", "base-station social network");
  bssn->add_option("--flows", flows_file)->required()->check(CLI::ExistingFile);
  bssn->add_option("--cells", cells_file)->required()->check(CLI::ExistingFile);
  bssn->add_option("--profiles", profiles_file, "reference profile CSV")->check(CLI::ExistingFile);
  bssn->add_option("--format", format_name, "graphml|dot|json")->capture_default_str();
  bssn->add_flag("--strict", strict);
  bssn_flags.add_to(bssn, true);
  add_common(bssn);

  auto* asn = app.add_subcommand("asn", "app social network");
  asn->add_option("--flows", flows_file)->required()->check(CLI::ExistingFile);
  asn->add_option("--format", format_name, "graphml|dot|json")->capture_default_str();
  asn->add_flag("--strict", strict);
  asn_flags.add_to(asn, true);
  add_common(asn);

  auto* usn = app.add_subcommand("usn", "user social network from call records");
  usn->add_option("--calls", calls_file)->required()->check(CLI::ExistingFile);
  usn->add_option("--format", format_name, "graphml|dot|json")->capture_default_str();
  usn->add_flag("--strict", strict);
  usn_flags.add_to(usn, false);
  add_common(usn);

  // export
  auto* export_cmd = app.add_subcommand("export", "convert a JSON graph to another format");
  export_cmd->add_option("--graph", graph_file, "graph JSON")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--format", format_name, "graphml|dot|json")->required();
  add_common(export_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    Run run(args, out_dir);
    auto references = [&] {
      if (profiles_file.empty()) return default_reference_profiles();
      auto in = open_input(profiles_file);
      run.input(profiles_file);
      return read_reference_profiles(in);
    };

    if (*synth_city) {
      std::vector<ScenarioProfile> scenarios;
      for (const auto& ref : references()) {
        auto defaults = default_scenarios(noise);
        auto it = std::find_if(defaults.begin(), defaults.end(), [&](auto& s) { return s.label == ref.label; });
        scenarios.push_back({ref.label, ref.shape, it != defaults.end() ? it->amplitude : 5.0e9, noise});
      }
      const City city = gen_city(scenarios, city_opts);
      run.config({{"seed", city_opts.seed}, {"cells_per_scenario", city_opts.cells_per_scenario},
                  {"days", city_opts.days}, {"bin_width", city_opts.bin_width}, {"noise", noise}});
      run.output("flows.csv", [&](std::ostream& o) { write_flow_csv(o, city.flows); });
      run.output("cells.csv", [&](std::ostream& o) { write_cells_csv(o, city.cells); });
      run.output("truth.csv", [&](std::ostream& o) { write_truth_csv(o, city.truth); });
    } else if (*synth_subs) {
      const auto totals = gen_subscribers(subs_n, subs_alpha, subs_seed);
      run.config({{"n", subs_n}, {"alpha", subs_alpha}, {"seed", subs_seed}});
      run.output("totals.csv", [&](std::ostream& o) { write_totals_csv(o, totals); });
    } else if (*synth_calls) {
      const auto g = gen_calls(users_per_block, blocks, p_in, p_out, calls_seed);
      run.config({{"users_per_block", users_per_block}, {"blocks", blocks}, {"p_in", p_in},
                  {"p_out", p_out}, {"seed", calls_seed}});
      run.output("calls.csv", [&](std::ostream& o) { write_call_csv(o, g.calls); });
      run.output("truth.csv", [&](std::ostream& o) { write_truth_csv(o, g.blocks); });
    } else if (*aggregate_cmd) {
      const PipelineConfig cfg = agg_flags.resolve();
      const auto flows = load(run, flows_file, strict, &parse_flow_csv);
      AggregateOptions opts;
      opts.key = parse_key(key_name);
      opts.metric = cfg.metric;
      opts.bin_width = cfg.bin_width;
      opts.attribution = cfg.attribution;
      opts.threads = cfg.threads;
      opts.span = cfg.span ? *cfg.span : covering_span(flows.records, cfg.bin_width);
      const auto series = aggregate(flows.records, opts);
      auto c = to_json(cfg);
      c["key"] = key_name;
      c["span"] = {opts.span.begin, opts.span.end};
      run.config(c);
      run.output("series.csv", [&](std::ostream& o) { write_series_csv(o, series); });
    } else if (*acf) {
      auto in = open_input(series_file);
      run.input(series_file);
      const auto series = read_series_csv(in);
      auto it = series.find(entity);
      if (it == series.end()) throw InvalidArgument("no series for entity " + entity);
      const auto r = autocorrelation(it->second, max_lag);
      run.config({{"entity", entity}, {"max_lag", max_lag}});
      run.output("acf.csv", [&](std::ostream& o) {
        o << "lag,r\n";
        for (std::size_t k = 0; k < r.size(); ++k) o << k << ',' << text::format_double(r[k]) << '\n';
      });
      for (std::size_t k = 0; k < r.size(); ++k) out << k << ',' << text::format_double(r[k]) << '\n';
    } else if (*xcf) {
      auto in = open_input(series_file);
      run.input(series_file);
      const auto series = read_series_csv(in);
      auto a = series.find(entity), b = series.find(entity_b);
      if (a == series.end() || b == series.end()) throw InvalidArgument("unknown entity");
      CrossEstimator est;
      if (estimator == "overlap_pearson") {
        est = CrossEstimator::overlap_pearson;
      } else if (estimator == "biased") {
        est = CrossEstimator::biased;
      } else {
        throw InvalidArgument("unknown estimator '" + estimator + "'");
      }
      const double r = cross_correlation(a->second, b->second, lag, est);
      run.config({{"a", entity}, {"b", entity_b}, {"lag", lag}, {"estimator", estimator}});
      out << text::format_double(r) << '\n';
    } else if (*conc) {
      std::map<std::string, double> totals;
      if (!totals_file.empty() == !flows_file.empty())
        throw InvalidArgument("stats concentration needs exactly one of --totals or --flows");
      if (!totals_file.empty()) {
        auto in = open_input(totals_file);
        run.input(totals_file);
        totals = read_totals_csv(in);
      } else {
        const auto flows = load(run, flows_file, false, &parse_flow_csv);
        const auto key = parse_key(conc_key);
        for (const auto& f : flows.records) {
          const std::string& id = key == AggregationKey::cell ? f.cell_id
                                  : key == AggregationKey::user ? f.user_id
                                                                : f.app_id;
          totals[id] += static_cast<double>(f.bytes_total());
        }
      }
      const auto curve = concentration(totals);
      const double share = top_share(curve, share_p);
      run.config({{"p", share_p}});
      run.output("concentration.csv", [&](std::ostream& o) { write_concentration_csv(o, curve); });
      out << text::format_double(share) << '\n';
    } else if (*correlate) {
      auto in = open_input(series_file);
      run.input(series_file);
      const auto series = read_series_csv(in);
      const auto result = correlation_matrix(series, corr_threads);
      run.config({{"threads", corr_threads}});
      run.result("excluded", result.excluded);
      run.output("matrix.csv", [&](std::ostream& o) { write_matrix_csv(o, result.matrix); });
    } else if (*pmfg_cmd) {
      auto in = open_input(matrix_file);
      run.input(matrix_file);
      const auto m = read_matrix_csv(in);
      const auto kind = parse_node_kind(kind_name);
      const auto format = parse_graph_format(format_name);
      const WeightedGraph g = threshold ? threshold_filter(m, *threshold, kind)
                                        : pmfg(m, parse_ranking(ranking_name), kind);
      ordered_json c{{"kind", kind_name}};
      if (threshold) {
        c["threshold"] = *threshold;
      } else {
        c["ranking"] = ranking_name;
      }
      run.config(c);
      write_graph_output(run, g, format);
    } else if (*communities) {
      auto in = open_input(graph_file);
      run.input(graph_file);
      WeightedGraph g = read_graph_json(in);
      const auto format = parse_graph_format(format_name);
      const auto p = louvain(g, resolution, louvain_seed);
      std::map<int, ScenarioLabel> labels;
      if (!series_file.empty()) {
        auto sin = open_input(series_file);
        run.input(series_file);
        labels = label_scenarios(p, read_series_csv(sin), references());
      }
      for (std::size_t i = 0; i < g.node_count(); ++i) g.node(i).community = p.assignment.at(g.node(i).id);
      run.config({{"resolution", resolution}, {"seed", louvain_seed}});
      run.result("modularity", p.modularity);
      run.result("communities", p.k);
      run.output("partition.csv", [&](std::ostream& o) { write_partition_csv(o, p, labels); });
      write_graph_output(run, g, format);
    } else if (*bssn) {
      const PipelineConfig cfg = bssn_flags.resolve();
      const auto format = parse_graph_format(format_name);
      const auto flows = load(run, flows_file, strict, &parse_flow_csv);
      const auto cells = load(run, cells_file, strict, &parse_cells_csv);
      const auto result = build_bssn(flows.records, cells.records, cfg, references());
      run.config(to_json(cfg));
      run.result("modularity", result.partition.modularity);
      run.result("communities", result.partition.k);
      run.result("excluded", result.excluded);
      write_graph_output(run, result.graph, format);
      run.output("partition.csv", [&](std::ostream& o) { write_partition_csv(o, result.partition, result.labels); });
    } else if (*asn) {
      const PipelineConfig cfg = asn_flags.resolve();
      const auto format = parse_graph_format(format_name);
      const auto flows = load(run, flows_file, strict, &parse_flow_csv);
      const auto result = build_asn(flows.records, cfg);
      run.config(to_json(cfg));
      run.result("modularity", result.partition.modularity);
      run.result("communities", result.partition.k);
      run.result("excluded", result.excluded);
      write_graph_output(run, result.graph, format);
      run.output("partition.csv", [&](std::ostream& o) { write_partition_csv(o, result.partition); });
    } else if (*usn) {
      const PipelineConfig cfg = usn_flags.resolve();
      const auto format = parse_graph_format(format_name);
      const auto calls = load(run, calls_file, strict, &parse_call_csv);
      const auto result = build_usn(calls.records, cfg);
      run.config(to_json(cfg));
      run.result("modularity", result.partition.modularity);
      run.result("communities", result.partition.k);
      write_graph_output(run, result.graph, format);
      run.output("partition.csv", [&](std::ostream& o) { write_partition_csv(o, result.partition); });
    } else if (*export_cmd) {
      auto in = open_input(graph_file);
      run.input(graph_file);
      const WeightedGraph g = read_graph_json(in);
      run.config({{"format", format_name}});
      write_graph_output(run, g, parse_graph_format(format_name));
    }
    run.finish();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace cellgraph::cli
