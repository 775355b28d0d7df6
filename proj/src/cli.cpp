#include "gapsense/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "gapsense/baseline.hpp"
#include "gapsense/data_io.hpp"
#include "gapsense/iir.hpp"
#include "gapsense/monte_carlo.hpp"
#include "gapsense/oscillator.hpp"
#include "gapsense/serialize.hpp"

namespace gapsense::cli {

namespace {

const std::vector<std::string> kCompareMethods = {"mean_sigma", "boxplot", "mad", "chauvenet", "iir"};
const std::vector<std::string> kTableDatasets = {"rosner", "barnett", "grubbs1", "grubbs3", "cushny"};

// Text output is for reading; json and csv keep full precision.
std::string sig6(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::string fixed4(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << x;
  return s.str();
}

Sensitivity sensitivity_of(const CliConfig& cfg) {
  try {
    if (cfg.c) return Sensitivity::from_threshold(*cfg.c);
    if (cfg.K) return Sensitivity::from_weber(*cfg.K);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return {};
}

MethodConfig method_config(const CliConfig& cfg) {
  MethodConfig mc;
  mc.sens = sensitivity_of(cfg);
  mc.baseline.k = cfg.k;
  mc.baseline.whisker = cfg.whisker;
  mc.baseline.b = cfg.b;
  try {
    mc.baseline.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return mc;
}

SimMethod method_of(const std::string& name) {
  try {
    return parse_sim_method(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

TextFormat text_format_of(const std::string& s) {
  if (s == "csv") return TextFormat::Csv;
  if (s == "whitespace") return TextFormat::Whitespace;
  return TextFormat::Auto;
}

Sample load_sample(const CliConfig& cfg) {
  if (!cfg.input.empty()) return load_univariate(cfg.input, text_format_of(cfg.input_format));
  return builtin_sample(cfg.dataset);
}

PointSet load_points(const CliConfig& cfg) {
  if (!cfg.input.empty()) return load_points2d(cfg.input);
  auto ds = builtin_dataset(cfg.dataset);
  if (auto* p = std::get_if<PointSet>(&ds)) return *p;
  throw DataError("dataset '" + cfg.dataset + "' is univariate; cluster needs 2-D points");
}

void require_source(const CliConfig& cfg) {
  if (cfg.dataset.empty() == cfg.input.empty())
    throw UsageError("exactly one of --dataset or --input is required");
}

std::string join_values(const std::vector<double>& values, const char* sep = ",") {
  if (values.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_number(values[i]);
  }
  return out;
}

// 1,2,3,5,7,8,9 -> "1-3,5,7-9"
std::string compress_ids(const std::vector<std::size_t>& ids) {
  if (ids.empty()) return "-";
  std::string out;
  std::size_t i = 0;
  while (i < ids.size()) {
    std::size_t j = i;
    while (j + 1 < ids.size() && ids[j + 1] == ids[j] + 1) ++j;
    if (!out.empty()) out += ',';
    if (j - i >= 2) out += std::to_string(ids[i]) + "-" + std::to_string(ids[j]);
    else {
      out += std::to_string(ids[i]);
      if (j > i) out += "," + std::to_string(ids[j]);
    }
    i = j + 1;
  }
  return out;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << r[c];
      if (c + 1 < r.size()) out << std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << '\n';
  }
}

Detection detect_with(const std::string& method, const Sample& s, const MethodConfig& mc) {
  return run_method(method_of(method), s, mc);
}

std::uint64_t resolve_seed(const CliConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("GAPSENSE_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("GAPSENSE_SEED must be an unsigned integer");
  }
  return 1;
}

}  // namespace

int run_detect(const CliConfig& cfg, std::ostream& out) {
  require_source(cfg);
  const auto mc = method_config(cfg);
  const auto method = method_of(cfg.method);
  const auto sample = load_sample(cfg);
  auto det = run_method(method, sample, mc);

  switch (cfg.format) {
    case Format::Json: {
      Json j = det;
      j["source"] = sample.label();
      j["n"] = sample.size();
      if (!cfg.trace) j["trace"] = Json::array();
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << detection_csv(det);
      if (cfg.trace) out << '\n' << trace_csv(det);
      break;
    case Format::Text: {
      out << "source: " << sample.label() << " (n = " << sample.size() << ")\n";
      out << "method: " << det.method;
      for (const auto& [key, value] : det.params) out << ' ' << key << '=' << sig6(value);
      out << '\n';
      out << "outliers: " << join_values(det.outlier_values, ", ") << '\n';
      out << "normal interval: [" << format_number(det.normal_low) << ", "
          << format_number(det.normal_high) << "]\n";
      if (det.degenerate) out << "note: degenerate sample (no spread), no inconsistency definable\n";
      if (det.border)
        out << "border: value " << format_number(det.border->value) << ", IIR " << fixed4(det.border->iir) << '\n';
      if (cfg.trace && !det.trace.empty()) {
        std::vector<std::vector<std::string>> rows{
            {"index", "side", "value", "gap", "max_prev", "er", "ihr", "iir", "accepted"}};
        for (const auto& r : det.trace) {
          rows.push_back({std::to_string(r.index), r.side == Side::Low ? "low" : "high", sig6(r.value),
                          sig6(r.gap), sig6(r.max_prev), sig6(r.er), r.ihr ? sig6(*r.ihr) : "undef", fixed4(r.iir),
                          r.accepted ? "yes" : "no"});
        }
        print_table(out, rows);
      }
      break;
    }
  }
  return kOk;
}

int run_compare(const CliConfig& cfg, std::ostream& out) {
  const auto mc = method_config(cfg);
  const auto names = cfg.datasets.empty() ? kTableDatasets : cfg.datasets;

  std::vector<std::pair<std::string, std::vector<Detection>>> matrix;
  for (const auto& name : names) {
    const auto sample = builtin_sample(name);
    std::vector<Detection> row;
    for (const auto& m : kCompareMethods) row.push_back(detect_with(m, sample, mc));
    matrix.emplace_back(name, std::move(row));
  }

  switch (cfg.format) {
    case Format::Json: {
      Json rows = Json::array();
      for (const auto& [name, dets] : matrix) {
        Json cells = Json::object();
        for (std::size_t m = 0; m < kCompareMethods.size(); ++m) cells[kCompareMethods[m]] = dets[m].outlier_values;
        rows.push_back({{"dataset", name}, {"cells", cells}});
      }
      Json j{{"columns", kCompareMethods},
             {"extensions", {"chauvenet"}},
             {"params",
              {{"k", mc.baseline.k}, {"whisker", mc.baseline.whisker}, {"b", mc.baseline.b},
               {"c", mc.sens.threshold()}}},
             {"rows", rows}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "dataset,method,outliers\n";
      for (const auto& [name, dets] : matrix)
        for (std::size_t m = 0; m < kCompareMethods.size(); ++m)
          out << name << ',' << kCompareMethods[m] << ',' << join_values(dets[m].outlier_values, ";") << '\n';
      break;
    case Format::Text: {
      std::vector<std::vector<std::string>> rows{{"dataset", "mean_sigma", "boxplot", "mad",
                                                  "chauvenet (ext)", "iir"}};
      for (const auto& [name, dets] : matrix) {
        std::vector<std::string> r{name};
        for (const auto& d : dets) r.push_back(join_values(d.outlier_values));
        rows.push_back(std::move(r));
      }
      print_table(out, rows);
      break;
    }
  }
  return kOk;
}

int run_simulate(const CliConfig& cfg, std::ostream& out) {
  const auto mc = method_config(cfg);
  if (cfg.reps < 1) throw UsageError("--reps must be at least 1");
  std::vector<SimMethod> methods;
  for (const auto& m : cfg.methods.empty() ? std::vector<std::string>{"iir", "boxplot", "mad"} : cfg.methods)
    methods.push_back(method_of(m));
  const auto seed = resolve_seed(cfg);

  std::vector<CurvePoint> curve;
  const bool pure = cfg.scenario == "fig1c" || (cfg.scenario.empty() && !cfg.sizes.empty());
  if (pure) {
    const auto sizes = cfg.sizes.empty() ? default_sizes() : cfg.sizes;
    for (auto n : sizes)
      if (n < 2) throw UsageError("sample sizes must be at least 2");
    curve = pure_normal_curve(sizes, methods, cfg.reps, seed, mc, cfg.threads);
  } else {
    SimScenario scn;
    scn.n = cfg.n;
    scn.reps = cfg.reps;
    scn.master_seed = seed;
    scn.target = {cfg.target_mean, cfg.target_sd};
    scn.contaminant = {cfg.contaminant_mean, cfg.contaminant_sd};
    const auto fractions = cfg.fractions.empty() ? default_fractions() : cfg.fractions;
    try {
      for (double f : fractions) {
        auto probe = scn;
        probe.contamination = f;
        probe.validate();
      }
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    curve = breakdown_curve(scn, fractions, methods, mc, cfg.threads);
  }

  switch (cfg.format) {
    case Format::Json: {
      Json j{{"scenario", cfg.scenario.empty() ? "custom" : cfg.scenario},
             {"seed", seed},
             {"reps", cfg.reps},
             {"curve", curve}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: out << curve_csv(curve); break;
    case Format::Text: {
      std::vector<std::vector<std::string>> rows{{"x", "method", "detected_pct", "stderr", "recall_pct"}};
      for (const auto& p : curve) {
        std::ostringstream a, b, c;
        a << std::fixed << std::setprecision(3) << p.detected_pct;
        b << std::fixed << std::setprecision(3) << p.stderr_pct;
        c << std::fixed << std::setprecision(3) << p.recall_pct;
        rows.push_back({format_number(p.x), p.method, a.str(), b.str(), c.str()});
      }
      print_table(out, rows);
      break;
    }
  }
  return kOk;
}

int run_cluster(const CliConfig& cfg, std::ostream& out) {
  require_source(cfg);
  const auto sens = sensitivity_of(cfg);
  if (cfg.min_partners < 1) throw UsageError("--min-partners must be at least 1");
  const auto points = load_points(cfg);
  if (static_cast<std::size_t>(points.rows()) < cfg.min_partners + 1)
    throw DataError("need at least min_partners + 1 points");
  const auto part = oscillator_cluster(points, sens, cfg.min_partners);

  switch (cfg.format) {
    case Format::Json: {
      Json j = part;
      j["min_partners"] = cfg.min_partners;
      j["c"] = sens.threshold();
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: out << partition_csv(part); break;
    case Format::Text: {
      out << "points: " << points.rows() << ", clusters: " << part.clusters.size()
          << " (c=" << format_number(sens.threshold()) << ", min_partners=" << cfg.min_partners << ")\n";
      std::vector<std::vector<std::string>> rows{
          {"cluster", "members", "right", "silent", "right_pct"}};
      for (const auto& c : part.clusters) {
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(0) << 100.0 * c.right_fraction() << '%';
        rows.push_back({std::to_string(c.id), compress_ids(c.members), std::to_string(c.right_count),
                        compress_ids(c.silent_members), pct.str()});
      }
      print_table(out, rows);
      out << "silent ids: " << compress_ids(part.silent_ids) << '\n';
      std::vector<std::size_t> unlabeled;
      for (std::size_t i = 0; i < part.labels.size(); ++i)
        if (!part.labels[i]) unlabeled.push_back(i + 1);
      if (!unlabeled.empty()) out << "unlabeled ids: " << compress_ids(unlabeled) << '\n';
      break;
    }
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gapsense: gap-based univariate outlier detection and resonance clustering"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string format = "text";

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_sensitivity = [&](CLI::App* sub) {
    auto* c = sub->add_option("--c", cfg.c, "IIR threshold c in [0, 2] (default 1.81)");
    auto* K = sub->add_option("--K", cfg.K, "Weber constant K in [0, 1]");
    c->excludes(K);
  };
  auto add_baseline = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "Multiplier for mean_sigma and mad");
    sub->add_option("--whisker", cfg.whisker, "Boxplot fence multiplier");
    sub->add_option("--b", cfg.b, "MAD consistency constant");
  };
  auto add_source = [&](CLI::App* sub) {
    auto* d = sub->add_option("--dataset", cfg.dataset, "Built-in dataset name");
    auto* i = sub->add_option("--input", cfg.input, "Input file");
    d->excludes(i);
  };

  auto* detect = app.add_subcommand("detect", "Flag outliers in a univariate sample");
  add_source(detect);
  detect->add_option("--input-format", cfg.input_format, "auto | csv | whitespace")
      ->check(CLI::IsMember({"auto", "csv", "whitespace"}));
  detect->add_option("--method", cfg.method, "iir | iir-high | mean_sigma | boxplot | mad | chauvenet");
  add_sensitivity(detect);
  add_baseline(detect);
  add_format(detect);
  detect->add_flag("--trace", cfg.trace, "Print every evaluated IIR record");

  auto* compare = app.add_subcommand("compare", "Run every detector on built-in datasets");
  compare->add_option("--datasets", cfg.datasets, "Comma-separated dataset names")->delimiter(',');
  add_sensitivity(compare);
  add_baseline(compare);
  add_format(compare);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo detection curves");
  simulate->add_option("--scenario", cfg.scenario, "fig1a | fig1b | fig1c")
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig1c"}));
  simulate->add_option("--seed", cfg.seed, "Master seed (fallback: GAPSENSE_SEED, then 1)");
  simulate->add_option("--reps", cfg.reps, "Replications per point")->check(CLI::PositiveNumber);
  simulate->add_option("--n", cfg.n, "Sample size for contamination sweeps");
  simulate->add_option("--fractions", cfg.fractions, "Contamination fractions")->delimiter(',');
  simulate->add_option("--sizes", cfg.sizes, "Sample sizes for pure-normal sweeps")->delimiter(',');
  simulate->add_option("--target-mean", cfg.target_mean);
  simulate->add_option("--target-sd", cfg.target_sd);
  auto* cmean = simulate->add_option("--contaminant-mean", cfg.contaminant_mean);
  simulate->add_option("--contaminant-sd", cfg.contaminant_sd);
  simulate->add_option("--methods", cfg.methods, "Methods (default iir,boxplot,mad)")->delimiter(',');
  simulate->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  add_sensitivity(simulate);
  add_baseline(simulate);
  add_format(simulate);

  auto* cluster = app.add_subcommand("cluster", "Resonance clustering of 2-D points");
  add_source(cluster);
  cluster->add_option("--min-partners", cfg.min_partners, "Minimum partner-set size");
  add_sensitivity(cluster);
  add_format(cluster);

  std::vector<std::string> argv_store{"gapsense"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  cfg.format = formats.at(format);
  try {
    if (detect->parsed()) {
      cfg.subcommand = "detect";
      return run_detect(cfg, out);
    }
    if (compare->parsed()) {
      cfg.subcommand = "compare";
      return run_compare(cfg, out);
    }
    if (simulate->parsed()) {
      cfg.subcommand = "simulate";
      if (cfg.scenario == "fig1b" && cmean->count() == 0) cfg.contaminant_mean = 5.0;
      return run_simulate(cfg, out);
    }
    cfg.subcommand = "cluster";
    return run_cluster(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const SizeError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace gapsense::cli
