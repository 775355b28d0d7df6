#include "gapsense/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace gapsense {

void SimScenario::validate() const {
  if (!(contamination >= 0.0 && contamination < 0.5))
    throw DomainError("contamination must lie in [0, 0.5)");
  if (n < 2) throw DomainError("sample size must be at least 2");
  if (reps < 1) throw DomainError("reps must be at least 1");
  if (!(target.sd > 0.0) || !(contaminant.sd > 0.0))
    throw DomainError("standard deviations must be positive");
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t rep) {
  return mix64(mix64(mix64(master_seed) ^ stream) ^ rep);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::size_t contaminant_count(std::size_t n, double contamination) {
  // Round half up; the epsilon absorbs representation error in fractions like 0.29.
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * contamination + 0.5 + 1e-9));
}

LabeledDraws contaminated_draws(const SimScenario& scn, std::size_t rep, std::uint64_t stream) {
  scn.validate();
  Rng rng(substream_seed(scn.master_seed, stream, rep));
  const auto k = contaminant_count(scn.n, scn.contamination);
  LabeledDraws out;
  out.values.reserve(scn.n);
  out.contaminant.reserve(scn.n);
  for (std::size_t i = 0; i < scn.n; ++i) {
    const bool bad = i < k;
    const auto& dist = bad ? scn.contaminant : scn.target;
    out.values.push_back(dist.mean + dist.sd * rng.normal());
    out.contaminant.push_back(bad);
  }
  return out;
}

std::vector<double> contaminated_sample(const SimScenario& scn, std::size_t rep, std::uint64_t stream) {
  return contaminated_draws(scn, rep, stream).values;
}

std::string to_string(SimMethod m) {
  switch (m) {
    case SimMethod::Iir: return "iir";
    case SimMethod::IirHigh: return "iir-high";
    case SimMethod::Boxplot: return "boxplot";
    case SimMethod::Mad: return "mad";
    case SimMethod::MeanSigma: return "mean_sigma";
    case SimMethod::Chauvenet: return "chauvenet";
  }
  return "unknown";
}

SimMethod parse_sim_method(const std::string& name) {
  for (auto m : {SimMethod::Iir, SimMethod::IirHigh, SimMethod::Boxplot, SimMethod::Mad,
                 SimMethod::MeanSigma, SimMethod::Chauvenet})
    if (to_string(m) == name) return m;
  throw DomainError("unknown method '" + name + "'");
}

Detection run_method(SimMethod m, const Sample& sample, const MethodConfig& cfg) {
  switch (m) {
    case SimMethod::Iir: return detect_two_sided(sample, cfg.sens);
    case SimMethod::IirHigh: return detect_high_side(sample, cfg.sens);
    case SimMethod::Boxplot: return boxplot_detect(sample, cfg.baseline.whisker);
    case SimMethod::Mad: return mad_detect(sample, cfg.baseline.k, cfg.baseline.b);
    case SimMethod::MeanSigma: return mean_sigma_detect(sample, cfg.baseline.k);
    case SimMethod::Chauvenet: return chauvenet_detect(sample);
  }
  throw DomainError("unknown method");
}

namespace {

struct RepResult {
  double pct = 0.0;
  double recall = 0.0;
};

// Runs `task(i)` for i in [0, count) on up to `threads` workers.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
}

// One replication: every method on the same draws.
std::vector<RepResult> replicate(const SimScenario& scn, std::size_t rep, std::uint64_t stream,
                                 const std::vector<SimMethod>& methods, const MethodConfig& cfg) {
  auto draws = contaminated_draws(scn, rep, stream);
  std::vector<std::size_t> perm(draws.values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return draws.values[a] < draws.values[b]; });
  std::vector<double> sorted(perm.size());
  std::vector<bool> bad(perm.size());
  std::size_t total_bad = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted[i] = draws.values[perm[i]];
    bad[i] = draws.contaminant[perm[i]];
    total_bad += bad[i] ? 1 : 0;
  }
  const auto sample = Sample::from_sorted(std::move(sorted));
  const auto n = static_cast<double>(sample.size());

  std::vector<RepResult> out;
  out.reserve(methods.size());
  for (auto m : methods) {
    const auto det = run_method(m, sample, cfg);
    std::size_t hits = 0;
    for (auto idx : det.outlier_indices) hits += bad[idx] ? 1 : 0;
    RepResult r;
    r.pct = 100.0 * static_cast<double>(det.outlier_indices.size()) / n;
    r.recall = total_bad ? 100.0 * static_cast<double>(hits) / static_cast<double>(total_bad) : 0.0;
    out.push_back(r);
  }
  return out;
}

CurvePoint summarize(double x, SimMethod m, const std::vector<RepResult>& reps) {
  CurvePoint p;
  p.x = x;
  p.method = to_string(m);
  const auto count = static_cast<double>(reps.size());
  double sum = 0.0, recall = 0.0;
  for (const auto& r : reps) {
    sum += r.pct;
    recall += r.recall;
  }
  p.detected_pct = sum / count;
  p.recall_pct = recall / count;
  if (reps.size() > 1) {
    double ss = 0.0;
    for (const auto& r : reps) ss += (r.pct - p.detected_pct) * (r.pct - p.detected_pct);
    p.stderr_pct = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  return p;
}

// Runs every (point, rep) cell and reduces in index order.
std::vector<CurvePoint> run_grid(const std::vector<SimScenario>& scenarios, const std::vector<double>& xs,
                                 const std::vector<SimMethod>& methods, const MethodConfig& cfg,
                                 unsigned threads) {
  std::vector<std::size_t> offset(scenarios.size() + 1, 0);
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    scenarios[s].validate();
    offset[s + 1] = offset[s] + scenarios[s].reps;
  }
  std::vector<std::vector<RepResult>> cells(offset.back());
  parallel_for(cells.size(), threads, [&](std::size_t cell) {
    const auto s = static_cast<std::size_t>(
        std::upper_bound(offset.begin(), offset.end(), cell) - offset.begin() - 1);
    cells[cell] = replicate(scenarios[s], cell - offset[s], s, methods, cfg);
  });

  std::vector<CurvePoint> out;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<RepResult> per_rep;
      per_rep.reserve(scenarios[s].reps);
      for (auto c = offset[s]; c < offset[s + 1]; ++c) per_rep.push_back(cells[c][mi]);
      out.push_back(summarize(xs[s], methods[mi], per_rep));
    }
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> breakdown_curve(const SimScenario& base, const std::vector<double>& fractions,
                                        const std::vector<SimMethod>& methods, const MethodConfig& cfg,
                                        unsigned threads) {
  std::vector<SimScenario> scenarios;
  std::vector<double> xs;
  for (double f : fractions) {
    auto scn = base;
    scn.contamination = f;
    scenarios.push_back(scn);
    xs.push_back(std::round(f * 1e8) / 1e6);
  }
  return run_grid(scenarios, xs, methods, cfg, threads);
}

std::vector<CurvePoint> pure_normal_curve(const std::vector<std::size_t>& sizes,
                                          const std::vector<SimMethod>& methods, std::size_t reps,
                                          std::uint64_t master_seed, const MethodConfig& cfg,
                                          unsigned threads) {
  std::vector<SimScenario> scenarios;
  std::vector<double> xs;
  for (auto n : sizes) {
    SimScenario scn;
    scn.n = n;
    scn.contamination = 0.0;
    scn.reps = reps;
    scn.master_seed = master_seed;
    scenarios.push_back(scn);
    xs.push_back(static_cast<double>(n));
  }
  return run_grid(scenarios, xs, methods, cfg, threads);
}

std::vector<double> default_fractions() {
  std::vector<double> f;
  for (int i = 0; i < 50; ++i) f.push_back(i / 100.0);
  return f;
}

std::vector<std::size_t> default_sizes() { return {10, 50, 100, 500, 1000, 5000, 10000}; }

}  // namespace gapsense
