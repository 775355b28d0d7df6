#include "gapsense/oscillator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace gapsense {

void validate_points(const PointSet& points) {
  if (points.rows() < 2) throw SizeError("need at least two points");
  if (!points.allFinite()) {
    for (Eigen::Index i = 0; i < points.rows(); ++i)
      if (!points.row(i).allFinite())
        throw DataError("non-finite coordinate at point " + std::to_string(i + 1));
  }
}

bool PartnerSet::contains(std::size_t id) const {
  return std::binary_search(partners.begin(), partners.end(), id);
}

PartnerSet partner_set(const DistanceMatrix& dm, std::size_t owner, const Sensitivity& sens,
                       std::size_t min_partners) {
  const auto n = static_cast<std::size_t>(dm.rows());
  if (owner < 1 || owner > n) throw DomainError("unknown point id " + std::to_string(owner));
  if (min_partners == 0) throw DomainError("min_partners must be at least 1");
  if (n < min_partners + 1)
    throw SizeError("partner search needs at least min_partners + 1 points");

  const auto row = static_cast<Eigen::Index>(owner - 1);
  std::vector<std::size_t> order;
  order.reserve(n - 1);
  for (std::size_t j = 1; j <= n; ++j)
    if (j != owner) order.push_back(j);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dm(row, static_cast<Eigen::Index>(a - 1)) < dm(row, static_cast<Eigen::Index>(b - 1));
  });

  // Augmented series: a[0] = 0 (the owner itself), a[t] = t-th nearest distance.
  std::vector<double> a(n, 0.0);
  for (std::size_t t = 1; t < n; ++t) a[t] = dm(row, static_cast<Eigen::Index>(order[t - 1] - 1));

  PartnerSet ps;
  ps.owner = owner;
  ps.radius = std::numeric_limits<double>::infinity();
  const double range = a[n - 1];
  std::size_t border = n;
  if (range > 0.0) {
    double max_prev = a[1] - a[0];
    for (std::size_t t = 2; t < n; ++t) {
      const double gap = a[t] - a[t - 1];
      // gap > 0 keeps "strictly nearer than radius" exact when c = 0.
      if (t >= min_partners + 1 && gap > 0.0 &&
          iir_closed_form(gap, max_prev, n, range) >= sens.threshold()) {
        border = t;
        break;
      }
      max_prev = std::max(max_prev, gap);
    }
  }
  if (border < n) {
    ps.border_found = true;
    ps.radius = a[border];
  }
  ps.partners.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(border - 1));
  std::sort(ps.partners.begin(), ps.partners.end());
  return ps;
}

std::vector<PartnerSet> all_partner_sets(const DistanceMatrix& dm, const Sensitivity& sens,
                                         std::size_t min_partners) {
  std::vector<PartnerSet> out;
  const auto n = static_cast<std::size_t>(dm.rows());
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(partner_set(dm, i, sens, min_partners));
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<char>>;

Adjacency adjacency_of(std::span<const PartnerSet> sets) {
  const auto n = sets.size();
  Adjacency adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sets[i].owner != i + 1)
      throw DomainError("partner sets must be ordered by owner id");
    for (auto j : sets[i].partners) {
      if (j < 1 || j > n || j == i + 1) throw DomainError("invalid partner id");
      adj[i][j - 1] = 1;
    }
  }
  return adj;
}

ResonanceRun resonate_on(const Adjacency& adj, std::size_t seed) {
  const auto n = adj.size();
  std::vector<char> firing(n, 0);
  firing[seed - 1] = 1;

  ResonanceRun run;
  run.seed = seed;
  const std::size_t max_rounds = 4 * n;
  bool settled = false;
  std::vector<long> stimulus(n);
  std::vector<char> next(n);
  while (run.rounds < max_rounds) {
    std::fill(stimulus.begin(), stimulus.end(), 0);
    long active = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!firing[i]) continue;
      ++active;
      for (std::size_t j = 0; j < n; ++j) stimulus[j] += adj[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      const long senders = active - (firing[j] ? 1 : 0);
      const long net = 2 * stimulus[j] - senders;
      next[j] = net > 0 || (firing[j] && net == 0);
    }
    ++run.rounds;
    if (next == firing) {
      settled = true;
      break;
    }
    firing.swap(next);
  }

  for (std::size_t j = 0; j < n; ++j)
    if (firing[j]) run.fired.push_back(j + 1);
  run.silent = !settled || !firing[seed - 1] || run.fired.size() < 2;
  if (run.silent) run.fired = {seed};
  return run;
}

}  // namespace

ResonanceRun resonate(std::span<const PartnerSet> partner_sets, std::size_t seed) {
  if (seed < 1 || seed > partner_sets.size())
    throw DomainError("unknown seed id " + std::to_string(seed));
  return resonate_on(adjacency_of(partner_sets), seed);
}

ClusterPartition cluster_all(std::span<const PartnerSet> partner_sets,
                             std::span<const std::size_t> master_order) {
  const auto n = partner_sets.size();
  const auto adj = adjacency_of(partner_sets);

  std::vector<std::size_t> order(master_order.begin(), master_order.end());
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{1});
  }
  {
    auto check = order;
    std::sort(check.begin(), check.end());
    bool ok = check.size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) ok = check[i] == i + 1;
    if (!ok) throw DomainError("master_order must be a permutation of 1..n");
  }

  ClusterPartition out;
  out.runs.resize(n);
  for (auto seed : order) out.runs[seed - 1] = resonate_on(adj, seed);

  // Votes per distinct fired set, keyed by the set itself.
  struct Vote {
    std::size_t count = 0;
    std::size_t first_seed = 0;
  };
  std::map<std::vector<std::size_t>, Vote> votes;
  for (const auto& run : out.runs) {
    if (run.silent) {
      out.silent_ids.push_back(run.seed);
      continue;
    }
    auto& v = votes[run.fired];
    if (v.count++ == 0) v.first_seed = run.seed;  // runs are visited in id order
  }

  std::vector<const std::vector<std::size_t>*> choice(n, nullptr);
  for (const auto& [set, vote] : votes) {
    for (auto id : set) {
      const auto*& cur = choice[id - 1];
      if (cur == nullptr) {
        cur = &set;
        continue;
      }
      const auto& best = votes.at(*cur);
      if (vote.count > best.count || (vote.count == best.count && vote.first_seed < best.first_seed))
        cur = &set;
    }
  }

  std::map<const std::vector<std::size_t>*, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i)
    if (choice[i]) members[choice[i]].push_back(i + 1);

  for (const auto& [set, ids] : members) {
    ClusterSummary c;
    c.members = ids;
    for (auto id : ids) {
      const auto& run = out.runs[id - 1];
      if (run.silent) c.silent_members.push_back(id);
      else if (run.fired == *set) ++c.right_count;
    }
    out.clusters.push_back(std::move(c));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const auto& a, const auto& b) { return a.members.front() < b.members.front(); });

  out.labels.assign(n, std::nullopt);
  for (std::size_t k = 0; k < out.clusters.size(); ++k) {
    out.clusters[k].id = k + 1;
    for (auto id : out.clusters[k].members) out.labels[id - 1] = k + 1;
  }
  return out;
}

ClusterPartition oscillator_cluster(const PointSet& points, const Sensitivity& sens,
                                    std::size_t min_partners) {
  const auto dm = pairwise_distances(points);
  const auto sets = all_partner_sets(dm, sens, min_partners);
  return cluster_all(sets);
}

}  // namespace gapsense
