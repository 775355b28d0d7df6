#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gapsense/iir.hpp"
#include "gapsense/sample.hpp"

namespace gapsense {

/// Points as rows (n x d). Point ids are 1-based row numbers.
using PointSet = Eigen::MatrixXd;
/// Symmetric n x n distance matrix with zero diagonal.
using DistanceMatrix = Eigen::MatrixXd;

struct Euclidean {
  template <typename A, typename B>
  double operator()(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    return (a - b).norm();
  }
};

/// Throws DataError for non-finite coordinates and SizeError for fewer than two points.
void validate_points(const PointSet& points);

/// Pairwise distances under `metric`; only the upper triangle is evaluated and mirrored.
template <typename Metric = Euclidean>
DistanceMatrix pairwise_distances(const PointSet& points, Metric metric = {}) {
  validate_points(points);
  const auto n = points.rows();
  DistanceMatrix dm = DistanceMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = metric(points.row(i), points.row(j));
      dm(i, j) = d;
      dm(j, i) = d;
    }
  }
  return dm;
}

/// Neighbours of one point accepted as consistent by a one-sided expanding
/// scan over its sorted distance series (with itself at distance 0 first).
struct PartnerSet {
  std::size_t owner = 0;               // 1-based
  std::vector<std::size_t> partners;   // 1-based, ascending
  double radius = 0.0;                 // partners are strictly nearer than this
  bool border_found = false;

  [[nodiscard]] bool contains(std::size_t id) const;
  friend bool operator==(const PartnerSet&, const PartnerSet&) = default;
};

/// `owner` is 1-based. Throws SizeError when n < min_partners + 1 and
/// DomainError for an unknown owner or min_partners == 0.
PartnerSet partner_set(const DistanceMatrix& dm, std::size_t owner, const Sensitivity& sens = {},
                       std::size_t min_partners = 3);

std::vector<PartnerSet> all_partner_sets(const DistanceMatrix& dm, const Sensitivity& sens = {},
                                         std::size_t min_partners = 3);

/// Outcome of seeding one cell.
struct ResonanceRun {
  std::size_t seed = 0;
  std::vector<std::size_t> fired;  // 1-based, ascending
  bool silent = false;
  std::size_t rounds = 0;

  friend bool operator==(const ResonanceRun&, const ResonanceRun&) = default;
};

/// Propagates firing from `seed` (1-based) through the partner sets.
///
/// Every firing cell sends +1 to each of its partners and -1 to every other
/// cell. Updates are synchronous: a cell fires next round when its net input
/// is positive, and a firing cell keeps firing while its net input is not
/// negative. The run ends at a fixpoint. It is silent when the seed has
/// dropped out of the final firing set (no resonance came back to it), when
/// fewer than two cells fire, or when no fixpoint is reached within 4n rounds.
ResonanceRun resonate(std::span<const PartnerSet> partner_sets, std::size_t seed);

struct ClusterSummary {
  std::size_t id = 0;                    // 1-based, ordered by smallest member
  std::vector<std::size_t> members;
  std::size_t right_count = 0;           // members whose own run fired exactly this cluster's set
  std::vector<std::size_t> silent_members;

  [[nodiscard]] double right_fraction() const {
    return members.empty() ? 0.0 : static_cast<double>(right_count) / static_cast<double>(members.size());
  }
  friend bool operator==(const ClusterSummary&, const ClusterSummary&) = default;
};

struct ClusterPartition {
  std::vector<std::optional<std::size_t>> labels;  // per point (index = id - 1)
  std::vector<std::size_t> silent_ids;
  std::vector<ClusterSummary> clusters;
  std::vector<ResonanceRun> runs;                  // per seed, index = id - 1

  friend bool operator==(const ClusterPartition&, const ClusterPartition&) = default;
};

/// Seeds every cell (in `master_order`, identity when empty) and combines the
/// runs: each point takes the fired set that contains it most often, ties
/// going to the set first produced by the smallest seed id.
ClusterPartition cluster_all(std::span<const PartnerSet> partner_sets,
                             std::span<const std::size_t> master_order = {});

/// Convenience pipeline: distances, partner sets, combined clustering.
ClusterPartition oscillator_cluster(const PointSet& points, const Sensitivity& sens = {},
                                    std::size_t min_partners = 3);

}  // namespace gapsense
