#ifndef RUZSA_METRIC_RUZSA_HPP_
#define RUZSA_METRIC_RUZSA_HPP_

// Separated point sets and the approximate injection
//
//   i(x, b) = (Delta^e_eps(b, f(x)), Delta^e_eps(b, g(x)))
//   i : Delta^e_eps(C, A) x B -> Delta^e_eps(B, C) x Delta^e_eps(B, A)
//
// on mu-separated data, with point equality meaning distance <= tolerance.
//
// Collision search sorts by the first coordinate and assumes
// |p[0] - q[0]| <= d(p, q), which holds for the Euclidean norm and for the
// Heisenberg gauge distance (N >= |horizontal part|).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ruzsa/dilation_spaces.hpp"
#include "ruzsa/errors.hpp"
#include "ruzsa/random.hpp"

namespace ruzsa {

template <typename Scalar>
struct ClosestPair {
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar distance = std::numeric_limits<Scalar>::infinity();
};

/// A pair of distinct points closer than mu in one of the hypothesis sets.
template <typename Scalar>
struct HypothesisViolation {
  std::string set;  // "B" or "Delta(C,A)"
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar distance = 0;
  Scalar mu = 0;

  std::string describe() const {
    return "set " + set + " is not mu-separated: points " + std::to_string(i) + " and " +
           std::to_string(j) + " at distance " + std::to_string(static_cast<double>(distance)) +
           " < mu = " + std::to_string(static_cast<double>(mu));
  }
};

class HypothesisError : public Error {
 public:
  using Error::Error;
};

template <typename Scalar>
class SeparationHypothesisError : public HypothesisError {
 public:
  explicit SeparationHypothesisError(HypothesisViolation<Scalar> v)
      : HypothesisError(v.describe()), violation_(std::move(v)) {}
  const HypothesisViolation<Scalar>& violation() const { return violation_; }

 private:
  HypothesisViolation<Scalar> violation_;
};

/// Tolerance clustering could not tell nearby points apart cleanly.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// The sampler ran out of draws; carries what it found.
template <typename Scalar>
class PartialSetError : public Error {
 public:
  PartialSetError(const std::string& what, std::vector<Point<Scalar>> points)
      : Error(what), points_(std::move(points)) {}
  const std::vector<Point<Scalar>>& points() const { return points_; }

 private:
  std::vector<Point<Scalar>> points_;
};

/// Closest pair of points (i < j); nullopt for fewer than two points.
template <MetricDilationSpace Space>
std::optional<ClosestPair<typename Space::ScalarType>> closest_pair(
    const Space& space, std::span<const typename Space::PointType> points) {
  if (points.size() < 2) return std::nullopt;
  ClosestPair<typename Space::ScalarType> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto dij = space.distance(points[i], points[j]);
      if (dij < best.distance) best = {i, j, dij};
    }
  }
  return best;
}

/// Minimum pairwise distance; +infinity for at most one point.
template <MetricDilationSpace Space>
typename Space::ScalarType separation(const Space& space,
                                      std::span<const typename Space::PointType> points) {
  const auto pair = closest_pair(space, points);
  return pair ? pair->distance : std::numeric_limits<typename Space::ScalarType>::infinity();
}

/// Points with pairwise distance >= mu, i.e. d(x, y) < mu implies x = y.
template <MetricDilationSpace Space>
class SeparatedSet {
 public:
  using Scalar = typename Space::ScalarType;
  using PointType = typename Space::PointType;

  SeparatedSet(Space space, std::vector<PointType> points, Scalar mu)
      : space_(std::move(space)), points_(std::move(points)), mu_(mu) {
    if (!(mu_ > Scalar(0))) throw InvalidArgument("mu must be positive");
    for (std::size_t i = 0; i < points_.size(); ++i) require_point(space_, points_[i], "in set");
    if (const auto pair = closest_pair<Space>(space_, points_); pair && pair->distance < mu_) {
      throw SeparationHypothesisError<Scalar>({"points", pair->i, pair->j, pair->distance, mu_});
    }
  }

  const Space& space() const { return space_; }
  const std::vector<PointType>& points() const { return points_; }
  Scalar mu() const { return mu_; }
  std::size_t size() const { return points_.size(); }

 private:
  Space space_;
  std::vector<PointType> points_;
  Scalar mu_;
};

// ---------------------------------------------------------------------------
// Tolerance clustering.

template <typename PointType, typename Scalar>
struct PointCluster {
  PointType representative;
  /// Input indices, ascending; the representative is members.front().
  std::vector<std::size_t> members;
  Scalar diameter = 0;
};

/// Single-linkage clusters of the graph "distance <= tolerance". Throws
/// AmbiguityError when a cluster is wider than 2 * tolerance while two
/// clusters come closer than 4 * tolerance.
template <MetricDilationSpace Space>
std::vector<PointCluster<typename Space::PointType, typename Space::ScalarType>> cluster_points(
    const Space& space, std::span<const typename Space::PointType> points,
    typename Space::ScalarType tolerance) {
  using Scalar = typename Space::ScalarType;
  if (!(tolerance > Scalar(0))) throw InvalidArgument("tolerance must be positive");
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<Scalar> dist(n * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar dij = space.distance(points[i], points[j]);
      dist[i * n + j] = dist[j * n + i] = dij;
      if (dij <= tolerance) {
        const std::size_t ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }

  std::vector<PointCluster<typename Space::PointType, Scalar>> clusters;
  std::vector<std::size_t> cluster_of(n);
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = clusters.size();
      clusters.push_back({points[i], {}, Scalar(0)});
    }
    cluster_of[i] = slot[root];
    clusters[slot[root]].members.push_back(i);
  }

  Scalar widest = 0;
  Scalar closest_gap = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar dij = dist[i * n + j];
      if (cluster_of[i] == cluster_of[j]) {
        auto& cl = clusters[cluster_of[i]];
        cl.diameter = std::max(cl.diameter, dij);
        widest = std::max(widest, dij);
      } else {
        closest_gap = std::min(closest_gap, dij);
      }
    }
  }
  if (widest > Scalar(2) * tolerance && closest_gap < Scalar(4) * tolerance) {
    throw AmbiguityError("tolerance clustering is ambiguous: cluster diameter " +
                         std::to_string(static_cast<double>(widest)) + " > 2*tolerance and gap " +
                         std::to_string(static_cast<double>(closest_gap)) + " < 4*tolerance");
  }
  return clusters;
}

template <typename PointType, typename Scalar>
struct ApproxDeltaSet {
  /// Cluster members index the |A| x |B| pairs row-major: k = i * |B| + j.
  std::vector<PointCluster<PointType, Scalar>> clusters;
  std::size_t b_size = 0;

  std::size_t size() const { return clusters.size(); }
  std::pair<std::size_t, std::size_t> pair_of(std::size_t k) const {
    return {k / b_size, k % b_size};
  }
};

template <MetricDilationSpace Space>
ApproxDeltaSet<typename Space::PointType, typename Space::ScalarType> approx_delta_clusters(
    const Space& space, const typename Space::PointType& e, typename Space::ScalarType eps,
    std::span<const typename Space::PointType> a, std::span<const typename Space::PointType> b,
    typename Space::ScalarType tolerance) {
  require_unit_eps(eps);
  if (a.empty() || b.empty()) throw EmptySetError("approximate difference sets need non-empty inputs");
  std::vector<typename Space::PointType> image;
  image.reserve(a.size() * b.size());
  for (const auto& ai : a) {
    for (const auto& bj : b) image.push_back(approx_difference(space, e, eps, ai, bj));
  }
  ApproxDeltaSet<typename Space::PointType, typename Space::ScalarType> result;
  result.clusters =
      cluster_points(space, std::span<const typename Space::PointType>(image), tolerance);
  result.b_size = b.size();
  return result;
}

/// { Delta^e_eps(a, b) : a in A, b in B } deduplicated up to tolerance.
template <MetricDilationSpace Space>
std::vector<typename Space::PointType> approx_delta_set(
    const Space& space, const typename Space::PointType& e, typename Space::ScalarType eps,
    std::span<const typename Space::PointType> a, std::span<const typename Space::PointType> b,
    typename Space::ScalarType tolerance) {
  const auto set = approx_delta_clusters(space, e, eps, a, b, tolerance);
  std::vector<typename Space::PointType> points;
  points.reserve(set.size());
  for (const auto& cl : set.clusters) points.push_back(cl.representative);
  return points;
}

// ---------------------------------------------------------------------------
// Metric injection.

template <typename PointType>
struct MetricInjectionEntry {
  std::size_t x_index;  // cluster of Delta^e_eps(C, A)
  std::size_t b_index;
  std::size_t f_index;  // into C
  std::size_t g_index;  // into A
  PointType x;
  PointType b;
  PointType f;
  PointType g;
  PointType c;
  PointType d;
};

template <typename Scalar>
struct MetricCollision {
  std::size_t first;  // entry indices, first < second
  std::size_t second;
  Scalar distance_c;
  Scalar distance_d;
};

template <typename PointType, typename Scalar>
struct MetricInjectionWitness {
  /// Ordered by (x_index, b_index).
  std::vector<MetricInjectionEntry<PointType>> entries;
  Scalar eps = 0;
  Scalar mu = 0;
  Scalar tolerance = 0;
  std::size_t domain_size = 0;
  std::size_t b_size = 0;
  bool is_injective = true;
  std::optional<MetricCollision<Scalar>> collision;
};

namespace detail {

template <typename PointType>
bool lex_less(const PointType& p1, const PointType& p2, const PointType& q1, const PointType& q2) {
  for (Eigen::Index i = 0; i < p1.size(); ++i) {
    if (p1[i] != q1[i]) return p1[i] < q1[i];
  }
  for (Eigen::Index i = 0; i < p2.size(); ++i) {
    if (p2[i] != q2[i]) return p2[i] < q2[i];
  }
  return false;
}

template <MetricDilationSpace Space>
std::optional<HypothesisViolation<typename Space::ScalarType>> separation_violation(
    const Space& space, std::span<const typename Space::PointType> points,
    typename Space::ScalarType mu, const char* label) {
  const auto pair = closest_pair(space, points);
  if (pair && pair->distance < mu) {
    return HypothesisViolation<typename Space::ScalarType>{label, pair->i, pair->j, pair->distance, mu};
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks that B and Delta^e_eps(C, A) are mu-separated at this eps.
template <MetricDilationSpace Space>
std::optional<HypothesisViolation<typename Space::ScalarType>> check_separation_hypothesis(
    const Space& space, const typename Space::PointType& e, typename Space::ScalarType eps,
    std::span<const typename Space::PointType> a, std::span<const typename Space::PointType> b,
    std::span<const typename Space::PointType> c, typename Space::ScalarType mu,
    typename Space::ScalarType tolerance) {
  if (auto v = detail::separation_violation(space, b, mu, "B")) return v;
  const auto delta_ca = approx_delta_set(space, e, eps, c, a, tolerance);
  return detail::separation_violation(space, std::span<const typename Space::PointType>(delta_ca),
                                      mu, "Delta(C,A)");
}

/// Builds i on Delta^e_eps(C, A) x B. Throws SeparationHypothesisError when
/// B or Delta^e_eps(C, A) is not mu-separated.
template <MetricDilationSpace Space>
MetricInjectionWitness<typename Space::PointType, typename Space::ScalarType> metric_injection(
    const Space& space, const typename Space::PointType& e, typename Space::ScalarType eps,
    std::span<const typename Space::PointType> a, std::span<const typename Space::PointType> b,
    std::span<const typename Space::PointType> c, typename Space::ScalarType mu,
    typename Space::ScalarType tolerance) {
  using Scalar = typename Space::ScalarType;
  using PointType = typename Space::PointType;
  require_unit_eps(eps);
  if (!(mu > Scalar(0))) throw InvalidArgument("mu must be positive");
  if (!(tolerance > Scalar(0) && tolerance <= mu / Scalar(4))) {
    throw InvalidArgument("tolerance must lie in (0, mu/4]");
  }
  if (a.empty() || b.empty() || c.empty()) throw EmptySetError("A, B and C must be non-empty");
  require_point(space, e, "e");

  if (auto v = detail::separation_violation(space, b, mu, "B")) {
    throw SeparationHypothesisError<Scalar>(*v);
  }
  const auto delta_ca = approx_delta_clusters(space, e, eps, c, a, tolerance);
  {
    std::vector<PointType> reps;
    for (const auto& cl : delta_ca.clusters) reps.push_back(cl.representative);
    if (auto v = detail::separation_violation(space, std::span<const PointType>(reps), mu,
                                              "Delta(C,A)")) {
      throw SeparationHypothesisError<Scalar>(*v);
    }
  }

  MetricInjectionWitness<PointType, Scalar> w;
  w.eps = eps;
  w.mu = mu;
  w.tolerance = tolerance;
  w.domain_size = delta_ca.size();
  w.b_size = b.size();
  w.entries.reserve(w.domain_size * w.b_size);
  for (std::size_t xi = 0; xi < delta_ca.size(); ++xi) {
    const auto& cluster = delta_ca.clusters[xi];
    // Section: lexicographically smallest generating pair (c, a) by coordinates.
    auto best = delta_ca.pair_of(cluster.members.front());
    for (const std::size_t k : cluster.members) {
      const auto cand = delta_ca.pair_of(k);
      if (detail::lex_less(c[cand.first], a[cand.second], c[best.first], a[best.second])) {
        best = cand;
      }
    }
    const PointType& f = c[best.first];
    const PointType& g = a[best.second];
    for (std::size_t bi = 0; bi < b.size(); ++bi) {
      w.entries.push_back({xi, bi, best.first, best.second, cluster.representative, b[bi], f, g,
                           approx_difference(space, e, eps, b[bi], f),
                           approx_difference(space, e, eps, b[bi], g)});
    }
  }

  std::vector<std::size_t> order(w.entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return w.entries[i].c[0] < w.entries[j].c[0];
  });
  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto& p = w.entries[order[s]];
    for (std::size_t t = s + 1; t < order.size(); ++t) {
      const auto& q = w.entries[order[t]];
      if (q.c[0] - p.c[0] > tolerance) break;
      const Scalar dc = space.distance(p.c, q.c);
      if (dc > tolerance) continue;
      const Scalar dd = space.distance(p.d, q.d);
      if (dd > tolerance) continue;
      const std::size_t lo = std::min(order[s], order[t]);
      const std::size_t hi = std::max(order[s], order[t]);
      if (!w.collision || std::make_pair(lo, hi) < std::make_pair(w.collision->first,
                                                                   w.collision->second)) {
        w.collision = MetricCollision<Scalar>{lo, hi, dc, dd};
      }
    }
  }
  w.is_injective = !w.collision.has_value();
  return w;
}

/// Largest distance from x to Delta^{b(eps)}_eps(c, d), b(eps) = delta^e_eps b.
/// Zero up to rounding: the approximate axiom 1 recovers x from (c, d) and b.
template <MetricDilationSpace Space, typename Witness>
typename Space::ScalarType reconstruction_residual(const Space& space,
                                                   const typename Space::PointType& e,
                                                   const Witness& w) {
  typename Space::ScalarType worst = 0;
  for (const auto& en : w.entries) {
    const auto base = space.dilate(e, w.eps, en.b);
    worst = std::max(worst, space.distance(en.x, approx_difference(space, base, w.eps, en.c, en.d)));
  }
  return worst;
}

/// Largest distance from x to the limit difference Delta^e(c, d).
template <MetricDilationSpace Space, typename Witness>
typename Space::ScalarType limit_reconstruction_gap(const Space& space,
                                                    const typename Space::PointType& e,
                                                    const Witness& w) {
  typename Space::ScalarType worst = 0;
  for (const auto& en : w.entries) {
    worst = std::max(worst, space.distance(en.x, space.limit_difference(e, en.c, en.d)));
  }
  return worst;
}

/// Largest distance between an entry and the same entry of the exact
/// injection (Delta^e(b, f), Delta^e(b, g)) built with the same section.
template <MetricDilationSpace Space, typename Witness>
typename Space::ScalarType limit_entry_gap(const Space& space, const typename Space::PointType& e,
                                           const Witness& w) {
  typename Space::ScalarType worst = 0;
  for (const auto& en : w.entries) {
    worst = std::max(worst, space.distance(en.c, space.limit_difference(e, en.b, en.f)));
    worst = std::max(worst, space.distance(en.d, space.limit_difference(e, en.b, en.g)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Threshold sweep.

template <typename Scalar>
struct ThresholdRow {
  Scalar eps;
  bool hypothesis_ok;
  bool injective;
  std::optional<HypothesisViolation<Scalar>> violation;
  std::optional<MetricCollision<Scalar>> collision;
};

template <typename Scalar>
struct ThresholdReport {
  Scalar mu = 0;
  std::vector<Scalar> eps_grid;
  std::vector<ThresholdRow<Scalar>> rows;  // one per grid entry
  /// Largest grid eps with the hypothesis satisfied and i injective; 0 if none.
  Scalar empirical_threshold = 0;
};

template <typename Scalar>
void require_descending_grid(std::span<const Scalar> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_unit_eps(grid[i]);
    if (i > 0 && !(grid[i] < grid[i - 1])) throw InvalidArgument("eps grid must be strictly descending");
  }
}

/// Sweeps metric_injection over the grid at tolerance mu/4. Hypothesis
/// failures are recorded in the rows, never thrown.
template <MetricDilationSpace Space>
ThresholdReport<typename Space::ScalarType> estimate_threshold(
    const Space& space, const typename Space::PointType& e,
    std::span<const typename Space::PointType> a, std::span<const typename Space::PointType> b,
    std::span<const typename Space::PointType> c, typename Space::ScalarType mu,
    std::span<const typename Space::ScalarType> eps_grid) {
  using Scalar = typename Space::ScalarType;
  require_descending_grid(eps_grid);
  ThresholdReport<Scalar> report;
  report.mu = mu;
  report.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  for (const Scalar eps : eps_grid) {
    ThresholdRow<Scalar> row{eps, true, false, std::nullopt, std::nullopt};
    try {
      const auto w = metric_injection(space, e, eps, a, b, c, mu, mu / Scalar(4));
      row.injective = w.is_injective;
      row.collision = w.collision;
    } catch (const SeparationHypothesisError<Scalar>& err) {
      row.hypothesis_ok = false;
      row.violation = err.violation();
    }
    if (row.hypothesis_ok && row.injective && eps > report.empirical_threshold) {
      report.empirical_threshold = eps;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// start, start*ratio, ..., count terms.
template <typename Scalar>
std::vector<Scalar> geometric_grid(Scalar start, Scalar ratio, std::size_t count) {
  std::vector<Scalar> grid;
  Scalar v = start;
  for (std::size_t i = 0; i < count; ++i, v *= ratio) grid.push_back(v);
  return grid;
}

// ---------------------------------------------------------------------------
// Sampling.

/// Greedy rejection sampling in the ball of `radius` around `center`: keep
/// candidates at distance >= mu from everything kept, stop at `count` or after
/// 10000 * count draws (PartialSetError).
template <MetricDilationSpace Space>
SeparatedSet<Space> sample_separated_set(const Space& space,
                                         const typename Space::PointType& center,
                                         typename Space::ScalarType radius,
                                         typename Space::ScalarType mu, std::size_t count,
                                         Rng& rng) {
  using Scalar = typename Space::ScalarType;
  if (!(mu > Scalar(0))) throw InvalidArgument("mu must be positive");
  if (!(radius > Scalar(0))) throw InvalidArgument("radius must be positive");
  if (count < 1) throw InvalidArgument("count must be at least 1");
  require_point(space, center, "center");
  std::vector<typename Space::PointType> kept;
  const std::size_t budget = 10000 * count;
  for (std::size_t draw = 0; draw < budget && kept.size() < count; ++draw) {
    auto p = space.sample_ball(center, radius, rng);
    const bool far = std::all_of(kept.begin(), kept.end(),
                                 [&](const auto& q) { return space.distance(p, q) >= mu; });
    if (far) kept.push_back(std::move(p));
  }
  if (kept.size() < count) {
    throw PartialSetError<Scalar>("sampler kept " + std::to_string(kept.size()) + " of " +
                                      std::to_string(count) + " points",
                                  std::move(kept));
  }
  return SeparatedSet<Space>(space, std::move(kept), mu);
}

template <MetricDilationSpace Space>
SeparatedSet<Space> sample_separated_set(const Space& space,
                                         const typename Space::PointType& center,
                                         typename Space::ScalarType radius,
                                         typename Space::ScalarType mu, std::size_t count,
                                         std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_separated_set(space, center, radius, mu, count, rng);
}

template <typename PointType>
struct PointTriple {
  std::vector<PointType> a;
  std::vector<PointType> b;
  std::vector<PointType> c;
};

/// Draws B and C as mu-separated sets, then grows A greedily so that A is
/// mu-separated and Delta^e_eps(C, A) stays mu-separated at every grid eps.
/// The result satisfies the separation hypothesis on the whole grid.
template <MetricDilationSpace Space>
PointTriple<typename Space::PointType> sample_separated_triple(
    const Space& space, const typename Space::PointType& e, typename Space::ScalarType radius,
    typename Space::ScalarType mu, std::array<std::size_t, 3> sizes,
    std::span<const typename Space::ScalarType> eps_grid, std::uint64_t seed) {
  using Scalar = typename Space::ScalarType;
  using PointType = typename Space::PointType;
  require_descending_grid(eps_grid);
  Rng rng = make_rng(seed);
  PointTriple<PointType> t;
  t.b = sample_separated_set(space, e, radius, mu, sizes[1], rng).points();
  t.c = sample_separated_set(space, e, radius, mu, sizes[2], rng).points();
  if (sizes[0] < 1) throw InvalidArgument("count must be at least 1");

  // images[g] holds Delta^e_eps(C, A) at eps_grid[g] for the A kept so far.
  std::vector<std::vector<PointType>> images(eps_grid.size());
  std::vector<PointType> fresh;
  const std::size_t budget = 10000 * sizes[0];
  for (std::size_t draw = 0; draw < budget && t.a.size() < sizes[0]; ++draw) {
    PointType cand = space.sample_ball(e, radius, rng);
    bool ok = std::all_of(t.a.begin(), t.a.end(),
                          [&](const auto& q) { return space.distance(cand, q) >= mu; });
    std::vector<std::vector<PointType>> additions(eps_grid.size());
    for (std::size_t g = 0; ok && g < eps_grid.size(); ++g) {
      fresh.clear();
      for (const auto& ci : t.c) fresh.push_back(approx_difference(space, e, eps_grid[g], ci, cand));
      for (std::size_t i = 0; ok && i < fresh.size(); ++i) {
        for (std::size_t j = i + 1; ok && j < fresh.size(); ++j) {
          ok = space.distance(fresh[i], fresh[j]) >= mu;
        }
        for (std::size_t j = 0; ok && j < images[g].size(); ++j) {
          ok = space.distance(fresh[i], images[g][j]) >= mu;
        }
      }
      additions[g] = fresh;
    }
    if (!ok) continue;
    t.a.push_back(std::move(cand));
    for (std::size_t g = 0; g < eps_grid.size(); ++g) {
      images[g].insert(images[g].end(), additions[g].begin(), additions[g].end());
    }
  }
  if (t.a.size() < sizes[0]) {
    throw PartialSetError<Scalar>("hypothesis-conditioned sampler kept " +
                                      std::to_string(t.a.size()) + " of " +
                                      std::to_string(sizes[0]) + " points of A",
                                  std::move(t.a));
  }
  return t;
}

}  // namespace ruzsa

#endif  // RUZSA_METRIC_RUZSA_HPP_
