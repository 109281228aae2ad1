#ifndef RUZSA_DILATION_SPACES_HPP_
#define RUZSA_DILATION_SPACES_HPP_

// Metric spaces with dilations (X, d, delta). Two conical instances:
// Euclidean R^n with affine contractions and the first Heisenberg group with
// its intrinsic dilations and a Koranyi-type homogeneous gauge.
//
// The approximate difference based at e is
//
//   Delta^e_eps(a, b) = delta^{delta^e_eps a}_{1/eps} delta^e_eps b,
//
// which tends to the conical-group difference Delta^e(a, b) as eps -> 0.

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ruzsa/errors.hpp"
#include "ruzsa/random.hpp"

namespace ruzsa {

template <typename Scalar>
using Point = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using PointXd = Point<double>;

template <typename Space>
concept MetricDilationSpace = requires(const Space& s, const typename Space::PointType& p,
                                       typename Space::ScalarType eps, Rng& rng) {
  typename Space::ScalarType;
  typename Space::PointType;
  { s.dim() } -> std::convertible_to<Eigen::Index>;
  { s.name() } -> std::convertible_to<std::string>;
  { s.base_point() } -> std::convertible_to<typename Space::PointType>;
  { s.distance(p, p) } -> std::convertible_to<typename Space::ScalarType>;
  { s.dilate(p, eps, p) } -> std::convertible_to<typename Space::PointType>;
  { s.limit_difference(p, p, p) } -> std::convertible_to<typename Space::PointType>;
  { s.sample_ball(p, eps, rng) } -> std::convertible_to<typename Space::PointType>;
};

template <typename Scalar = double>
class EuclideanSpace {
 public:
  using ScalarType = Scalar;
  using PointType = Point<Scalar>;

  explicit EuclideanSpace(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw InvalidArgument("Euclidean dimension must be positive");
  }

  Eigen::Index dim() const { return dim_; }
  std::string name() const { return "euclid:" + std::to_string(dim_); }
  PointType base_point() const { return PointType::Zero(dim_); }

  Scalar distance(const PointType& p, const PointType& q) const { return (p - q).norm(); }

  /// x + eps (y - x).
  PointType dilate(const PointType& x, Scalar eps, const PointType& y) const {
    return x + eps * (y - x);
  }

  /// e + (b - a).
  PointType limit_difference(const PointType& e, const PointType& a, const PointType& b) const {
    return e + (b - a);
  }

  /// Uniform in the closed ball of the given radius, by rejection from the cube.
  PointType sample_ball(const PointType& center, Scalar radius, Rng& rng) const {
    PointType u(dim_);
    do {
      for (Eigen::Index i = 0; i < dim_; ++i) u[i] = Scalar(uniform_real(rng, -1.0, 1.0));
    } while (u.squaredNorm() > Scalar(1));
    return center + radius * u;
  }

 private:
  Eigen::Index dim_;
};

/// H(1) in exponential coordinates (x, y, z):
///   (x,y,z)(x',y',z') = (x+x', y+y', z+z' + (x y' - y x')/2).
template <typename Scalar = double>
class HeisenbergSpace {
 public:
  using ScalarType = Scalar;
  using PointType = Point<Scalar>;

  Eigen::Index dim() const { return 3; }
  std::string name() const { return "heis1"; }
  PointType base_point() const { return PointType::Zero(3); }

  static PointType multiply(const PointType& p, const PointType& q) {
    PointType r(3);
    r << p[0] + q[0], p[1] + q[1], p[2] + q[2] + (p[0] * q[1] - p[1] * q[0]) / Scalar(2);
    return r;
  }

  static PointType inverse(const PointType& p) { return -p; }

  /// ((x^2 + y^2)^2 + 16 z^2)^(1/4); N(delta_eps m) = eps N(m).
  static Scalar gauge(const PointType& p) {
    using std::sqrt;
    const Scalar r2 = p[0] * p[0] + p[1] * p[1];
    return sqrt(sqrt(r2 * r2 + Scalar(16) * p[2] * p[2]));
  }

  /// Dilation at the identity, (eps x, eps y, eps^2 z). A group automorphism.
  static PointType dilate_identity(Scalar eps, const PointType& p) {
    PointType r(3);
    r << eps * p[0], eps * p[1], eps * eps * p[2];
    return r;
  }

  /// Left-invariant: N(p^-1 q).
  Scalar distance(const PointType& p, const PointType& q) const {
    return gauge(multiply(inverse(p), q));
  }

  /// x delta_eps(x^-1 y).
  PointType dilate(const PointType& x, Scalar eps, const PointType& y) const {
    return multiply(x, dilate_identity(eps, multiply(inverse(x), y)));
  }

  /// e a^-1 b.
  PointType limit_difference(const PointType& e, const PointType& a, const PointType& b) const {
    return multiply(multiply(e, inverse(a)), b);
  }

  /// Uniform in the unit gauge ball (scaled and translated by `center`),
  /// rejection-sampled from the box [-1,1]^2 x [-1/4,1/4] that contains it.
  PointType sample_ball(const PointType& center, Scalar radius, Rng& rng) const {
    PointType u(3);
    do {
      u << Scalar(uniform_real(rng, -1.0, 1.0)), Scalar(uniform_real(rng, -1.0, 1.0)),
          Scalar(uniform_real(rng, -0.25, 0.25));
    } while (gauge(u) > Scalar(1));
    return multiply(center, dilate_identity(radius, u));
  }
};

/// Runtime-selected space, addressable as "euclid:n" or "heis1".
template <typename Scalar = double>
class DilationSpace {
 public:
  using ScalarType = Scalar;
  using PointType = Point<Scalar>;
  using Variant = std::variant<EuclideanSpace<Scalar>, HeisenbergSpace<Scalar>>;

  DilationSpace(EuclideanSpace<Scalar> s) : impl_(std::move(s)) {}  // NOLINT
  DilationSpace(HeisenbergSpace<Scalar> s) : impl_(std::move(s)) {}  // NOLINT

  const Variant& variant() const { return impl_; }
  bool is_heisenberg() const { return std::holds_alternative<HeisenbergSpace<Scalar>>(impl_); }

  Eigen::Index dim() const {
    return std::visit([](const auto& s) { return s.dim(); }, impl_);
  }
  std::string name() const {
    return std::visit([](const auto& s) { return s.name(); }, impl_);
  }
  PointType base_point() const {
    return std::visit([](const auto& s) { return s.base_point(); }, impl_);
  }
  Scalar distance(const PointType& p, const PointType& q) const {
    return std::visit([&](const auto& s) { return s.distance(p, q); }, impl_);
  }
  PointType dilate(const PointType& x, Scalar eps, const PointType& y) const {
    return std::visit([&](const auto& s) { return s.dilate(x, eps, y); }, impl_);
  }
  PointType limit_difference(const PointType& e, const PointType& a, const PointType& b) const {
    return std::visit([&](const auto& s) { return s.limit_difference(e, a, b); }, impl_);
  }
  PointType sample_ball(const PointType& center, Scalar radius, Rng& rng) const {
    return std::visit([&](const auto& s) { return s.sample_ball(center, radius, rng); }, impl_);
  }

 private:
  Variant impl_;
};

/// Throws InvalidArgument for anything but "euclid:<n>" (1 <= n <= 64) or "heis1".
DilationSpace<double> parse_space(std::string_view spec);

// ---------------------------------------------------------------------------

template <MetricDilationSpace Space>
void require_point(const Space& space, const typename Space::PointType& p, const char* label) {
  if (p.size() != space.dim()) {
    throw InvalidArgument(std::string("point ") + label + " has dimension " +
                          std::to_string(p.size()) + ", expected " + std::to_string(space.dim()));
  }
  if (!p.allFinite()) throw InvalidArgument(std::string("point ") + label + " is not finite");
}

template <typename Scalar>
void require_unit_eps(Scalar eps) {
  if (!(eps > Scalar(0) && eps <= Scalar(1))) {
    throw InvalidArgument("eps must lie in (0, 1]");
  }
}

/// Delta^e_eps(a, b). Returns b exactly at eps = 1.
template <MetricDilationSpace Space>
typename Space::PointType approx_difference(const Space& space,
                                            const typename Space::PointType& e,
                                            typename Space::ScalarType eps,
                                            const typename Space::PointType& a,
                                            const typename Space::PointType& b) {
  using Scalar = typename Space::ScalarType;
  require_unit_eps(eps);
  if (eps == Scalar(1)) return b;
  return space.dilate(space.dilate(e, eps, a), Scalar(1) / eps, space.dilate(e, eps, b));
}

template <MetricDilationSpace Space>
typename Space::PointType limit_difference(const Space& space,
                                           const typename Space::PointType& e,
                                           const typename Space::PointType& a,
                                           const typename Space::PointType& b) {
  return space.limit_difference(e, a, b);
}

/// Left side of the approximate axiom-1 identity below.
template <MetricDilationSpace Space>
typename Space::PointType approx_axiom1_lhs(const Space& space, const typename Space::PointType& e,
                                            typename Space::ScalarType eps,
                                            const typename Space::PointType& a,
                                            const typename Space::PointType& b,
                                            const typename Space::PointType& c) {
  require_unit_eps(eps);
  const auto a_eps = space.dilate(e, eps, a);
  return approx_difference(space, a_eps, eps, approx_difference(space, e, eps, a, b),
                           approx_difference(space, e, eps, a, c));
}

/// Distance between the two sides of
///   Delta^{a(eps)}_eps(Delta^e_eps(a,b), Delta^e_eps(a,c)) = Delta^e_eps(b,c),
/// where a(eps) = delta^e_eps a.
template <MetricDilationSpace Space>
typename Space::ScalarType check_approx_axiom1(const Space& space,
                                               const typename Space::PointType& e,
                                               typename Space::ScalarType eps,
                                               const typename Space::PointType& a,
                                               const typename Space::PointType& b,
                                               const typename Space::PointType& c) {
  const auto lhs = approx_axiom1_lhs(space, e, eps, a, b, c);
  return space.distance(lhs, approx_difference(space, e, eps, b, c));
}

// ---------------------------------------------------------------------------
// Convergence diagnostics.

/// Least-squares slope of log(y) against log(x) over the pairs with y > floor.
/// NaN when fewer than two pairs qualify.
template <typename Scalar>
Scalar loglog_slope(std::span<const Scalar> xs, std::span<const Scalar> ys,
                    Scalar floor = Scalar(1e-14)) {
  using std::log;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (ys[i] > floor && xs[i] > Scalar(0)) keep.push_back(static_cast<Eigen::Index>(i));
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  if (n < 2) return std::numeric_limits<Scalar>::quiet_NaN();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> design(n, 2);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    design(r, 0) = log(xs[keep[r]]);
    design(r, 1) = Scalar(1);
    rhs[r] = log(ys[keep[r]]);
  }
  const Eigen::Matrix<Scalar, 2, 1> fit = design.colPivHouseholderQr().solve(rhs);
  return fit[0];
}

template <typename Scalar>
struct ConvergenceRow {
  Scalar eps;
  Scalar gap;
};

template <typename Scalar>
struct ConvergenceTable {
  std::vector<ConvergenceRow<Scalar>> rows;
  Scalar slope;
};

/// gap(eps) = d(Delta^e_eps(a, b), Delta^e(a, b)) for each eps, plus the
/// log-log slope of gap against eps.
template <MetricDilationSpace Space>
ConvergenceTable<typename Space::ScalarType> convergence_table(
    const Space& space, const typename Space::PointType& e, const typename Space::PointType& a,
    const typename Space::PointType& b, std::span<const typename Space::ScalarType> eps_list) {
  using Scalar = typename Space::ScalarType;
  if (eps_list.empty()) throw InvalidArgument("eps list must be non-empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    require_unit_eps(eps_list[i]);
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InvalidArgument("eps list must be strictly descending");
    }
  }
  const auto limit = space.limit_difference(e, a, b);
  ConvergenceTable<Scalar> table;
  std::vector<Scalar> xs, ys;
  for (const Scalar eps : eps_list) {
    const Scalar gap = space.distance(approx_difference(space, e, eps, a, b), limit);
    table.rows.push_back({eps, gap});
    xs.push_back(eps);
    ys.push_back(gap);
  }
  table.slope = loglog_slope<Scalar>(xs, ys);
  return table;
}

}  // namespace ruzsa

#endif  // RUZSA_DILATION_SPACES_HPP_
