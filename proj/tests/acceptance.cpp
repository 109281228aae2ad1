// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ruzsa/cli/commands.hpp"
#include "ruzsa/delta_core.hpp"
#include "ruzsa/dilation_spaces.hpp"
#include "ruzsa/group_catalog.hpp"
#include "ruzsa/metric_ruzsa.hpp"

using ruzsa::CheckMode;
using ruzsa::EuclideanSpace;
using ruzsa::FiniteGroup;
using ruzsa::FiniteSet;
using ruzsa::HeisenbergSpace;
using ruzsa::PointXd;
using Index = FiniteGroup::Index;

namespace {

// Pinned tolerances.
constexpr double kLawTol = 1e-12;
constexpr double kApproxAxiomTol = 1e-9;
constexpr double kClosedFormTol = 1e-12;
constexpr double kEuclidSlopeTol = 1e-3;
constexpr double kHeisSlopeLo = 0.8;
constexpr double kHeisSlopeHi = 1.2;
constexpr double kCrossTol = 1e-12;
constexpr double kRuntimeLimitSec = 5.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs(const PointXd& p, const PointXd& q) { return (p - q).cwiseAbs().maxCoeff(); }

std::vector<FiniteGroup> axiom_catalog() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 2; n <= 12; ++n) out.push_back(ruzsa::cyclic(n));
  for (std::size_t n = 3; n <= 6; ++n) out.push_back(ruzsa::dihedral(n));
  for (std::size_t n = 3; n <= 4; ++n) out.push_back(ruzsa::symmetric(n));
  out.push_back(ruzsa::heisenberg_mod(3));
  return out;
}

FiniteSet<Index> random_subset(std::size_t order, ruzsa::Rng& rng) {
  const std::size_t size = 1 + ruzsa::uniform_index(rng, std::min<std::size_t>(order, 8));
  std::vector<Index> xs;
  while (FiniteSet<Index>(xs).size() < size) xs.push_back(static_cast<Index>(ruzsa::uniform_index(rng, order)));
  return FiniteSet<Index>(std::move(xs));
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t counterexamples = 0, checked = 0;
  for (const auto& g : axiom_catalog()) {
    const auto s = ruzsa::group_delta(g);
    const auto a1 = ruzsa::check_axiom1(s, CheckMode::exhaustive());
    const auto a2 = ruzsa::check_axiom2(s, CheckMode::exhaustive());
    counterexamples += !a1.ok + !a2.ok;
    checked += a1.checked + a2.checked;
  }
  const double t = seconds_since(t0);
  return {counterexamples == 0 && t < kRuntimeLimitSec,
          fmt("%zu fixtures, %zu checks, %zu counterexamples, %.3fs (limit %.0fs)",
              axiom_catalog().size(), checked, counterexamples, t, kRuntimeLimitSec)};
}

Outcome criterion2() {
  std::size_t weak_failures = 0, axiom1_failures = 0, runs = 0;
  ruzsa::Rng rng(2);
  for (const auto& g : {ruzsa::cyclic(6), ruzsa::symmetric(3)}) {
    for (int k = 0; k < 10; ++k) {
      const auto s = ruzsa::relabeled_delta(g, ruzsa::random_permutation(g.order(), rng));
      const auto weak = ruzsa::check_weak_axioms(s, CheckMode::exhaustive());
      weak_failures += !(weak.ok1 && weak.ok2);
      axiom1_failures += !ruzsa::check_axiom1(s, CheckMode::exhaustive()).ok;
      ++runs;
    }
  }
  return {weak_failures == 0 && axiom1_failures > 0,
          fmt("%zu relabelings: %zu weak-axiom failures, %zu fail plain axiom 1", runs,
              weak_failures, axiom1_failures)};
}

Outcome criterion3() {
  auto catalog = axiom_catalog();
  catalog.push_back(ruzsa::direct_product(ruzsa::cyclic(2), ruzsa::cyclic(3)));
  catalog.push_back(ruzsa::direct_product(ruzsa::symmetric(3), ruzsa::cyclic(2)));
  catalog.push_back(ruzsa::heisenberg_mod(5));
  ruzsa::Rng rng(3);
  std::size_t trials = 0, holds = 0, injective = 0;
  for (const auto& g : catalog) {
    const auto s = ruzsa::group_delta(g);
    for (int t = 0; t < 500; ++t) {
      const auto a = random_subset(g.order(), rng);
      const auto b = random_subset(g.order(), rng);
      const auto c = random_subset(g.order(), rng);
      const auto r = ruzsa::ruzsa_inequality(s, a, b, c);
      ++trials;
      holds += r.holds;
      injective += r.witness.is_injective;
    }
  }
  const auto z6 = ruzsa::group_delta(ruzsa::cyclic(6));
  const auto w = ruzsa::ruzsa_inequality(z6, FiniteSet<Index>{0, 1}, FiniteSet<Index>{0, 3},
                                         FiniteSet<Index>{0, 2});
  const bool worked = w.lhs == 8 && w.rhs == 16;
  return {holds == trials && injective == trials && worked,
          fmt("%zu fixtures x 500: %zu/%zu hold, %zu/%zu injective; Z6 example lhs=%zu rhs=%zu",
              catalog.size(), holds, trials, injective, trials, w.lhs, w.rhs)};
}

template <typename Space>
double dilation_law_residual(const Space& space, std::uint64_t seed) {
  ruzsa::Rng rng(seed);
  const PointXd o = space.base_point();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const PointXd x = space.sample_ball(o, 1, rng);
    const PointXd y = space.sample_ball(o, 1, rng);
    const double eps = ruzsa::uniform_real(rng, 0.01, 1.0);
    const double eta = ruzsa::uniform_real(rng, 0.01, 1.0);
    worst = std::max(worst, max_abs(space.dilate(x, 1.0, y), y));
    worst = std::max(worst, max_abs(space.dilate(x, eps, x), x));
    worst = std::max(worst, max_abs(space.dilate(x, eps, space.dilate(x, eta, y)),
                                    space.dilate(x, eps * eta, y)));
    worst = std::max(worst, max_abs(space.dilate(x, 1 / eps, space.dilate(x, eps, y)), y));
    worst = std::max(worst, max_abs(space.dilate(x, eps, space.dilate(x, 1 / eps, y)), y));
  }
  return worst;
}

Outcome criterion4() {
  const double euclid = dilation_law_residual(EuclideanSpace<double>(3), 41);
  const HeisenbergSpace<double> h;
  const double heis = dilation_law_residual(h, 42);
  ruzsa::Rng rng(43);
  double homogeneity = 0, invariance = 0;
  for (int i = 0; i < 1000; ++i) {
    const PointXd m = h.sample_ball(h.base_point(), 1, rng);
    const PointXd g = h.sample_ball(h.base_point(), 1, rng);
    const PointXd p = h.sample_ball(h.base_point(), 1, rng);
    const double eps = ruzsa::uniform_real(rng, 0.01, 1.0);
    homogeneity = std::max(homogeneity, std::abs(h.gauge(h.dilate_identity(eps, m)) - eps * h.gauge(m)));
    invariance = std::max(invariance, std::abs(h.distance(h.multiply(g, p), h.multiply(g, m)) -
                                               h.distance(p, m)));
  }
  const bool ok = euclid <= kLawTol && heis <= kLawTol && homogeneity <= kLawTol &&
                  invariance <= kLawTol;
  return {ok, fmt("laws euclid:3 %.2e, heis1 %.2e; homogeneity %.2e; left-invariance %.2e "
                  "(tol %.0e)",
                  euclid, heis, homogeneity, invariance, kLawTol)};
}

template <typename Space>
void approx_axiom_residuals(const Space& space, std::uint64_t seed, double& distance,
                            double& coordinate) {
  ruzsa::Rng rng(seed);
  const PointXd o = space.base_point();
  distance = coordinate = 0;
  for (double eps : {0.9, 0.5, 0.1, 0.01}) {
    for (int i = 0; i < 1000; ++i) {
      const PointXd e = space.sample_ball(o, 1, rng);
      const PointXd a = space.sample_ball(o, 1, rng);
      const PointXd b = space.sample_ball(o, 1, rng);
      const PointXd c = space.sample_ball(o, 1, rng);
      distance = std::max(distance, ruzsa::check_approx_axiom1(space, e, eps, a, b, c));
      coordinate = std::max(coordinate, max_abs(ruzsa::approx_axiom1_lhs(space, e, eps, a, b, c),
                                                ruzsa::approx_difference(space, e, eps, b, c)));
    }
  }
}

Outcome criterion5() {
  double euclid = 0, euclid_coord = 0, heis = 0, heis_coord = 0;
  approx_axiom_residuals(EuclideanSpace<double>(3), 51, euclid, euclid_coord);
  approx_axiom_residuals(HeisenbergSpace<double>{}, 52, heis, heis_coord);
  return {euclid <= kApproxAxiomTol && heis <= kApproxAxiomTol,
          fmt("max residual euclid:3 %.2e, heis1 %.2e (tol %.0e); heis1 coordinate residual %.2e",
              euclid, heis, kApproxAxiomTol, heis_coord)};
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(std::ldexp(1.0, -k));

  const EuclideanSpace<double> r3(3);
  ruzsa::Rng rng(61);
  double closed_form = 0, euclid_slope_err = 0;
  for (int i = 0; i < 20; ++i) {
    const PointXd e = r3.sample_ball(r3.base_point(), 1, rng);
    const PointXd a = r3.sample_ball(r3.base_point(), 1, rng);
    const PointXd b = r3.sample_ball(r3.base_point(), 1, rng);
    const auto t = ruzsa::convergence_table(r3, e, a, b, std::span<const double>(grid));
    for (const auto& row : t.rows) {
      closed_form = std::max(closed_form, std::abs(row.gap - row.eps * r3.distance(a, e)));
    }
    euclid_slope_err = std::max(euclid_slope_err, std::abs(t.slope - 1.0));
  }

  const HeisenbergSpace<double> h;
  double lo = INFINITY, hi = -INFINITY;
  std::size_t in_range = 0;
  for (int i = 0; i < 20; ++i) {
    const PointXd a = h.sample_ball(h.base_point(), 1, rng);
    const PointXd b = h.sample_ball(h.base_point(), 1, rng);
    const double s =
        ruzsa::convergence_table(h, h.base_point(), a, b, std::span<const double>(grid)).slope;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    in_range += s >= kHeisSlopeLo && s <= kHeisSlopeHi;
  }
  const double t = seconds_since(t0);
  const bool ok = closed_form <= kClosedFormTol && euclid_slope_err <= kEuclidSlopeTol &&
                  in_range == 20 && t < kRuntimeLimitSec;
  return {ok, fmt("euclid:3 closed-form err %.2e, |slope-1| %.2e; heis1 slopes [%.3f, %.3f], "
                  "%zu/20 in [%.1f, %.1f]; %.3fs",
                  closed_form, euclid_slope_err, lo, hi, in_range, kHeisSlopeLo, kHeisSlopeHi, t)};
}

template <typename Space>
bool proposition2_case(const Space& space, double mu, std::uint64_t seed, std::string& detail) {
  const auto grid = ruzsa::geometric_grid(0.5, 0.5, 8);
  const std::span<const double> g(grid);
  const PointXd e = space.base_point();
  const auto t = ruzsa::sample_separated_triple(space, e, 1.0, mu, {20, 20, 20}, g, seed);
  const std::span<const PointXd> a(t.a), b(t.b), c(t.c);

  const auto report = ruzsa::estimate_threshold(space, e, a, b, c, mu, g);
  bool ok = report.empirical_threshold > 0;
  std::size_t below = 0, injective = 0;
  for (const double eps : grid) {
    if (eps > report.empirical_threshold) continue;
    ++below;
    injective += ruzsa::metric_injection(space, e, eps, a, b, c, mu, mu / 4).is_injective;
  }
  ok = ok && injective == below;

  // Negative control: claim twice the actual separation of B.
  const double overstated = 2 * ruzsa::separation(space, b);
  const auto bad = ruzsa::estimate_threshold(space, e, a, b, c, overstated, g);
  bool detected = bad.empirical_threshold == 0;
  for (const auto& row : bad.rows) {
    detected = detected && !row.hypothesis_ok && row.violation &&
               row.violation->distance < overstated;
  }
  try {
    ruzsa::metric_injection(space, e, grid.back(), a, b, c, overstated, overstated / 4);
    detected = false;
  } catch (const ruzsa::SeparationHypothesisError<double>& err) {
    const auto& v = err.violation();
    detected = detected && v.set == "B" &&
               std::abs(space.distance(t.b[v.i], t.b[v.j]) - v.distance) <= kLawTol;
  }
  if (!detail.empty()) detail += "; ";
  detail += fmt("%s mu=%.2f threshold=%.3g injective %zu/%zu, overstated-mu control %s",
                space.name().c_str(), mu, report.empirical_threshold, injective, below,
                detected ? "detected" : "MISSED");
  return ok && detected;
}

Outcome criterion7() {
  std::string detail;
  bool ok = true;
  for (const double mu : {0.05, 0.1}) {
    ok = proposition2_case(EuclideanSpace<double>(4), mu, 71, detail) && ok;
    ok = proposition2_case(HeisenbergSpace<double>{}, mu, 72, detail) && ok;
  }
  return {ok, detail};
}

Outcome criterion8() {
  // Oracle: exponential coordinates as unitriangular matrices.
  auto to_matrix = [](const PointXd& p) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(0, 1) = p[0];
    m(1, 2) = p[1];
    m(0, 2) = p[2] + p[0] * p[1] / 2;
    return m;
  };
  const HeisenbergSpace<double> h;
  ruzsa::Rng rng(81);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const PointXd a = h.sample_ball(h.base_point(), 1, rng);
    const PointXd b = h.sample_ball(h.base_point(), 1, rng);
    const Eigen::Matrix3d m = to_matrix(a).inverse() * to_matrix(b);
    PointXd oracle(3);
    oracle << m(0, 1), m(1, 2), m(0, 2) - m(0, 1) * m(1, 2) / 2;
    worst = std::max(worst, max_abs(ruzsa::limit_difference(h, h.base_point(), a, b), oracle));
  }

  // Integer matrix-coordinate triples (a, b, c) <-> exponential (a, b, c - ab/2).
  constexpr int p = 5;
  const auto g = ruzsa::heisenberg_mod(p);
  auto to_point = [](Index u) {
    const double a = u / (p * p), b = (u / p) % p, c = u % p;
    PointXd q(3);
    q << a, b, c - a * b / 2;
    return q;
  };
  auto mod = [](double v) { return ((static_cast<long long>(std::llround(v)) % p) + p) % p; };
  std::size_t matches = 0, pairs = 0;
  for (Index u = 0; u < g.order(); ++u) {
    for (Index v = 0; v < g.order(); ++v) {
      const PointXd d = ruzsa::limit_difference(h, h.base_point(), to_point(u), to_point(v));
      const double zm = d[2] + d[0] * d[1] / 2;
      const bool integral = std::abs(zm - std::round(zm)) <= kCrossTol;
      const auto idx = static_cast<Index>(mod(d[0]) * p * p + mod(d[1]) * p + mod(zm));
      matches += integral && idx == g.op(g.inverse(u), v);
      ++pairs;
    }
  }
  return {worst <= kCrossTol && matches == pairs,
          fmt("continuous vs matrix oracle %.2e (tol %.0e); heisenberg_mod(5) %zu/%zu pairs match",
              worst, kCrossTol, matches, pairs)};
}

Outcome criterion9() {
  using ruzsa::cli::RunConfig;
  std::vector<RunConfig> configs;
  RunConfig c;
  c.subcommand = "axioms";
  c.fixture = "dihedral:5";
  c.relabel_seed = 4;
  configs.push_back(c);
  c = RunConfig{};
  c.subcommand = "axioms";
  c.fixture = "symmetric:5";
  c.mode = "sampled";
  c.count = 5000;
  c.seed = 9;
  configs.push_back(c);
  c = RunConfig{};
  c.subcommand = "ruzsa";
  c.fixture = "heisenberg:3";
  c.random_trials = 200;
  c.seed = 9;
  configs.push_back(c);
  c = RunConfig{};
  c.subcommand = "converge";
  c.space = "heis1";
  c.point_a = "0.3,-0.2,0.1";
  c.point_b = "-0.5,0.4,0.05";
  c.eps_list = "geometric:0.5,10";
  configs.push_back(c);
  c = RunConfig{};
  c.subcommand = "inject";
  c.space = "heis1";
  c.eps = 0.05;
  c.seed = 9;
  configs.push_back(c);
  c = RunConfig{};
  c.subcommand = "threshold";
  c.space = "euclid:4";
  c.mu = 0.05;
  c.eps_list = "geometric:0.5,6";
  c.seed = 9;
  configs.push_back(c);

  std::size_t identical = 0;
  std::string names;
  for (const auto& cfg : configs) {
    std::ostringstream out1, out2, err;
    const int code1 = ruzsa::cli::execute(cfg, out1, err);
    const int code2 = ruzsa::cli::execute(cfg, out2, err);
    const bool same = code1 == code2 && code1 != ruzsa::cli::kExitUsage && !out1.str().empty() &&
                      out1.str() == out2.str();
    identical += same;
    names += " " + cfg.subcommand + (same ? "" : "(DIFF)");
  }
  return {identical == configs.size(),
          fmt("%zu/%zu reports byte-identical:%s", identical, configs.size(), names.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 axiom verification", criterion1},
      {"2 weak-axiom pathway", criterion2},
      {"3 finite inequality at scale", criterion3},
      {"4 dilation-space algebra", criterion4},
      {"5 approximate axiom 1", criterion5},
      {"6 convergence", criterion6},
      {"7 metric injection threshold", criterion7},
      {"8 cross-module consistency", criterion8},
      {"9 determinism", criterion9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
