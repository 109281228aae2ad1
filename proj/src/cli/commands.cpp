#include "ruzsa/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ruzsa/delta_core.hpp"
#include "ruzsa/dilation_spaces.hpp"
#include "ruzsa/group_catalog.hpp"
#include "ruzsa/metric_ruzsa.hpp"

namespace ruzsa::cli {

using json = nlohmann::ordered_json;
using Index = FiniteGroup::Index;
using Space = DilationSpace<double>;

namespace {

// Group law checks are O(order^3); larger fixtures rely on the catalog tests.
constexpr std::size_t kGroupLawCheckLimit = 256;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json point_json(const PointXd& p) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(p[i]);
  return arr;
}

json points_json(const std::vector<PointXd>& ps) {
  json arr = json::array();
  for (const auto& p : ps) arr.push_back(point_json(p));
  return arr;
}

json set_json(const FiniteSet<Index>& s) { return json(s.members()); }

template <typename T>
json optional_triple(const std::optional<std::array<T, 3>>& t) {
  return t ? json(*t) : json(nullptr);
}

Report make_report(const RunConfig& config) {
  Report r;
  r.json["schema_version"] = kSchemaVersion;
  r.json["config"] = to_json(config);
  r.json["results"] = json::object();
  r.json["timing"] = json{{"enabled", false}};
  return r;
}

CheckMode parse_mode(const RunConfig& config) {
  if (config.mode == "auto") return CheckMode::automatic(config.count, config.seed);
  if (config.mode == "exhaustive") return CheckMode::exhaustive();
  if (config.mode == "sampled") {
    if (config.count == 0) throw UsageError("sampled mode needs --count > 0");
    return CheckMode::sampled(config.count, config.seed);
  }
  throw UsageError("unknown mode '" + config.mode + "' (auto | exhaustive | sampled)");
}

struct GroupStructure {
  FiniteGroup group;
  DeltaStructure<Index> delta;
  bool relabeled = false;
};

GroupStructure resolve_structure(const RunConfig& config) {
  if (config.fixture.empty()) throw UsageError("--fixture is required");
  FiniteGroup g = parse_fixture(config.fixture);
  if (config.relabel_seed) {
    Rng rng = make_rng(*config.relabel_seed);
    auto s = relabeled_delta(g, random_permutation(g.order(), rng));
    return {std::move(g), std::move(s), true};
  }
  auto s = group_delta(g);
  return {std::move(g), std::move(s), false};
}

Space resolve_space(const RunConfig& config) {
  if (config.space.empty()) throw UsageError("--space is required");
  return parse_space(config.space);
}

PointXd resolve_base(const Space& space, const RunConfig& config) {
  return config.point_e.empty() ? space.base_point() : parse_point(config.point_e, space.dim());
}

json violation_json(const HypothesisViolation<double>& v) {
  return json{{"set", v.set}, {"i", v.i}, {"j", v.j}, {"distance", v.distance}, {"mu", v.mu}};
}

}  // namespace

// ---------------------------------------------------------------------------

Report cmd_axioms(const RunConfig& config) {
  Report report = make_report(config);
  const CheckMode mode = parse_mode(config);
  const GroupStructure gs = resolve_structure(config);
  json& res = report.json["results"];
  res["structure"] = gs.delta.name;
  res["order"] = gs.group.order();
  res["abelian"] = gs.group.is_abelian();
  res["relabeled"] = gs.relabeled;

  bool guaranteed_ok = true;
  if (gs.group.order() <= kGroupLawCheckLimit) {
    const auto laws = verify_group_laws(gs.group);
    res["group_laws"] = json{{"checked", true}, {"ok", laws.ok}, {"failure", laws.failure}};
    guaranteed_ok = guaranteed_ok && laws.ok;
  } else {
    res["group_laws"] = json{{"checked", false}};
  }

  const auto ax1 = check_axiom1(gs.delta, mode);
  const auto ax2 = check_axiom2(gs.delta, mode);
  const auto weak = check_weak_axioms(gs.delta, mode);
  res["mode"] = to_string(ax1.mode.kind);
  if (ax1.mode.kind == CheckMode::Kind::kSampled) {
    res["sample_count"] = ax1.mode.count;
    res["sample_seed"] = ax1.mode.seed;
  }
  res["axiom1"] = json{{"ok", ax1.ok}, {"checked", ax1.checked},
                       {"counterexample", optional_triple(ax1.counterexample)}};
  res["axiom2"] = json{{"ok", ax2.ok}, {"checked", ax2.checked},
                       {"counterexample", optional_triple(ax2.counterexample)}};
  res["weak"] = json{{"ok1", weak.ok1},
                     {"ok2", weak.ok2},
                     {"checked", weak.checked},
                     {"counterexample1", optional_triple(weak.counterexample1)},
                     {"counterexample2", optional_triple(weak.counterexample2)}};

  // Group differences must satisfy both axioms; relabelings only the weak ones.
  guaranteed_ok = guaranteed_ok && weak.ok1 && weak.ok2;
  if (!gs.relabeled) guaranteed_ok = guaranteed_ok && ax1.ok && ax2.ok;
  res["ok"] = guaranteed_ok;
  report.exit_code = guaranteed_ok ? kExitOk : kExitVerificationFailed;

  std::ostringstream csv;
  csv << "check,ok\n"
      << "axiom1," << ax1.ok << "\naxiom2," << ax2.ok << "\nweak1," << weak.ok1 << "\nweak2,"
      << weak.ok2 << "\n";
  report.csv = csv.str();
  return report;
}

Report cmd_ruzsa(const RunConfig& config) {
  Report report = make_report(config);
  const GroupStructure gs = resolve_structure(config);
  const std::size_t order = gs.group.order();

  struct Trial {
    FiniteSet<Index> a, b, c;
  };
  std::vector<Trial> trials;
  const bool explicit_sets = config.set_a || config.set_b || config.set_c;
  if (explicit_sets) {
    if (!(config.set_a && config.set_b && config.set_c)) {
      throw UsageError("--A, --B and --C must be given together");
    }
    trials.push_back({FiniteSet<Index>(parse_index_list(*config.set_a, order)),
                      FiniteSet<Index>(parse_index_list(*config.set_b, order)),
                      FiniteSet<Index>(parse_index_list(*config.set_c, order))});
  }
  if (!config.batch_file.empty()) {
    for (const auto& [a, b, c] : read_batch_file(config.batch_file)) {
      trials.push_back({FiniteSet<Index>(parse_index_list(a, order)),
                        FiniteSet<Index>(parse_index_list(b, order)),
                        FiniteSet<Index>(parse_index_list(c, order))});
    }
  }
  if (config.random_trials > 0) {
    if (config.subset_size > order) throw UsageError("--subset-size exceeds the group order");
    Rng rng = make_rng(config.seed);
    auto draw = [&] {
      const std::size_t size = config.subset_size > 0
                                   ? config.subset_size
                                   : 1 + uniform_index(rng, std::min<std::size_t>(order, 8));
      std::vector<Index> xs;
      while (FiniteSet<Index>(xs).size() < size) {
        xs.push_back(static_cast<Index>(uniform_index(rng, order)));
      }
      return FiniteSet<Index>(std::move(xs));
    };
    for (std::size_t t = 0; t < config.random_trials; ++t) {
      Trial trial;
      trial.a = draw();
      trial.b = draw();
      trial.c = draw();
      trials.push_back(std::move(trial));
    }
  }
  if (trials.empty()) throw UsageError("no sets given: use --A/--B/--C, --batch or --random-trials");

  json rows = json::array();
  std::size_t holds = 0, injective = 0;
  std::ostringstream csv;
  csv << "trial,lhs,rhs,holds,injective\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto r = ruzsa_inequality(gs.delta, trials[t].a, trials[t].b, trials[t].c);
    holds += r.holds;
    injective += r.witness.is_injective;
    json collision = nullptr;
    if (r.witness.collision) {
      const auto& [k1, k2] = *r.witness.collision;
      collision = json{{"first", {k1.first, k1.second}}, {"second", {k2.first, k2.second}}};
    }
    rows.push_back(json{{"trial", t},
                        {"A", set_json(trials[t].a)},
                        {"B", set_json(trials[t].b)},
                        {"C", set_json(trials[t].c)},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"holds", r.holds},
                        {"source_size", r.witness.source_size},
                        {"injective", r.witness.is_injective},
                        {"collision", collision}});
    csv << t << "," << r.lhs << "," << r.rhs << "," << r.holds << "," << r.witness.is_injective
        << "\n";
  }
  json& res = report.json["results"];
  res["structure"] = gs.delta.name;
  res["trials"] = std::move(rows);
  res["aggregate"] = json{{"trials", trials.size()}, {"holds", holds}, {"injective", injective}};
  const bool all_ok = holds == trials.size() && injective == trials.size();
  res["ok"] = all_ok;
  report.exit_code = all_ok ? kExitOk : kExitVerificationFailed;
  report.csv = csv.str();
  return report;
}

Report cmd_converge(const RunConfig& config) {
  Report report = make_report(config);
  const Space space = resolve_space(config);
  const PointXd e = resolve_base(space, config);
  if (config.point_a.empty() || config.point_b.empty()) throw UsageError("--a and --b are required");
  const PointXd a = parse_point(config.point_a, space.dim());
  const PointXd b = parse_point(config.point_b, space.dim());
  const auto eps_list = parse_eps_list(config.eps_list, false);
  const auto table = convergence_table(space, e, a, b, std::span<const double>(eps_list));

  json rows = json::array();
  std::ostringstream csv;
  csv << "eps,gap\n";
  for (const auto& row : table.rows) {
    rows.push_back(json{{"eps", row.eps}, {"gap", row.gap}});
    csv << fmt17(row.eps) << "," << fmt17(row.gap) << "\n";
  }
  json& res = report.json["results"];
  res["space"] = space.name();
  res["e"] = point_json(e);
  res["limit"] = point_json(space.limit_difference(e, a, b));
  res["rows"] = std::move(rows);
  res["slope"] = table.slope;
  report.csv = csv.str();
  return report;
}

namespace {

struct PointSets {
  std::vector<PointXd> a, b, c;
  json info;
  std::optional<std::string> sampler_error;
};

/// Explicit --A/--B/--C literals, or seeded sampling. The hypothesis sampler
/// conditions A on the separation hypothesis over `grid`.
PointSets resolve_point_sets(const Space& space, const PointXd& e, const RunConfig& config,
                             std::span<const double> grid) {
  PointSets sets;
  const bool explicit_sets = config.set_a || config.set_b || config.set_c;
  if (explicit_sets) {
    if (!(config.set_a && config.set_b && config.set_c)) {
      throw UsageError("--A, --B and --C must be given together");
    }
    sets.a = parse_point_list(*config.set_a, space.dim());
    sets.b = parse_point_list(*config.set_b, space.dim());
    sets.c = parse_point_list(*config.set_c, space.dim());
    sets.info = json{{"source", "explicit"}};
    return sets;
  }
  const auto sizes = parse_sizes(config.sizes);
  if (!(config.radius > 0)) throw UsageError("--radius must be positive");
  sets.info = json{{"source", config.sampler}, {"seed", config.seed}, {"radius", config.radius},
                   {"sizes", sizes}};
  try {
    if (config.sampler == "hypothesis") {
      auto t = sample_separated_triple(space, e, config.radius, config.mu, sizes, grid, config.seed);
      sets.a = std::move(t.a);
      sets.b = std::move(t.b);
      sets.c = std::move(t.c);
    } else if (config.sampler == "plain") {
      Rng rng = make_rng(config.seed);
      sets.a = sample_separated_set(space, e, config.radius, config.mu, sizes[0], rng).points();
      sets.b = sample_separated_set(space, e, config.radius, config.mu, sizes[1], rng).points();
      sets.c = sample_separated_set(space, e, config.radius, config.mu, sizes[2], rng).points();
    } else {
      throw UsageError("unknown sampler '" + config.sampler + "' (hypothesis | plain)");
    }
  } catch (const PartialSetError<double>& err) {
    sets.sampler_error = err.what();
  }
  return sets;
}

json sets_json(const Space& space, const PointSets& sets) {
  auto sep = [&](const std::vector<PointXd>& ps) {
    return json(separation(space, std::span<const PointXd>(ps)));
  };
  return json{{"A", points_json(sets.a)}, {"B", points_json(sets.b)}, {"C", points_json(sets.c)},
              {"separation", {{"A", sep(sets.a)}, {"B", sep(sets.b)}, {"C", sep(sets.c)}}}};
}

void require_mu(const RunConfig& config) {
  if (!(config.mu > 0)) throw UsageError("--mu must be positive");
}

}  // namespace

Report cmd_inject(const RunConfig& config) {
  Report report = make_report(config);
  require_mu(config);
  const Space space = resolve_space(config);
  const PointXd e = resolve_base(space, config);
  if (!(config.eps > 0 && config.eps <= 1)) throw UsageError("--eps must lie in (0, 1]");
  const double tolerance = config.tolerance.value_or(config.mu / 4);
  if (!(tolerance > 0 && tolerance <= config.mu / 4)) {
    throw UsageError("--tolerance must lie in (0, mu/4]");
  }
  const std::vector<double> grid{config.eps};
  const PointSets sets = resolve_point_sets(space, e, config, grid);

  json& res = report.json["results"];
  res["space"] = space.name();
  res["e"] = point_json(e);
  res["eps"] = config.eps;
  res["mu"] = config.mu;
  res["tolerance"] = tolerance;
  res["sets"] = sets.info;
  std::ostringstream csv;
  csv << "eps,hypothesis_ok,injective,domain_size,b_size\n";
  if (sets.sampler_error) {
    res["sampler_error"] = *sets.sampler_error;
    res["hypothesis_ok"] = nullptr;
    report.csv = csv.str();
    return report;
  }
  res["points"] = sets_json(space, sets);
  try {
    const auto w = metric_injection(space, e, config.eps, std::span<const PointXd>(sets.a),
                                    std::span<const PointXd>(sets.b),
                                    std::span<const PointXd>(sets.c), config.mu, tolerance);
    json collision = nullptr;
    if (w.collision) {
      const auto& p = w.entries[w.collision->first];
      const auto& q = w.entries[w.collision->second];
      collision = json{{"first", {p.x_index, p.b_index}},
                       {"second", {q.x_index, q.b_index}},
                       {"distance_c", w.collision->distance_c},
                       {"distance_d", w.collision->distance_d}};
    }
    res["hypothesis_ok"] = true;
    res["witness"] = json{{"domain_size", w.domain_size},
                          {"b_size", w.b_size},
                          {"entries", w.entries.size()},
                          {"is_injective", w.is_injective},
                          {"collision", collision},
                          {"reconstruction_residual", reconstruction_residual(space, e, w)},
                          {"limit_reconstruction_gap", limit_reconstruction_gap(space, e, w)},
                          {"limit_entry_gap", limit_entry_gap(space, e, w)}};
    csv << fmt17(config.eps) << ",1," << w.is_injective << "," << w.domain_size << "," << w.b_size
        << "\n";
  } catch (const SeparationHypothesisError<double>& err) {
    res["hypothesis_ok"] = false;
    res["violation"] = violation_json(err.violation());
    csv << fmt17(config.eps) << ",0,0,,\n";
  }
  report.csv = csv.str();
  return report;
}

Report cmd_threshold(const RunConfig& config) {
  Report report = make_report(config);
  require_mu(config);
  const Space space = resolve_space(config);
  const PointXd e = resolve_base(space, config);
  const auto grid = parse_eps_list(config.eps_list, true);
  const PointSets sets = resolve_point_sets(space, e, config, grid);

  json& res = report.json["results"];
  res["space"] = space.name();
  res["e"] = point_json(e);
  res["mu"] = config.mu;
  res["tolerance"] = config.mu / 4;
  res["sets"] = sets.info;
  std::ostringstream csv;
  csv << "eps,hypothesis_ok,injective\n";
  if (sets.sampler_error) {
    res["sampler_error"] = *sets.sampler_error;
    res["rows"] = json::array();
    res["empirical_threshold"] = 0.0;
    report.csv = csv.str();
    return report;
  }
  res["points"] = sets_json(space, sets);
  const auto tr = estimate_threshold(space, e, std::span<const PointXd>(sets.a),
                                     std::span<const PointXd>(sets.b),
                                     std::span<const PointXd>(sets.c), config.mu,
                                     std::span<const double>(grid));
  json rows = json::array();
  for (const auto& row : tr.rows) {
    rows.push_back(json{{"eps", row.eps},
                        {"hypothesis_ok", row.hypothesis_ok},
                        {"injective", row.injective},
                        {"violation", row.violation ? violation_json(*row.violation) : json(nullptr)}});
    csv << fmt17(row.eps) << "," << row.hypothesis_ok << "," << row.injective << "\n";
  }
  res["rows"] = std::move(rows);
  res["empirical_threshold"] = tr.empirical_threshold;
  report.csv = csv.str();
  return report;
}

// ---------------------------------------------------------------------------

Report run(const RunConfig& config) {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> kCommands = {
      {"axioms", cmd_axioms},     {"ruzsa", cmd_ruzsa},         {"converge", cmd_converge},
      {"inject", cmd_inject},     {"threshold", cmd_threshold},
  };
  const auto it = kCommands.find(config.subcommand);
  if (it == kCommands.end()) throw UsageError("unknown subcommand '" + config.subcommand + "'");
  if (config.format != "json" && config.format != "csv") {
    throw UsageError("unknown format '" + config.format + "' (json | csv)");
  }
  const auto start = std::chrono::steady_clock::now();
  Report report = it->second(config);
  if (config.timing) {
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report.json["timing"] = json{{"enabled", true}, {"elapsed_ms", elapsed.count()}};
  }
  return report;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "csv") return report.csv;
  return report.json.dump(2) + "\n";
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = run(config);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = render(report, config.format);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << config.output << "'\n";
      return kExitUsage;
    }
  }
  return report.exit_code;
}

}  // namespace ruzsa::cli
