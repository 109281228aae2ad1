#include <iostream>

#include <CLI11.hpp>

#include "ruzsa/cli/commands.hpp"

using ruzsa::cli::RunConfig;

namespace {

void add_output_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--output", c.output, "write the report to this file");
  app->add_flag("--timing", c.timing, "record wall-clock time in the report");
}

void add_group_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--fixture", c.fixture,
                  "cyclic:n | dihedral:n | symmetric:n | heisenberg:p | product:G,H")
      ->required();
  app->add_option("--relabel-seed", c.relabel_seed,
                  "use sigma(a^-1 b) with a random relabeling sigma");
}

void add_space_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--space", c.space, "heis1 | euclid:n")->required();
  app->add_option("--e", c.point_e, "base point (default: origin)");
}

void add_point_set_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--A", c.set_a, "points \"x,y;x,y\"");
  app->add_option("--B", c.set_b);
  app->add_option("--C", c.set_c);
  app->add_option("--mu", c.mu, "separation parameter");
  app->add_option("--sizes", c.sizes, "|A|,|B|,|C| for sampled sets");
  app->add_option("--radius", c.radius, "sampling ball radius around e");
  app->add_option("--sampler", c.sampler, "hypothesis | plain")
      ->check(CLI::IsMember({"hypothesis", "plain"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruzsa triangle inequality for difference structures and dilation spaces"};
  app.require_subcommand(1);
  RunConfig c;

  auto* axioms = app.add_subcommand("axioms", "check the difference-structure axioms of a fixture");
  add_group_flags(axioms, c);
  axioms->add_option("--mode", c.mode, "auto | exhaustive | sampled")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
  axioms->add_option("--count", c.count, "samples in sampled mode");
  add_output_flags(axioms, c);

  auto* ruzsa = app.add_subcommand("ruzsa", "check |D(C,A)||B| <= |D(B,C)||D(B,A)|");
  add_group_flags(ruzsa, c);
  ruzsa->add_option("--A", c.set_a, "indices \"0,1,2\"");
  ruzsa->add_option("--B", c.set_b);
  ruzsa->add_option("--C", c.set_c);
  ruzsa->add_option("--batch", c.batch_file, "file with one A|B|C triple per line");
  ruzsa->add_option("--random-trials", c.random_trials, "number of random triples");
  ruzsa->add_option("--subset-size", c.subset_size, "size of random subsets (default random)");
  add_output_flags(ruzsa, c);

  auto* converge = app.add_subcommand("converge", "distance from approximate to limit difference");
  add_space_flags(converge, c);
  converge->add_option("--a", c.point_a)->required();
  converge->add_option("--b", c.point_b)->required();
  converge->add_option("--eps", c.eps_list, "descending list or geometric:r,n")->required();
  add_output_flags(converge, c);

  auto* inject = app.add_subcommand("inject", "build the metric injection at one eps");
  add_space_flags(inject, c);
  add_point_set_flags(inject, c);
  inject->add_option("--eps", c.eps, "dilation coefficient in (0, 1]");
  inject->add_option("--tolerance", c.tolerance, "clustering tolerance (default mu/4)");
  add_output_flags(inject, c);

  auto* threshold = app.add_subcommand("threshold", "largest eps below which injectivity holds");
  add_space_flags(threshold, c);
  add_point_set_flags(threshold, c);
  threshold->add_option("--eps-grid", c.eps_list, "descending list or geometric:r,n")->required();
  add_output_flags(threshold, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ruzsa::cli::kExitUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return ruzsa::cli::execute(c, std::cout, std::cerr);
}
