#ifndef RUZSA_CLI_CONFIG_HPP_
#define RUZSA_CLI_CONFIG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ruzsa/dilation_spaces.hpp"
#include "ruzsa/errors.hpp"
#include "ruzsa/group_catalog.hpp"

namespace ruzsa::cli {

/// Bad flags, literals or files. Maps to exit code 2.
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct RunConfig {
  std::string subcommand;

  // Group fixtures (axioms, ruzsa).
  std::string fixture;
  std::optional<std::uint64_t> relabel_seed;
  std::string mode = "auto";  // auto | exhaustive | sampled
  std::size_t count = 100000;

  // Set literals: group indices "0,1,2"; points "x,y;x,y".
  std::optional<std::string> set_a;
  std::optional<std::string> set_b;
  std::optional<std::string> set_c;
  std::string batch_file;
  std::size_t random_trials = 0;
  std::size_t subset_size = 0;  // 0: random size in 1..min(order, 8)

  // Dilation spaces (converge, inject, threshold).
  std::string space;
  std::string point_e;  // empty: the space's base point
  std::string point_a;
  std::string point_b;
  std::string eps_list;
  double eps = 0.5;
  double mu = 0.1;
  std::optional<double> tolerance;
  std::string sizes = "20,20,20";
  double radius = 1.0;
  std::string sampler = "hypothesis";  // hypothesis | plain

  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  std::string output;           // empty: standard output
  bool timing = false;
};

nlohmann::ordered_json to_json(const RunConfig& config);

/// "0,3,5" -> indices; every index must be < order.
std::vector<FiniteGroup::Index> parse_index_list(std::string_view text, std::size_t order);

/// "1,0;0.5,2" -> points of the given dimension.
std::vector<PointXd> parse_point_list(std::string_view text, Eigen::Index dim);
PointXd parse_point(std::string_view text, Eigen::Index dim);

/// "0.5,0.25,0.125" or "geometric:r,n" (r, r^2, ..., r^n). Values must lie in
/// (0, 1] and strictly decrease; an empty list is allowed when allow_empty.
std::vector<double> parse_eps_list(std::string_view text, bool allow_empty);

std::array<std::size_t, 3> parse_sizes(std::string_view text);

/// Triples "A|B|C" from a file, one per non-empty line ('#' starts a comment).
std::vector<std::array<std::string, 3>> read_batch_file(const std::string& path);

}  // namespace ruzsa::cli

#endif  // RUZSA_CLI_CONFIG_HPP_
