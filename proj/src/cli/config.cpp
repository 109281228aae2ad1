#include "ruzsa/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace ruzsa::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text) {
  // std::from_chars for double is unavailable on some toolchains still in use.
  const std::string buf(trim(text));
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + buf + "'");
  }
  if (used != buf.size() || !std::isfinite(value)) throw UsageError("not a finite number: '" + buf + "'");
  return value;
}

std::size_t parse_size(std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  auto opt = [](const std::optional<std::string>& s) -> nlohmann::ordered_json {
    return s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["subcommand"] = c.subcommand;
  j["fixture"] = c.fixture;
  j["relabel_seed"] = c.relabel_seed ? nlohmann::ordered_json(*c.relabel_seed) : nullptr;
  j["mode"] = c.mode;
  j["count"] = c.count;
  j["A"] = opt(c.set_a);
  j["B"] = opt(c.set_b);
  j["C"] = opt(c.set_c);
  j["batch_file"] = c.batch_file;
  j["random_trials"] = c.random_trials;
  j["subset_size"] = c.subset_size;
  j["space"] = c.space;
  j["e"] = c.point_e;
  j["a"] = c.point_a;
  j["b"] = c.point_b;
  j["eps_list"] = c.eps_list;
  j["eps"] = c.eps;
  j["mu"] = c.mu;
  j["tolerance"] = c.tolerance ? nlohmann::ordered_json(*c.tolerance) : nullptr;
  j["sizes"] = c.sizes;
  j["radius"] = c.radius;
  j["sampler"] = c.sampler;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

std::vector<FiniteGroup::Index> parse_index_list(std::string_view text, std::size_t order) {
  if (trim(text).empty()) throw UsageError("empty set literal");
  std::vector<FiniteGroup::Index> out;
  for (const auto part : split(text, ',')) {
    const std::size_t v = parse_size(part);
    if (v >= order) {
      throw UsageError("element " + std::to_string(v) + " out of range for order " +
                       std::to_string(order));
    }
    out.push_back(static_cast<FiniteGroup::Index>(v));
  }
  return out;
}

PointXd parse_point(std::string_view text, Eigen::Index dim) {
  const auto parts = split(text, ',');
  if (static_cast<Eigen::Index>(parts.size()) != dim) {
    throw UsageError("point '" + std::string(text) + "' needs " + std::to_string(dim) +
                     " coordinates");
  }
  PointXd p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p[i] = parse_double(parts[static_cast<std::size_t>(i)]);
  return p;
}

std::vector<PointXd> parse_point_list(std::string_view text, Eigen::Index dim) {
  if (trim(text).empty()) throw UsageError("empty point-set literal");
  std::vector<PointXd> out;
  for (const auto part : split(text, ';')) out.push_back(parse_point(part, dim));
  return out;
}

std::vector<double> parse_eps_list(std::string_view text, bool allow_empty) {
  text = trim(text);
  std::vector<double> out;
  constexpr std::string_view kGeometric = "geometric:";
  if (text.substr(0, kGeometric.size()) == kGeometric) {
    const auto parts = split(text.substr(kGeometric.size()), ',');
    if (parts.size() != 2) throw UsageError("expected geometric:ratio,count");
    const double ratio = parse_double(parts[0]);
    const std::size_t count = parse_size(parts[1]);
    if (!(ratio > 0 && ratio < 1)) throw UsageError("geometric ratio must lie in (0, 1)");
    double v = ratio;
    for (std::size_t i = 0; i < count; ++i, v *= ratio) out.push_back(v);
  } else if (!text.empty()) {
    for (const auto part : split(text, ',')) out.push_back(parse_double(part));
  }
  if (out.empty() && !allow_empty) throw UsageError("eps list must be non-empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0 && out[i] <= 1)) throw UsageError("eps values must lie in (0, 1]");
    if (i > 0 && !(out[i] < out[i - 1])) throw UsageError("eps values must strictly decrease");
  }
  return out;
}

std::array<std::size_t, 3> parse_sizes(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("--sizes expects three counts |A|,|B|,|C|");
  std::array<std::size_t, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = parse_size(parts[i]);
    if (out[i] == 0) throw UsageError("set sizes must be positive");
  }
  return out;
}

std::vector<std::array<std::string, 3>> read_batch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read batch file '" + path + "'");
  std::vector<std::array<std::string, 3>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto parts = split(body, '|');
    if (parts.size() != 3) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected A|B|C");
    }
    out.push_back({std::string(parts[0]), std::string(parts[1]), std::string(parts[2])});
  }
  return out;
}

}  // namespace ruzsa::cli
