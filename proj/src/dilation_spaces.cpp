#include "ruzsa/dilation_spaces.hpp"

#include <charconv>

namespace ruzsa {

DilationSpace<double> parse_space(std::string_view spec) {
  if (spec == "heis1") return HeisenbergSpace<double>{};
  constexpr std::string_view kEuclid = "euclid:";
  if (spec.substr(0, kEuclid.size()) == kEuclid) {
    const std::string_view arg = spec.substr(kEuclid.size());
    int dim = 0;
    const auto* end = arg.data() + arg.size();
    const auto [ptr, ec] = std::from_chars(arg.data(), end, dim);
    if (ec == std::errc() && ptr == end && dim >= 1 && dim <= 64) {
      return EuclideanSpace<double>(dim);
    }
  }
  throw InvalidArgument("unknown space '" + std::string(spec) + "'");
}

}  // namespace ruzsa
