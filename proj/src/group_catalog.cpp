#include "ruzsa/group_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

namespace ruzsa {

using Index = FiniteGroup::Index;

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<Index> table,
                         Index identity)
    : name_(std::move(name)), order_(order), table_(std::move(table)), identity_(identity) {
  if (order_ == 0) throw InvalidArgument("group order must be positive");
  if (table_.size() != order_ * order_) throw InvalidArgument("Cayley table has wrong size");
  if (identity_ >= order_) throw InvalidArgument("identity index out of range");
  inverse_.assign(order_, static_cast<Index>(order_));
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      const Index v = table_[a * order_ + b];
      if (v >= order_) throw InvalidArgument("Cayley table entry out of range");
      if (v == identity_) inverse_[a] = static_cast<Index>(b);
    }
    if (inverse_[a] == order_) {
      throw InvalidArgument(name_ + ": element " + std::to_string(a) + " has no inverse");
    }
  }
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = a + 1; b < order_; ++b) {
      if (table_[a * order_ + b] != table_[b * order_ + a]) return false;
    }
  }
  return true;
}

std::vector<Index> FiniteGroup::elements() const {
  std::vector<Index> xs(order_);
  std::iota(xs.begin(), xs.end(), Index{0});
  return xs;
}

GroupLawReport verify_group_laws(const FiniteGroup& g) {
  const auto n = static_cast<Index>(g.order());
  const Index e = g.identity();
  auto fail = [&](std::string what) { return GroupLawReport{false, g.name() + ": " + what}; };
  for (Index a = 0; a < n; ++a) {
    if (g.op(e, a) != a || g.op(a, e) != a) {
      return fail("identity law fails at " + std::to_string(a));
    }
    if (g.op(a, g.inverse(a)) != e || g.op(g.inverse(a), a) != e) {
      return fail("inverse law fails at " + std::to_string(a));
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index ab = g.op(a, b);
      for (Index c = 0; c < n; ++c) {
        if (g.op(ab, c) != g.op(a, g.op(b, c))) {
          std::ostringstream os;
          os << "associativity fails at (" << a << ", " << b << ", " << c << ")";
          return fail(os.str());
        }
      }
    }
  }
  return {};
}

namespace {

template <typename Op>
FiniteGroup tabulate(std::string name, std::size_t order, Index identity, Op&& op) {
  std::vector<Index> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      table[a * order + b] = static_cast<Index>(op(a, b));
    }
  }
  return FiniteGroup(std::move(name), order, std::move(table), identity);
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

FiniteGroup cyclic(std::size_t n) {
  if (n == 0 || n > kMaxGroupOrder) {
    throw InvalidArgument("cyclic(n) needs 1 <= n <= " + std::to_string(kMaxGroupOrder));
  }
  return tabulate("cyclic:" + std::to_string(n), n, 0,
                  [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

FiniteGroup dihedral(std::size_t n) {
  if (n < 3 || 2 * n > kMaxGroupOrder) {
    throw InvalidArgument("dihedral(n) needs 3 <= n <= " + std::to_string(kMaxGroupOrder / 2));
  }
  // r^k s^j * r^l s^m = r^(k + (-1)^j l) s^(j + m).
  return tabulate("dihedral:" + std::to_string(n), 2 * n, 0, [n](std::size_t a, std::size_t b) {
    const std::size_t k = a % n, j = a / n, l = b % n, m = b / n;
    const std::size_t rot = j == 0 ? (k + l) % n : (k + n - l) % n;
    return rot + n * ((j + m) % 2);
  });
}

FiniteGroup symmetric(std::size_t n) {
  if (n < 1 || n > 6) throw InvalidArgument("symmetric(n) needs 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, std::size_t> rank;
  for (std::size_t i = 0; i < perms.size(); ++i) rank.emplace(perms[i], i);

  std::vector<int> composed(n);
  return tabulate("symmetric:" + std::to_string(n), perms.size(), 0,
                  [&](std::size_t a, std::size_t b) {
                    for (std::size_t i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
                    return rank.at(composed);
                  });
}

FiniteGroup heisenberg_mod(std::size_t p) {
  if (p > 7 || !is_prime(p)) throw InvalidArgument("heisenberg_mod(p) needs a prime p <= 7");
  const std::size_t p2 = p * p;
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
  return tabulate("heisenberg:" + std::to_string(p), p2 * p, 0,
                  [p, p2](std::size_t u, std::size_t v) {
                    const std::size_t a = u / p2, b = (u / p) % p, c = u % p;
                    const std::size_t a2 = v / p2, b2 = (v / p) % p, c2 = v % p;
                    return ((a + a2) % p) * p2 + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
                  });
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t order = g.order() * h.order();
  if (order > kMaxGroupOrder) {
    throw InvalidArgument("direct product order exceeds " + std::to_string(kMaxGroupOrder));
  }
  const std::size_t m = h.order();
  const Index id = static_cast<Index>(g.identity() * m + h.identity());
  return tabulate("product:" + g.name() + "," + h.name(), order, id,
                  [&](std::size_t a, std::size_t b) {
                    return g.op(static_cast<Index>(a / m), static_cast<Index>(b / m)) * m +
                           h.op(static_cast<Index>(a % m), static_cast<Index>(b % m));
                  });
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("bad parameter in fixture '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

FiniteGroup parse_fixture(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("unknown fixture '" + std::string(spec) + "'");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "product") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos) {
      throw InvalidArgument("product fixture needs two factors: '" + std::string(spec) + "'");
    }
    return direct_product(parse_fixture(arg.substr(0, comma)), parse_fixture(arg.substr(comma + 1)));
  }
  const std::size_t n = parse_count(arg, spec);
  if (kind == "cyclic") return cyclic(n);
  if (kind == "dihedral") return dihedral(n);
  if (kind == "symmetric") return symmetric(n);
  if (kind == "heisenberg") return heisenberg_mod(n);
  throw InvalidArgument("unknown fixture '" + std::string(spec) + "'");
}

DeltaStructure<Index> group_delta(const FiniteGroup& g) {
  auto group = std::make_shared<const FiniteGroup>(g);
  DeltaStructure<Index> s;
  s.name = "group_delta(" + g.name() + ")";
  s.carrier = g.elements();
  s.delta = [group](Index a, Index b) { return group->op(group->inverse(a), b); };
  s.weak_f = s.delta;
  s.weak_g = [group](Index u, Index b) { return group->op(b, group->inverse(u)); };
  return s;
}

DeltaStructure<Index> relabeled_delta(const FiniteGroup& g, std::vector<Index> sigma) {
  const std::size_t n = g.order();
  if (sigma.size() != n) throw InvalidArgument("relabeling has wrong length");
  std::vector<Index> sigma_inv(n, static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] >= n || sigma_inv[sigma[i]] != n) {
      throw InvalidArgument("relabeling is not a bijection");
    }
    sigma_inv[sigma[i]] = static_cast<Index>(i);
  }
  struct Data {
    FiniteGroup group;
    std::vector<Index> sigma;
    std::vector<Index> sigma_inv;
  };
  auto data = std::make_shared<const Data>(Data{g, std::move(sigma), std::move(sigma_inv)});

  DeltaStructure<Index> s;
  s.name = "relabeled_delta(" + g.name() + ")";
  s.carrier = g.elements();
  s.delta = [data](Index a, Index b) {
    return data->sigma[data->group.op(data->group.inverse(a), b)];
  };
  s.weak_f = [data](Index u, Index v) {
    const auto& G = data->group;
    return data->sigma[G.op(G.inverse(data->sigma_inv[u]), data->sigma_inv[v])];
  };
  s.weak_g = [data](Index u, Index b) {
    const auto& G = data->group;
    return G.op(b, G.inverse(data->sigma_inv[u]));
  };
  return s;
}

std::vector<Index> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Index> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Index{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(sigma[i - 1], sigma[uniform_index(rng, i)]);
  }
  return sigma;
}

}  // namespace ruzsa
