#ifndef RUZSA_GROUP_CATALOG_HPP_
#define RUZSA_GROUP_CATALOG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ruzsa/delta_core.hpp"

namespace ruzsa {

/// Finite group on the dense indices 0..order-1 with a precomputed Cayley
/// table. Index order is the canonical element order.
class FiniteGroup {
 public:
  using Index = std::uint32_t;

  /// `table[a * order + b]` is a*b. The inverse table is derived; throws
  /// InvalidArgument if the table is not a Latin square with the given identity.
  FiniteGroup(std::string name, std::size_t order, std::vector<Index> table, Index identity);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Index identity() const { return identity_; }
  Index op(Index a, Index b) const { return table_[a * order_ + b]; }
  Index inverse(Index a) const { return inverse_[a]; }
  bool is_abelian() const;
  std::vector<Index> elements() const;

 private:
  std::string name_;
  std::size_t order_;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  Index identity_;
};

struct GroupLawReport {
  bool ok = true;
  /// Empty when ok; otherwise names the first failing law and elements.
  std::string failure;
};

/// Exhaustive associativity, identity and inverse check (O(order^3)).
GroupLawReport verify_group_laws(const FiniteGroup& g);

inline constexpr std::size_t kMaxGroupOrder = 4096;

FiniteGroup cyclic(std::size_t n);
/// Symmetries of the regular n-gon: index k + n*j stands for r^k s^j.
FiniteGroup dihedral(std::size_t n);
/// Permutations of {0..n-1} in lexicographic order; (a*b)(i) = a(b(i)).
FiniteGroup symmetric(std::size_t n);
/// Upper unitriangular 3x3 matrices over Z_p. (a, b, c) is the matrix with
/// a, b on the superdiagonal and c in the corner, stored at a*p^2 + b*p + c.
FiniteGroup heisenberg_mod(std::size_t p);
/// Index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Resolves "cyclic:6", "dihedral:4", "symmetric:3", "heisenberg:3",
/// "product:cyclic:2,cyclic:3". Throws InvalidArgument otherwise.
FiniteGroup parse_fixture(std::string_view spec);

/// Delta(a, b) = a^-1 b, with F = Delta and G(u, b) = b u^-1 (so G(Delta(a,b), b) = a).
DeltaStructure<FiniteGroup::Index> group_delta(const FiniteGroup& g);

/// Delta(a, b) = sigma(a^-1 b). Satisfies the weak axioms with
/// F(u, v) = sigma(sigma^-1(u)^-1 sigma^-1(v)) and G(u, b) = b sigma^-1(u)^-1,
/// while plain axiom 1 usually fails.
DeltaStructure<FiniteGroup::Index> relabeled_delta(const FiniteGroup& g,
                                                   std::vector<FiniteGroup::Index> sigma);

/// Uniformly random permutation of 0..n-1.
std::vector<FiniteGroup::Index> random_permutation(std::size_t n, Rng& rng);

}  // namespace ruzsa

#endif  // RUZSA_GROUP_CATALOG_HPP_
