#ifndef RUZSA_DELTA_CORE_HPP_
#define RUZSA_DELTA_CORE_HPP_

// Abstract difference structures (X, Delta), the set-difference operator
// Delta(A, B), the choice functions (f, g) and the injection
//
//   i : Delta(C, A) x B -> Delta(B, C) x Delta(B, A),
//   i(x, b) = (Delta(b, f(x)), Delta(b, g(x))),
//
// together with exhaustive and sampled checks of the two axioms
//
//   (1) Delta(Delta(a, b), Delta(a, c)) = Delta(b, c),
//   (2) z -> Delta(z, a) is injective for every a,
//
// and of their weak forms with companion operations F and G.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruzsa/errors.hpp"
#include "ruzsa/random.hpp"

namespace ruzsa {

/// Elements only need equality and a canonical total order.
template <typename E>
concept Element = std::totally_ordered<E> && std::copyable<E>;

template <Element E>
struct DeltaStructure {
  using value_type = E;
  using BinaryOp = std::function<E(const E&, const E&)>;
  using Sampler = std::function<E(Rng&)>;

  std::string name;
  /// Absent for structures on a continuous or otherwise non-enumerable set.
  std::optional<std::vector<E>> carrier;
  BinaryOp delta;
  std::optional<BinaryOp> weak_f;
  std::optional<BinaryOp> weak_g;
  /// Draws a random element; used by sampled checks when there is no carrier.
  std::optional<Sampler> sampler;

  E operator()(const E& a, const E& b) const { return delta(a, b); }
  bool has_carrier() const { return carrier.has_value(); }
  bool has_weak_pair() const { return weak_f.has_value() && weak_g.has_value(); }
};

/// Deduplicated set of elements kept in canonical (ascending) order.
template <Element E>
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<E> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  FiniteSet(std::initializer_list<E> members) : FiniteSet(std::vector<E>(members)) {}

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const E& x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
  }
  const std::vector<E>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<E> members_;
};

namespace detail {

template <Element E>
void require_non_empty(const FiniteSet<E>& s, const char* label) {
  if (s.empty()) {
    throw EmptySetError(std::string("set ") + label + " must be non-empty");
  }
}

}  // namespace detail

/// Delta(A, B) = { Delta(a, b) : a in A, b in B }.
template <Element E>
FiniteSet<E> delta_set(const DeltaStructure<E>& s, const FiniteSet<E>& a,
                       const FiniteSet<E>& b) {
  detail::require_non_empty(a, "A");
  detail::require_non_empty(b, "B");
  std::vector<E> image;
  image.reserve(a.size() * b.size());
  for (const E& x : a) {
    for (const E& y : b) image.push_back(s.delta(x, y));
  }
  return FiniteSet<E>(std::move(image));
}

/// Choice functions f : Delta(C, A) -> C and g : Delta(C, A) -> A with
/// x = Delta(f(x), g(x)).
template <Element E>
struct Section {
  FiniteSet<E> domain;
  std::map<E, std::pair<E, E>> assignment;

  const E& f(const E& x) const { return assignment.at(x).first; }
  const E& g(const E& x) const { return assignment.at(x).second; }
};

/// Among all preimages (c, a) of x the lexicographically smallest is chosen.
template <Element E>
Section<E> build_section(const DeltaStructure<E>& s, const FiniteSet<E>& c,
                         const FiniteSet<E>& a) {
  detail::require_non_empty(c, "C");
  detail::require_non_empty(a, "A");
  Section<E> section;
  std::vector<E> domain;
  // C and A iterate in ascending order, so the first hit is the smallest pair.
  for (const E& ci : c) {
    for (const E& ai : a) {
      const E x = s.delta(ci, ai);
      if (section.assignment.emplace(x, std::make_pair(ci, ai)).second) {
        domain.push_back(x);
      }
    }
  }
  section.domain = FiniteSet<E>(std::move(domain));
  return section;
}

template <Element E>
struct InjectionWitness {
  struct Entry {
    E x;
    E b;
    E c;
    E d;
  };
  using Key = std::pair<E, E>;

  /// Sorted by (x, b).
  std::vector<Entry> entries;
  std::size_t source_size = 0;
  bool is_injective = true;
  /// Two distinct keys with the same value; set iff is_injective is false.
  std::optional<std::pair<Key, Key>> collision;
};

template <Element E>
InjectionWitness<E> build_injection(const DeltaStructure<E>& s, const FiniteSet<E>& a,
                                    const FiniteSet<E>& b, const FiniteSet<E>& c) {
  detail::require_non_empty(b, "B");
  const Section<E> section = build_section(s, c, a);

  InjectionWitness<E> witness;
  witness.source_size = section.domain.size() * b.size();
  witness.entries.reserve(witness.source_size);
  std::map<std::pair<E, E>, typename InjectionWitness<E>::Key> seen;
  for (const E& x : section.domain) {
    const auto& [fx, gx] = section.assignment.at(x);
    for (const E& bi : b) {
      typename InjectionWitness<E>::Entry entry{x, bi, s.delta(bi, fx), s.delta(bi, gx)};
      auto [it, inserted] = seen.emplace(std::make_pair(entry.c, entry.d), std::make_pair(x, bi));
      if (!inserted && witness.is_injective) {
        witness.is_injective = false;
        witness.collision = std::make_pair(it->second, std::make_pair(x, bi));
      }
      witness.entries.push_back(std::move(entry));
    }
  }
  return witness;
}

template <Element E>
struct RuzsaResult {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool holds = false;
  InjectionWitness<E> witness;
};

/// |Delta(C, A)| |B| <= |Delta(B, C)| |Delta(B, A)| together with its witness.
template <Element E>
RuzsaResult<E> ruzsa_inequality(const DeltaStructure<E>& s, const FiniteSet<E>& a,
                                const FiniteSet<E>& b, const FiniteSet<E>& c) {
  RuzsaResult<E> result;
  result.witness = build_injection(s, a, b, c);
  result.lhs = delta_set(s, c, a).size() * b.size();
  result.rhs = delta_set(s, b, c).size() * delta_set(s, b, a).size();
  result.holds = result.lhs <= result.rhs;
  return result;
}

// ---------------------------------------------------------------------------
// Axiom checks.

struct CheckMode {
  enum class Kind { kAuto, kExhaustive, kSampled };

  Kind kind = Kind::kAuto;
  std::size_t count = 100000;
  std::uint64_t seed = 0;

  /// Carriers up to this size are checked exhaustively in automatic mode.
  static constexpr std::size_t kExhaustiveLimit = 64;

  static CheckMode exhaustive() { return {Kind::kExhaustive, 0, 0}; }
  static CheckMode sampled(std::size_t count, std::uint64_t seed) {
    return {Kind::kSampled, count, seed};
  }
  static CheckMode automatic(std::size_t count, std::uint64_t seed) {
    return {Kind::kAuto, count, seed};
  }
};

inline const char* to_string(CheckMode::Kind kind) {
  switch (kind) {
    case CheckMode::Kind::kAuto:
      return "auto";
    case CheckMode::Kind::kExhaustive:
      return "exhaustive";
    case CheckMode::Kind::kSampled:
      return "sampled";
  }
  return "unknown";
}

template <Element E>
struct Axiom1Report {
  bool ok = true;
  CheckMode mode;  // resolved, never kAuto
  std::size_t checked = 0;
  std::optional<std::array<E, 3>> counterexample;  // (a, b, c)
};

template <Element E>
struct Axiom2Report {
  bool ok = true;
  CheckMode mode;
  std::size_t checked = 0;
  std::optional<std::array<E, 3>> counterexample;  // (a, z, z'), z != z'
};

template <Element E>
struct WeakAxiomReport {
  bool ok1 = true;
  bool ok2 = true;
  CheckMode mode;
  std::size_t checked = 0;
  std::optional<std::array<E, 3>> counterexample1;  // (a, b, c)
  std::optional<std::array<E, 3>> counterexample2;  // (b, a, a'), a != a'
};

namespace detail {

template <Element E>
CheckMode resolve_mode(const DeltaStructure<E>& s, CheckMode mode) {
  if (mode.kind == CheckMode::Kind::kAuto) {
    const bool small = s.carrier && s.carrier->size() <= CheckMode::kExhaustiveLimit;
    mode.kind = small ? CheckMode::Kind::kExhaustive : CheckMode::Kind::kSampled;
  }
  if (mode.kind == CheckMode::Kind::kExhaustive && !s.carrier) {
    throw MissingCarrierError("exhaustive check on '" + s.name + "' requires an enumerable carrier");
  }
  if (mode.kind == CheckMode::Kind::kSampled) {
    if (!s.carrier && !s.sampler) {
      throw MissingCarrierError("sampled check on '" + s.name + "' requires a carrier or a sampler");
    }
    if (s.carrier && s.carrier->empty()) {
      throw EmptySetError("carrier of '" + s.name + "' is empty");
    }
  }
  return mode;
}

template <Element E>
E draw(const DeltaStructure<E>& s, Rng& rng) {
  if (s.carrier) return (*s.carrier)[uniform_index(rng, s.carrier->size())];
  return (*s.sampler)(rng);
}

/// Calls visit(a, b, c) on every triple (exhaustive) or on mode.count random
/// triples; stops early when visit returns false.
template <Element E, typename Visit>
std::size_t for_each_triple(const DeltaStructure<E>& s, const CheckMode& mode, Visit&& visit) {
  std::size_t checked = 0;
  if (mode.kind == CheckMode::Kind::kExhaustive) {
    const auto& xs = *s.carrier;
    for (const E& a : xs) {
      for (const E& b : xs) {
        for (const E& c : xs) {
          ++checked;
          if (!visit(a, b, c)) return checked;
        }
      }
    }
    return checked;
  }
  Rng rng = make_rng(mode.seed);
  for (std::size_t i = 0; i < mode.count; ++i) {
    const E a = draw(s, rng);
    const E b = draw(s, rng);
    const E c = draw(s, rng);
    ++checked;
    if (!visit(a, b, c)) return checked;
  }
  return checked;
}

/// Searches for u != v with h(u, fixed) == h(v, fixed) over every fixed
/// element. Returns (fixed, u, v).
template <Element E, typename Map>
std::optional<std::array<E, 3>> find_non_injective(const DeltaStructure<E>& s,
                                                   const CheckMode& mode, Map&& h,
                                                   std::size_t& checked) {
  if (mode.kind == CheckMode::Kind::kExhaustive) {
    const auto& xs = *s.carrier;
    for (const E& fixed : xs) {
      std::map<E, E> preimage;
      for (const E& u : xs) {
        ++checked;
        auto [it, inserted] = preimage.emplace(h(u, fixed), u);
        if (!inserted && !(it->second == u)) {
          return std::array<E, 3>{fixed, it->second, u};
        }
      }
    }
    return std::nullopt;
  }
  Rng rng = make_rng(mode.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < mode.count; ++i) {
    const E fixed = draw(s, rng);
    const E u = draw(s, rng);
    const E v = draw(s, rng);
    ++checked;
    if (!(u == v) && h(u, fixed) == h(v, fixed)) return std::array<E, 3>{fixed, u, v};
  }
  return std::nullopt;
}

}  // namespace detail

template <Element E>
Axiom1Report<E> check_axiom1(const DeltaStructure<E>& s, CheckMode mode = {}) {
  Axiom1Report<E> report;
  report.mode = detail::resolve_mode(s, mode);
  report.checked = detail::for_each_triple(s, report.mode, [&](const E& a, const E& b, const E& c) {
    if (s.delta(s.delta(a, b), s.delta(a, c)) == s.delta(b, c)) return true;
    report.ok = false;
    report.counterexample = std::array<E, 3>{a, b, c};
    return false;
  });
  return report;
}

template <Element E>
Axiom2Report<E> check_axiom2(const DeltaStructure<E>& s, CheckMode mode = {}) {
  Axiom2Report<E> report;
  report.mode = detail::resolve_mode(s, mode);
  report.counterexample = detail::find_non_injective(
      s, report.mode, [&](const E& z, const E& a) { return s.delta(z, a); }, report.checked);
  report.ok = !report.counterexample.has_value();
  return report;
}

/// F(Delta(a,b), Delta(a,c)) = Delta(b,c) and injectivity of
/// a -> G(Delta(a,b), b), evaluated on reachable values only.
template <Element E>
WeakAxiomReport<E> check_weak_axioms(const DeltaStructure<E>& s, CheckMode mode = {}) {
  if (!s.has_weak_pair()) {
    throw MissingWeakOperationError("structure '" + s.name + "' has no weak companions F and G");
  }
  WeakAxiomReport<E> report;
  report.mode = detail::resolve_mode(s, mode);
  const auto& f = *s.weak_f;
  const auto& g = *s.weak_g;
  report.checked = detail::for_each_triple(s, report.mode, [&](const E& a, const E& b, const E& c) {
    if (f(s.delta(a, b), s.delta(a, c)) == s.delta(b, c)) return true;
    report.ok1 = false;
    report.counterexample1 = std::array<E, 3>{a, b, c};
    return false;
  });
  report.counterexample2 = detail::find_non_injective(
      s, report.mode, [&](const E& a, const E& b) { return g(s.delta(a, b), b); },
      report.checked);
  report.ok2 = !report.counterexample2.has_value();
  return report;
}

}  // namespace ruzsa

#endif  // RUZSA_DELTA_CORE_HPP_
