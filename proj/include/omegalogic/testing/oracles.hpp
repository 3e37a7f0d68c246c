#pragma once

// Reference implementations written independently of the library routines
// they check. Each is the slow, obvious version.

#include <algorithm>
#include <limits>

#include "../fixpoint.hpp"
#include "../omegaproof.hpp"

namespace omegalogic::testing {

// Kleene-Brouwer order restated as lexicographic order on positions padded
// with +∞: an extension sorts before its prefix.
inline bool reference_kb_less(const Position& s, const Position& t) {
  constexpr auto inf = std::numeric_limits<std::uint64_t>::max();
  Position a = s, b = t;
  a.push_back(inf);
  b.push_back(inf);
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()) && a != b;
}

// Irreflexive, transitive and total on the given elements (cubic brute force).
template <class T, class Lt>
bool is_strict_total_order(const std::vector<T>& xs, Lt&& lt) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (lt(xs[i], xs[i])) return false;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i != j && lt(xs[i], xs[j]) == lt(xs[j], xs[i])) return false;
      if (!lt(xs[i], xs[j])) continue;
      for (std::size_t k = 0; k < xs.size(); ++k)
        if (lt(xs[j], xs[k]) && !lt(xs[i], xs[k])) return false;
    }
  }
  return true;
}

// Replaying nodes in the given order, every child is seen before its parent.
inline bool replay_children_first(const OmegaTree& tree, const std::vector<Position>& order) {
  std::set<Position> seen;
  for (const auto& p : order) {
    auto d = tree.node(p);
    if (!d || d->arity.omega) return false;
    for (std::uint64_t i = 0; i < d->arity.n; ++i) {
      Position c = p;
      c.push_back(i);
      if (!seen.count(c)) return false;
    }
    seen.insert(p);
  }
  return seen.size() == tree.table().size();
}

// Least closed superset of `seed` via the forward worklist saturator.
inline std::vector<char> closed_superset(const UniversePtr& u, CutRank rho, const TheorySpec& theory,
                                         const OracleTuple& oracles, const std::vector<char>& seed) {
  return saturate_worklist(u, rho, theory, oracles, &seed);
}

inline bool subset_of(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

// ∃X∀Y(t ∈ X ∨ t ∉ Y) expanded by hand: X over the family, Y over the family
// and the test pool. Returns the first family index that works.
inline std::optional<std::size_t> direct_sigma12_in_or_notin(std::uint64_t t, const std::vector<UPSet>& family,
                                                             const std::vector<UPSet>& testpool) {
  std::vector<UPSet> ys = family;
  ys.insert(ys.end(), testpool.begin(), testpool.end());
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool all = true;
    for (const auto& y : ys) all = all && (family[i].contains(t) || !y.contains(t));
    if (all) return i;
  }
  return std::nullopt;
}

}  // namespace omegalogic::testing
