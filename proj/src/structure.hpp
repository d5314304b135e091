#pragma once

// Generic checks shared by dense ortholattices and the implicit Kalmbach
// structure. Anything modelling OrthoStructure can be fed to them.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "order.hpp"

namespace omlkit {

template <class S>
concept LatticeStructure = requires(const S& s, ElementId x, ElementId y) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.bottom() } -> std::convertible_to<ElementId>;
  { s.top() } -> std::convertible_to<ElementId>;
  { s.leq(x, y) } -> std::same_as<bool>;
  { s.join(x, y) } -> std::convertible_to<ElementId>;
  { s.meet(x, y) } -> std::convertible_to<ElementId>;
  { s.name(x) } -> std::convertible_to<std::string>;
};

template <class S>
concept OrthoStructure = LatticeStructure<S> && requires(const S& s, ElementId x, ElementId y) {
  { s.perp(x) } -> std::convertible_to<ElementId>;
  { s.atom_ids() } -> std::convertible_to<std::vector<ElementId>>;
  { s.interval_height(x, y) } -> std::convertible_to<int>;
};

template <LatticeStructure S>
std::vector<std::string> element_names(const S& s, std::span<const ElementId> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (ElementId id : ids) out.push_back(std::string(s.name(id)));
  return out;
}

template <LatticeStructure S>
ElementId join_all(const S& s, std::span<const ElementId> ids) {
  ElementId acc = s.bottom();
  for (ElementId id : ids) acc = s.join(acc, id);
  return acc;
}

// Least-cardinality S' within `pool` with c <= join(S'); among equal sizes the
// lexicographically least index combination wins.
template <LatticeStructure S>
std::vector<ElementId> compactness_witness(const S& s, ElementId c, std::span<const ElementId> pool) {
  std::vector<ElementId> sorted(pool.begin(), pool.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!s.leq(c, join_all(s, std::span<const ElementId>(sorted)))) {
    throw Error(ErrorCode::kNotBelowJoin, "element is not below the join of the set", {std::string(s.name(c))});
  }
  const std::size_t n = sorted.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      ElementId acc = s.bottom();
      for (std::size_t i : idx) acc = s.join(acc, sorted[i]);
      if (s.leq(c, acc)) {
        std::vector<ElementId> out;
        for (std::size_t i : idx) out.push_back(sorted[i]);
        return out;
      }
      // next combination in lexicographic order
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  throw Error(ErrorCode::kInternal, "compactness search exhausted");
}

// x <= y  implies  x v (x' ^ y) = y, checked over all pairs in id order.
template <OrthoStructure S>
PredicateResult is_orthomodular(const S& s) {
  const ElementId n = static_cast<ElementId>(s.size());
  for (ElementId x = 0; x < n; ++x) {
    const ElementId xp = s.perp(x);
    for (ElementId y = 0; y < n; ++y) {
      if (s.leq(x, y) && s.join(x, s.meet(xp, y)) != y) return {false, {x, y}};
    }
  }
  return {};
}

template <OrthoStructure S>
ElementId commutator(const S& s, ElementId x, ElementId y) {
  const ElementId xp = s.perp(x);
  const ElementId yp = s.perp(y);
  return s.meet(s.meet(s.join(x, y), s.join(x, yp)), s.meet(s.join(xp, y), s.join(xp, yp)));
}

template <OrthoStructure S>
bool commutes(const S& s, ElementId x, ElementId y) {
  return commutator(s, x, y) == s.bottom();
}

// Elements commuting with every element.
template <OrthoStructure S>
std::vector<ElementId> center(const S& s) {
  std::vector<ElementId> out;
  const ElementId n = static_cast<ElementId>(s.size());
  for (ElementId x = 0; x < n; ++x) {
    bool central = true;
    for (ElementId y = 0; y < n && central; ++y) central = commutes(s, x, y);
    if (central) out.push_back(x);
  }
  return out;
}

// Elements commuting with every atom. In an atomistic OML (every finite OML)
// the commutant of x is a subalgebra, so this coincides with center().
template <OrthoStructure S>
std::vector<ElementId> center_via_atoms(const S& s) {
  const auto as = s.atom_ids();
  std::vector<ElementId> out;
  const ElementId n = static_cast<ElementId>(s.size());
  for (ElementId x = 0; x < n; ++x) {
    bool central = std::all_of(as.begin(), as.end(), [&](ElementId a) { return commutes(s, x, a); });
    if (central) out.push_back(x);
  }
  return out;
}

inline bool trivial_center(std::span<const ElementId> centre) { return centre.size() <= 2; }

// For every atom a and element x, [x, x v a] has height at most n. The
// witness is the least (a, x) in (atom id, element id) order.
template <OrthoStructure S>
PredicateResult has_n_covering(const S& s, int n, const std::vector<ElementId>& skip_elements = {}) {
  const auto as = s.atom_ids();
  std::vector<bool> skip(s.size(), false);
  for (ElementId e : skip_elements) skip[e] = true;
  for (ElementId a : as) {
    for (ElementId x = 0; x < s.size(); ++x) {
      if (skip[x]) continue;
      const ElementId top = s.join(x, a);
      if (skip[top]) continue;
      if (s.interval_height(x, top) > n) return {false, {a, x}};
    }
  }
  return {};
}

}  // namespace omlkit
