#pragma once

// K(L): even-length strictly increasing sequences of a finite bounded lattice.
// The structure is implicit: elements are stored sorted, joins come from an
// interval-merging rule, so no quadratic tables are needed.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "order.hpp"
#include "ortho.hpp"
#include "structure.hpp"

namespace omlkit {

class KSeq {
 public:
  static constexpr std::size_t kCapacity = 32;

  KSeq() = default;
  // Validates even length and strict increase in `base`.
  static KSeq from_terms(const BoundedLattice& base, std::span<const ElementId> terms);

  std::size_t size() const noexcept { return n_; }
  std::size_t pairs() const noexcept { return n_ / 2; }
  bool empty() const noexcept { return n_ == 0; }
  ElementId operator[](std::size_t i) const noexcept { return t_[i]; }
  ElementId lo(std::size_t pair) const noexcept { return t_[2 * pair]; }
  ElementId hi(std::size_t pair) const noexcept { return t_[2 * pair + 1]; }
  std::vector<ElementId> terms() const { return {t_.begin(), t_.begin() + n_}; }

  void push_back(ElementId x);
  void pop_back() noexcept { --n_; }

  // Shorter sequences first, then lexicographic on ids.
  std::strong_ordering operator<=>(const KSeq& other) const noexcept;
  bool operator==(const KSeq& other) const noexcept;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint16_t, kCapacity> t_{};
};

std::string kseq_name(const BoundedLattice& base, const KSeq& x);

bool kleq(const BoundedLattice& base, const KSeq& x, const KSeq& y);
KSeq kperp(const BoundedLattice& base, const KSeq& x);
// Least upper bound: pairs of x and y are grouped, and two groups are merged
// while their hulls [meet of lows, join of highs] fail to be strictly
// separated. The sorted hulls form the join.
KSeq kjoin(const BoundedLattice& base, const KSeq& x, const KSeq& y);
KSeq kmeet(const BoundedLattice& base, const KSeq& x, const KSeq& y);

struct KalmbachLimits {
  std::size_t max_elements = 200000;
};

class KalmbachOML {
 public:
  KalmbachOML() = default;
  KalmbachOML(BoundedLattice base, std::vector<KSeq> elements);

  const BoundedLattice& base() const noexcept { return base_; }
  const std::vector<KSeq>& elements() const noexcept { return elems_; }
  const KSeq& seq(ElementId x) const noexcept { return elems_[x]; }
  std::optional<ElementId> find(const KSeq& s) const noexcept;
  ElementId id(const KSeq& s) const;

  std::size_t size() const noexcept { return elems_.size(); }
  ElementId bottom() const noexcept { return 0; }
  ElementId top() const noexcept { return top_; }
  bool leq(ElementId x, ElementId y) const noexcept { return kleq(base_, elems_[x], elems_[y]); }
  ElementId join(ElementId x, ElementId y) const;
  ElementId meet(ElementId x, ElementId y) const;
  ElementId perp(ElementId x) const noexcept { return perp_[x]; }
  std::string name(ElementId x) const { return kseq_name(base_, elems_[x]); }
  const std::vector<ElementId>& atom_ids() const noexcept { return atoms_; }
  // Height of [x,y]: [x,y] is isomorphic to [0, y ^ x'], which splits into
  // a product of K over the intervals of y ^ x'; each factor contributes the
  // longest chain of the corresponding interval of the base lattice.
  int interval_height(ElementId x, ElementId y) const;

  // Dense copy with the same element ids; bounded by `limits`.
  OrthoLattice to_ortholattice(const LatticeLimits& limits = {}) const;

 private:
  BoundedLattice base_;
  std::vector<KSeq> elems_;
  std::vector<ElementId> perp_;
  std::vector<ElementId> atoms_;
  ElementId top_ = 0;
};

// Number of even-length chains of `base` (including the empty one),
// saturating at cap + 1.
std::size_t count_even_chains(const BoundedLattice& base, std::size_t cap);

KalmbachOML kalmbach(const BoundedLattice& base, const KalmbachLimits& limits = {});

// Joins prefix truncations x^n v y^n and checks they increase to x v y.
KSeq kjoin_by_truncation(const KalmbachOML& k, const KSeq& x, const KSeq& y);

// Least element of the upper-bound set, by exhaustive search.
ElementId kjoin_bruteforce(const KalmbachOML& k, ElementId x, ElementId y);

// Union of [x_2i, x_2i+1) in a chain; ids of the chain lattice.
std::vector<ElementId> phi_chain(const BoundedLattice& chain, const KSeq& x);

PredicateResult katoms_check(const KalmbachOML& k);
PredicateResult kblocks_check(const KalmbachOML& k);
PredicateResult kcommute_check(const KalmbachOML& k);

// True when the union of the term sets of x and y is a chain of the base.
bool union_is_chain(const BoundedLattice& base, const KSeq& x, const KSeq& y);

}  // namespace omlkit
