#pragma once

// Finite bounded lattices stored densely: order bitsets, meet/join tables and
// the cover relation, all computed once at construction.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace omlkit {

using ElementId = std::uint32_t;
using Witness = std::vector<ElementId>;

enum class ErrorCode {
  kParse,
  kUnknownName,
  kNonTotalPerp,
  kNotALattice,
  kNoBounds,
  kCycleDetected,
  kNotComparable,
  kNotBelowJoin,
  kNotOrderInverting,
  kNotInvolutive,
  kNotComplement,
  kNotOml,
  kNotCentral,
  kTooLarge,
  kRowsTooSmall,
  kDivisionByZero,
  kDimensionMismatch,
  kZeroVector,
  kDependentInput,
  kInvalidArgument,
  kInternal,
};

const char* error_code_name(ErrorCode code);

// All structural failures are reported through this exception; `witness`
// carries the offending element names when there are any.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> witness = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::string> witness_;
};

struct LatticeLimits {
  std::size_t max_elements = 4096;
};

// Row-major square bit matrix; row x holds the up-set (or any relation) of x.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }
  bool test(std::size_t r, std::size_t c) const noexcept {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) noexcept { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept { return {bits_.data() + r * words_, words_}; }
  std::span<std::uint64_t> row(std::size_t r) noexcept { return {bits_.data() + r * words_, words_}; }
  std::size_t row_count(std::size_t r) const noexcept;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class BoundedLattice {
 public:
  BoundedLattice() = default;

  std::size_t size() const noexcept { return data_ ? data_->names.size() : 0; }
  ElementId bottom() const noexcept { return data_->bottom; }
  ElementId top() const noexcept { return data_->top; }

  bool leq(ElementId x, ElementId y) const noexcept { return data_->up.test(x, y); }
  bool lt(ElementId x, ElementId y) const noexcept { return x != y && leq(x, y); }
  bool comparable(ElementId x, ElementId y) const noexcept { return leq(x, y) || leq(y, x); }
  ElementId meet(ElementId x, ElementId y) const noexcept { return data_->meet[x * size() + y]; }
  ElementId join(ElementId x, ElementId y) const noexcept { return data_->join[x * size() + y]; }
  bool covers(ElementId x, ElementId y) const noexcept { return data_->cover.test(x, y); }

  const std::string& name(ElementId x) const { return data_->names[x]; }
  const std::vector<std::string>& names() const noexcept { return data_->names; }
  std::optional<ElementId> find(const std::string& name) const;
  ElementId id(const std::string& name) const;

  // Cover pairs (a, b), a <. b, sorted lexicographically by id.
  const std::vector<std::pair<ElementId, ElementId>>& cover_pairs() const noexcept { return data_->cover_list; }
  const std::vector<ElementId>& upper_covers(ElementId x) const noexcept { return data_->upper[x]; }
  const std::vector<ElementId>& lower_covers(ElementId x) const noexcept { return data_->lower[x]; }
  const BitMatrix& up_sets() const noexcept { return data_->up; }

  // Longest chain from x to y counted in covers; -1 when x is not below y.
  int chain_height(ElementId x, ElementId y) const;

  // Builds from a relation that is already reflexive and transitive; rows of
  // `up` are up-sets. Verifies antisymmetry, bounds and lattice-ness.
  static BoundedLattice from_order(std::vector<std::string> names, BitMatrix up, const LatticeLimits& limits = {});

 private:
  struct Data {
    std::vector<std::string> names;
    BitMatrix up;
    BitMatrix cover;
    std::vector<std::uint16_t> meet;
    std::vector<std::uint16_t> join;
    std::vector<std::pair<ElementId, ElementId>> cover_list;
    std::vector<std::vector<ElementId>> upper;
    std::vector<std::vector<ElementId>> lower;
    std::vector<ElementId> topo;  // a linear extension
    ElementId bottom = 0;
    ElementId top = 0;
  };
  std::shared_ptr<const Data> data_;
};

// Reflexive-transitive closure of a Hasse diagram, then lattice verification.
BoundedLattice lattice_from_covers(const std::vector<std::string>& names,
                                   const std::vector<std::pair<std::string, std::string>>& cover_pairs,
                                   const LatticeLimits& limits = {});

std::vector<ElementId> atoms(const BoundedLattice& lattice);

using Chain = std::vector<ElementId>;

// Every maximal chain, bottom to top, in lexicographic order of id lists.
std::vector<Chain> maximal_chains(const BoundedLattice& lattice);

bool is_chain(const BoundedLattice& lattice, std::span<const ElementId> elements);

std::size_t height(const BoundedLattice& lattice);

struct IntervalView {
  BoundedLattice lattice;
  std::vector<ElementId> parent_ids;  // induced id -> parent id
  ElementId lower = 0;
  ElementId upper = 0;
};

IntervalView interval(const BoundedLattice& lattice, ElementId x, ElementId y);

// Componentwise order on pairs named "(x,y)"; covers change one coordinate
// by a cover.
BoundedLattice lattice_product(const BoundedLattice& a, const BoundedLattice& b, const LatticeLimits& limits = {});

// The sublattice on an explicit element subset closed under meet and join.
BoundedLattice induced_lattice(const BoundedLattice& lattice, std::span<const ElementId> elements);

// Order isomorphism a -> b as an id map, or nullopt. When both unary maps are
// given the isomorphism must also carry `unary_a` onto `unary_b`.
std::optional<std::vector<ElementId>> find_isomorphism(const BoundedLattice& a, const BoundedLattice& b,
                                                       std::span<const ElementId> unary_a = {},
                                                       std::span<const ElementId> unary_b = {});

struct PredicateResult {
  bool holds = true;
  Witness witness;  // least counterexample tuple when !holds
};

struct LatticePredicates {
  PredicateResult modular;
  PredicateResult semimodular;
  PredicateResult dual_semimodular;
  PredicateResult covering;
  PredicateResult atomic;
  PredicateResult atomistic;
  PredicateResult weakly_atomic;
  PredicateResult strongly_atomic;
  PredicateResult distributive;
  PredicateResult complemented;
  PredicateResult relatively_complemented;
};

LatticePredicates predicates(const BoundedLattice& lattice);
PredicateResult check_modular(const BoundedLattice& lattice);
PredicateResult check_distributive(const BoundedLattice& lattice);

}  // namespace omlkit
