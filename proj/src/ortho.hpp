#pragma once

// Ortholattices over dense bounded lattices: validation, blocks, center,
// central decomposition, products, horizontal sums and interval algebras.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "order.hpp"
#include "structure.hpp"

namespace omlkit {

class OrthoLattice {
 public:
  OrthoLattice() = default;
  // Validates the complementation; throws NotInvolutive, NotComplement or
  // NotOrderInverting with the least offending element(s).
  OrthoLattice(BoundedLattice lattice, std::vector<ElementId> perp);

  const BoundedLattice& lattice() const noexcept { return lattice_; }
  const std::vector<ElementId>& perp_map() const noexcept { return perp_; }

  std::size_t size() const noexcept { return lattice_.size(); }
  ElementId bottom() const noexcept { return lattice_.bottom(); }
  ElementId top() const noexcept { return lattice_.top(); }
  bool leq(ElementId x, ElementId y) const noexcept { return lattice_.leq(x, y); }
  ElementId join(ElementId x, ElementId y) const noexcept { return lattice_.join(x, y); }
  ElementId meet(ElementId x, ElementId y) const noexcept { return lattice_.meet(x, y); }
  ElementId perp(ElementId x) const noexcept { return perp_[x]; }
  const std::string& name(ElementId x) const { return lattice_.name(x); }
  std::vector<ElementId> atom_ids() const { return atoms(lattice_); }
  int interval_height(ElementId x, ElementId y) const { return lattice_.chain_height(x, y); }

 private:
  BoundedLattice lattice_;
  std::vector<ElementId> perp_;
};

OrthoLattice ortholattice(BoundedLattice lattice, const std::vector<std::pair<std::string, std::string>>& perp_pairs);

// 2^n as the powerset of {0..n-1}; element names are bit strings "x0x1..".
OrthoLattice boolean_algebra(unsigned n);

// Horizontal sum of k copies of 2^2.
OrthoLattice mo(unsigned k);

struct Block {
  std::vector<ElementId> elements;  // sorted ids
};

// Maximal cliques of the commutation graph, each verified to be a Boolean
// subalgebra. Throws NotOML when the input is not orthomodular.
std::vector<Block> blocks(const OrthoLattice& ol);

bool is_directly_irreducible(const OrthoLattice& ol);

// [0,c] x [0,c'] for central c, with x -> (x ^ c, x ^ c') verified to be an
// isomorphism.
std::pair<OrthoLattice, OrthoLattice> decompose(const OrthoLattice& ol, ElementId c);

OrthoLattice product(std::span<const OrthoLattice> factors);

// Glues orthomodular summands along 0 and 1; interior element x of summand i
// becomes "i.x". The result is verified orthomodular.
OrthoLattice horizontal_sum(std::span<const OrthoLattice> summands);

// [x,y] with z# = x v (z' ^ y); verified orthomodular and isomorphic to
// [0, y ^ x'].
OrthoLattice interval_oml(const OrthoLattice& ol, ElementId x, ElementId y);

std::optional<std::vector<ElementId>> find_ortho_isomorphism(const OrthoLattice& a, const OrthoLattice& b);

// Foulis-Holland: for pairwise commuting x, y, z the distributive identities
// hold. Returns the least failing triple of a pairwise commuting set.
PredicateResult check_foulis_holland(const OrthoLattice& ol);

}  // namespace omlkit
