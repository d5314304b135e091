#pragma once

// Finite truncations of the Rieger-Nishimura ladder, the atom classes of
// K(ladder), and the checks behind the 2-covering example.

#include <string>
#include <utility>
#include <vector>

#include "kalmbach.hpp"
#include "order.hpp"
#include "report.hpp"

namespace omlkit {

struct GridPos {
  int row = -1;  // -1 marks the artificial top
  int col = -1;
};

struct RnLattice {
  int rows = 0;
  BoundedLattice lattice;
  std::vector<GridPos> coords;  // by element id

  bool is_top(ElementId x) const { return coords[x].row < 0; }
  // Rows r-1, r and the artificial top are the truncation boundary.
  bool on_boundary(ElementId x) const { return is_top(x) || coords[x].row >= rows - 1; }
};

std::string rn_name(int row, int col);

// Elements a_ij (0 <= i <= rows, 0 <= j <= 3, no a_00) plus a top covering
// the unique maximal grid element. Covers: a_ij <. a_i,j+1 and
// a_ij <. a_i+1,j-1.
RnLattice rn_lattice(int rows);

// Number of covers at a_ij in the infinite ladder.
int untruncated_degree(int row, int col);

enum class AtomKind { kInternal, kExternal, kExceptional, kArtifact };

const char* atom_kind_name(AtomKind kind);

struct AtomInfo {
  ElementId atom = 0;  // id in K
  ElementId lower = 0;  // cover lower <. upper in the ladder
  ElementId upper = 0;
  AtomKind kind = AtomKind::kArtifact;
  bool boundary = false;  // touches the truncation boundary
};

// Every atom of K, in K id order. Requires rows >= 3.
std::vector<AtomInfo> classify_atoms(const RnLattice& rn, const KalmbachOML& k);

std::vector<ElementId> noncommuting_atoms(const KalmbachOML& k, ElementId atom);

struct AtomRoles {
  std::vector<ElementId> red;   // the lower mutually commuting pair, when one exists
  std::vector<ElementId> blue;  // the remaining non-commuting atoms
};

// Splits the non-commuting atoms of `atom` into pairs that commute with each
// other. With two disjoint such pairs the lower one (smaller total rank of
// lower endpoints) is red; otherwise all are blue.
AtomRoles atom_roles(const KalmbachOML& k, ElementId atom);

// The six pairwise joins of the four non-commuting atoms all lie above
// `atom`. Fails with the non-commuting set as witness when it is not of
// size four, otherwise with the first failing pair.
PredicateResult internal_join_check(const KalmbachOML& k, ElementId atom);

// a_ij -> a_i+1,j on rows 0..r-1 is an order embedding preserving covers.
PredicateResult shift_embedding_check(const RnLattice& rn);

struct AtomReport {
  AtomInfo info;
  std::vector<ElementId> noncommuting;
  AtomRoles roles;
  PredicateResult pair_joins;           // meaningful for internal atoms
  std::vector<ElementId> compactness;   // from the non-commuting set
  bool compactness_found = false;
};

struct RnReport {
  RnLattice rn;
  KalmbachOML k;
  PredicateResult orthomodular;
  std::vector<ElementId> center;           // unrestricted
  std::vector<ElementId> boundary_center;  // central elements carrying a boundary term
  bool irreducible = false;                // center == {0,1}
  bool irreducible_interior = false;       // only boundary-generated central elements
  PredicateResult covering1;
  PredicateResult covering2;
  PredicateResult covering1_interior;
  PredicateResult covering2_interior;
  std::vector<AtomReport> atoms;           // non-boundary atoms only
  PredicateResult shift_embedding;
};

RnReport rn_report(int rows, const KalmbachLimits& limits = {});

Report rn_report_lines(const RnReport& report);

}  // namespace omlkit
