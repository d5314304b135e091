#pragma once

// Lattice text documents, Hasse-diagram export and the aggregated check run.
//
// Document grammar (a YAML mapping, emitted in flow style):
//   elements: [n1, n2, ...]
//   covers:   [[lo, hi], ...]
//   perp:     {n1: m1, ...}        optional, total when present
//   metadata: {key: value, ...}    optional

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "order.hpp"
#include "ortho.hpp"
#include "report.hpp"

namespace omlkit {

using NamePairs = std::vector<std::pair<std::string, std::string>>;

struct LatticeDocument {
  std::vector<std::string> elements;
  NamePairs covers;
  std::optional<NamePairs> perp;  // in document order
  NamePairs metadata;

  bool operator==(const LatticeDocument&) const = default;
};

// Accepts the YAML grammar above, or the DOT subset written by export_dot.
LatticeDocument parse_lattice(std::string_view text);
std::string emit_lattice(const LatticeDocument& doc);

BoundedLattice document_lattice(const LatticeDocument& doc);
// Throws NonTotalPerp when the document has no perp map.
OrthoLattice document_ortholattice(const LatticeDocument& doc);

LatticeDocument make_document(const BoundedLattice& lattice, NamePairs metadata = {});
LatticeDocument make_document(const OrthoLattice& ol, NamePairs metadata = {});

// digraph with covers as bottom-to-top edges, nodes in element order and the
// perp map as a node attribute.
std::string export_dot(const LatticeDocument& doc);
LatticeDocument parse_dot(std::string_view text);

enum CheckFlags : unsigned {
  kCheckKalmbach = 1u << 0,
};

Report run_checks(const LatticeDocument& doc, unsigned flags = 0);

}  // namespace omlkit
