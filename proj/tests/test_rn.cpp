#include <doctest.h>

#include <algorithm>
#include <map>

#include "corpus.hpp"
#include "rieger_nishimura.hpp"
#include "structure.hpp"

using namespace omlkit;

namespace {

std::vector<std::string> names_of(const BoundedLattice& L, const std::vector<ElementId>& ids) {
  std::vector<std::string> out;
  for (ElementId x : ids) out.push_back(L.name(x));
  std::sort(out.begin(), out.end());
  return out;
}

const ReportLine* line(const Report& r, const std::string& check) {
  for (const auto& l : r.lines())
    if (l.check == check) return &l;
  return nullptr;
}

}  // namespace

TEST_SUITE("rn") {
  TEST_CASE("truncated ladder shape") {
    for (int r = 1; r <= 6; ++r) CHECK(rn_lattice(r).lattice.size() == static_cast<std::size_t>(4 * r + 4));
    const auto one = rn_lattice(1).lattice;
    CHECK(names_of(one, [&] {
            std::vector<ElementId> all(one.size());
            for (ElementId i = 0; i < one.size(); ++i) all[i] = i;
            return all;
          }()) == std::vector<std::string>{"1", "a01", "a02", "a03", "a10", "a11", "a12", "a13"});
    for (int r = 1; r <= 4; ++r) {
      const auto L = rn_lattice(r).lattice;
      CHECK(names_of(L, atoms(L)) == std::vector<std::string>{"a02", "a10"});
      CHECK(L.covers(L.id("a02"), L.id("a11")));
      CHECK_FALSE(L.leq(L.id("a02"), L.id("a10")));
      CHECK_FALSE(L.leq(L.id("a10"), L.id("a02")));
    }
    CHECK_THROWS_AS(rn_lattice(0), Error);
  }

  TEST_CASE("degrees in the infinite ladder") {
    CHECK(untruncated_degree(2, 1) == 4);
    CHECK(untruncated_degree(2, 2) == 4);
    CHECK(untruncated_degree(2, 0) == 2);
    CHECK(untruncated_degree(2, 3) == 2);
  }

  TEST_CASE("atom classification") {
    const auto rn = rn_lattice(3);
    const auto k = kalmbach(rn.lattice);
    const auto atoms_info = classify_atoms(rn, k);
    CHECK(atoms_info.size() == rn.lattice.cover_pairs().size());
    std::map<std::pair<std::string, std::string>, AtomKind> kind;
    for (const auto& a : atoms_info) kind[{rn.lattice.name(a.lower), rn.lattice.name(a.upper)}] = a.kind;
    CHECK(std::count_if(atoms_info.begin(), atoms_info.end(),
                        [](const AtomInfo& a) { return a.kind == AtomKind::kExceptional; }) == 5);
    CHECK(kind.at({"a02", "a03"}) == AtomKind::kExceptional);
    CHECK(kind.at({"a10", "a11"}) == AtomKind::kExceptional);
    CHECK(kind.at({"a21", "a22"}) == AtomKind::kInternal);
    CHECK(kind.at({"a11", "a12"}) == AtomKind::kInternal);
    CHECK(kind.at({"a20", "a21"}) == AtomKind::kExternal);

    CHECK_THROWS_AS(classify_atoms(rn_lattice(2), kalmbach(rn_lattice(2).lattice)), Error);
    try {
      classify_atoms(rn_lattice(2), kalmbach(rn_lattice(2).lattice));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRowsTooSmall);
    }
  }

  TEST_CASE("classification is stable as rows grow") {
    auto kinds = [](int rows) {
      const auto rn = rn_lattice(rows);
      const auto k = kalmbach(rn.lattice);
      std::map<std::pair<std::string, std::string>, AtomKind> out;
      for (const auto& a : classify_atoms(rn, k))
        if (!a.boundary) out[{rn.lattice.name(a.lower), rn.lattice.name(a.upper)}] = a.kind;
      return out;
    };
    const auto k3 = kinds(3), k4 = kinds(4);
    for (const auto& [edge, kind] : k3) {
      CAPTURE(edge.first);
      CAPTURE(edge.second);
      REQUIRE(k4.count(edge));
      CHECK(k4.at(edge) == kind);
    }
  }

  TEST_CASE("non-commuting atoms and internal joins") {
    const auto rn = rn_lattice(3);
    const auto k = kalmbach(rn.lattice);
    for (const auto& a : classify_atoms(rn, k)) {
      if (a.boundary) continue;
      const auto nc = noncommuting_atoms(k, a.atom);
      if (a.kind == AtomKind::kInternal) {
        CHECK(nc.size() == 4);
        CHECK(internal_join_check(k, a.atom).holds);
        const auto roles = atom_roles(k, a.atom);
        CHECK(roles.red.size() == 2);
        CHECK(roles.blue.size() == 2);
      }
      if (a.kind == AtomKind::kExternal) CHECK(nc.size() == 6);
    }
    // Atoms of a chain's Boolean algebra commute with everything.
    const auto kc = kalmbach(corpus::chain(5));
    for (ElementId a : kc.atom_ids()) CHECK(noncommuting_atoms(kc, a).empty());
  }

  TEST_CASE("commuting orthogonal pair does not dominate the atom") {
    const auto rn = rn_lattice(3);
    const auto k = kalmbach(rn.lattice);
    for (const auto& a : classify_atoms(rn, k)) {
      if (a.kind != AtomKind::kInternal || a.boundary) continue;
      const auto nc = noncommuting_atoms(k, a.atom);
      for (ElementId p : k.atom_ids()) {
        if (p == a.atom || std::find(nc.begin(), nc.end(), p) != nc.end()) continue;
        for (ElementId q : k.atom_ids()) {
          if (q <= p || q == a.atom || std::find(nc.begin(), nc.end(), q) != nc.end()) continue;
          if (!commutes(k, p, q)) continue;
          CHECK_FALSE(k.leq(a.atom, k.join(p, q)));
        }
      }
      break;
    }
  }

  TEST_CASE("shift embedding") {
    for (int r = 1; r <= 5; ++r) CHECK(shift_embedding_check(rn_lattice(r)).holds);
  }

  TEST_CASE("report at three rows") {
    const auto rep = rn_report(3);
    CHECK(rep.k.size() == 3584);
    CHECK(rep.orthomodular.holds);
    CHECK(rep.irreducible_interior);
    CHECK_FALSE(rep.covering1.holds);
    CHECK_FALSE(rep.covering1.witness.empty());
    CHECK(rep.covering2.holds);
    CHECK(rep.covering2_interior.holds);
    for (const auto& a : rep.atoms) {
      CHECK(a.compactness_found);
      CHECK(a.compactness.size() <= 2);
    }
    const auto lines = rn_report_lines(rep);
    CHECK(lines.all_pass());
    REQUIRE(line(lines, "covering_1_fails") != nullptr);
    CHECK(line(lines, "covering_1_fails")->verdict == "true");
    CHECK(line(lines, "covering_1")->verdict == "false");
    CHECK_THROWS_AS(rn_report(2), Error);
  }
}
