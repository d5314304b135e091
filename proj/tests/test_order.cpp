#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "order.hpp"
#include "structure.hpp"

using namespace omlkit;

namespace {

ElementId id(const BoundedLattice& L, const char* name) { return L.id(name); }

std::vector<std::string> chain_names(const BoundedLattice& L, const Chain& c) {
  std::vector<std::string> out;
  for (ElementId x : c) out.push_back(L.name(x));
  return out;
}

// Brute-force closure of the cover relation, the oracle for leq.
std::vector<std::vector<bool>> closure_of_covers(const BoundedLattice& L) {
  const std::size_t n = L.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& [a, b] : L.cover_pairs()) r[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

TEST_SUITE("order") {
  TEST_CASE("two-element chain") {
    const auto L = lattice_from_covers({"0", "1"}, {{"0", "1"}});
    CHECK(L.size() == 2);
    CHECK(L.meet(id(L, "0"), id(L, "1")) == id(L, "0"));
    CHECK(L.join(id(L, "0"), id(L, "1")) == id(L, "1"));
    CHECK(height(L) == 1);
  }

  TEST_CASE("diamond M2") {
    const auto L = corpus::m(2);
    const ElementId a = id(L, "a"), b = id(L, "b");
    CHECK(L.join(a, b) == L.top());
    CHECK(L.meet(a, b) == L.bottom());
    CHECK(L.cover_pairs().size() == 4);
    const auto as = atoms(L);
    CHECK(as == std::vector<ElementId>{a, b});
    const auto chains = maximal_chains(L);
    REQUIRE(chains.size() == 2);
    CHECK(chain_names(L, chains[0]) == std::vector<std::string>{"0", "a", "1"});
    CHECK(chain_names(L, chains[1]) == std::vector<std::string>{"0", "b", "1"});
    const auto p = predicates(L);
    CHECK(p.modular.holds);
    CHECK(p.covering.holds);
  }

  TEST_CASE("pentagon N5") {
    const auto L = corpus::n5();
    const auto mod = check_modular(L);
    CHECK_FALSE(mod.holds);
    REQUIRE(mod.witness.size() == 3);
    // The witness is a genuine failure of x <= z => x v (y ^ z) = (x v y) ^ z.
    const ElementId x = mod.witness[0], y = mod.witness[1], z = mod.witness[2];
    CHECK(L.leq(x, z));
    CHECK(L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z));
    const auto chains = maximal_chains(L);
    REQUIRE(chains.size() == 2);
    CHECK(chain_names(L, chains[0]) == std::vector<std::string>{"0", "a", "b", "1"});
    CHECK(chain_names(L, chains[1]) == std::vector<std::string>{"0", "c", "1"});
  }

  TEST_CASE("Boolean cube") {
    const auto L = lattice_product(corpus::m(2), corpus::chain(2));
    CHECK(L.size() == 8);
    CHECK(atoms(L).size() == 3);
    CHECK(L.cover_pairs().size() == 12);
    const auto chains = maximal_chains(L);
    CHECK(chains.size() == 6);
    for (const auto& c : chains) CHECK(c.size() == 4);
    CHECK(height(L) == 3);
    CHECK(predicates(L).distributive.holds);
  }

  TEST_CASE("heights of Boolean algebras") {
    BoundedLattice L = corpus::chain(2);
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK(height(L) == n);
      L = lattice_product(L, corpus::chain(2));
    }
  }

  TEST_CASE("intervals") {
    const auto cube = lattice_product(corpus::m(2), corpus::chain(2));
    const ElementId atom = atoms(cube).front();
    const auto view = interval(cube, atom, cube.top());
    CHECK(view.lattice.size() == 4);
    CHECK(find_isomorphism(view.lattice, corpus::m(2)).has_value());
    const auto point = interval(cube, atom, atom);
    CHECK(point.lattice.size() == 1);
    CHECK(height(point.lattice) == 0);
    CHECK_THROWS_AS(interval(cube, cube.top(), atom), Error);
  }

  TEST_CASE("construction errors") {
    auto code_of = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::kInternal;
    };
    CHECK(code_of([] { lattice_from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}); }) == ErrorCode::kNoBounds);
    CHECK(code_of([] { lattice_from_covers({"0", "a", "1"}, {{"0", "a"}, {"a", "0"}, {"a", "1"}}); }) ==
          ErrorCode::kCycleDetected);
    // Two incomparable minimal upper bounds for a, b.
    CHECK(code_of([] {
            lattice_from_covers({"0", "a", "b", "c", "d", "1"},
                                {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}});
          }) == ErrorCode::kNotALattice);
    CHECK(code_of([] { lattice_from_covers({"0", "1"}, {{"0", "x"}}); }) == ErrorCode::kUnknownName);
  }

  TEST_CASE("corpus invariants") {
    const auto all = corpus::lattices();
    CHECK(all.size() >= 20);
    for (const auto& [name, L] : all) {
      CAPTURE(name);
      CHECK(L.size() <= 8);
      const std::size_t n = L.size();
      // Covers reconstruct the order.
      const auto r = closure_of_covers(L);
      bool same = true;
      for (ElementId i = 0; i < n; ++i)
        for (ElementId j = 0; j < n; ++j) same = same && (r[i][j] == L.leq(i, j));
      CHECK(same);
      // Lattice laws on all triples.
      bool laws = true;
      for (ElementId x = 0; x < n; ++x) {
        for (ElementId y = 0; y < n; ++y) {
          laws = laws && L.join(x, y) == L.join(y, x) && L.meet(x, y) == L.meet(y, x);
          laws = laws && L.join(x, L.meet(x, y)) == x && L.meet(x, L.join(x, y)) == x;
          for (ElementId z = 0; z < n; ++z) {
            laws = laws && L.join(x, L.join(y, z)) == L.join(L.join(x, y), z);
            laws = laws && L.meet(x, L.meet(y, z)) == L.meet(L.meet(x, y), z);
          }
        }
      }
      CHECK(laws);
      // Finite collapse of the atomicity notions.
      const auto p = predicates(L);
      CHECK(p.atomic.holds == p.weakly_atomic.holds);
      CHECK(p.weakly_atomic.holds == p.strongly_atomic.holds);
      // Maximal chains are maximal, distinct and sorted.
      const auto chains = maximal_chains(L);
      std::set<std::vector<ElementId>> seen;
      for (const auto& c : chains) {
        CHECK(is_chain(L, c));
        CHECK(seen.insert(c).second);
        for (ElementId z = 0; z < n; ++z) {
          if (std::find(c.begin(), c.end(), z) != c.end()) continue;
          std::vector<ElementId> bigger = c;
          bigger.push_back(z);
          CHECK_FALSE(is_chain(L, bigger));
        }
      }
      CHECK(std::is_sorted(chains.begin(), chains.end()));
    }
  }

  TEST_CASE("compactness witness") {
    const auto cube = lattice_product(corpus::m(2), corpus::chain(2));
    const auto as = atoms(cube);
    const auto w = compactness_witness(cube, as[0], std::span<const ElementId>(as));
    CHECK(w == std::vector<ElementId>{as[0]});
    const auto top = compactness_witness(cube, cube.top(), std::span<const ElementId>(as));
    CHECK(top.size() == 3);
    const std::vector<ElementId> small{as[0]};
    CHECK_THROWS_AS(compactness_witness(cube, as[1], std::span<const ElementId>(small)), Error);
  }
}
