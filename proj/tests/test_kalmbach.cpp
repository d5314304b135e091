#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "kalmbach.hpp"
#include "structure.hpp"

using namespace omlkit;

namespace {

KSeq seq(const BoundedLattice& L, std::initializer_list<const char*> names) {
  std::vector<ElementId> ids;
  for (const char* n : names) ids.push_back(L.id(n));
  return KSeq::from_terms(L, ids);
}

// Powerset of chain ids below the top, as a bitmask.
unsigned phi_mask(const BoundedLattice& chain, const KSeq& x) {
  unsigned m = 0;
  for (ElementId e : phi_chain(chain, x)) m |= 1u << e;
  return m;
}

}  // namespace

TEST_SUITE("kalmbach") {
  TEST_CASE("order and orthocomplement on sequences") {
    const auto c = corpus::chain(4);  // c0 < c1 < c2 < c3
    CHECK(kleq(c, seq(c, {"c1", "c2"}), seq(c, {"c0", "c3"})));
    CHECK_FALSE(kleq(c, seq(c, {"c0", "c1"}), seq(c, {"c2", "c3"})));
    CHECK(kperp(c, KSeq{}) == seq(c, {"c0", "c3"}));
    CHECK(kperp(c, seq(c, {"c0", "c1"})) == seq(c, {"c1", "c3"}));
    CHECK(kperp(c, seq(c, {"c1", "c2"})) == seq(c, {"c0", "c1", "c2", "c3"}));
    CHECK(kseq_name(c, KSeq{}) == "()");
    CHECK(kseq_name(c, seq(c, {"c0", "c3"})) == "(c0,c3)");
    CHECK_THROWS_AS(seq(c, {"c2", "c1"}), Error);
    CHECK_THROWS_AS(seq(c, {"c1"}), Error);
  }

  TEST_CASE("sizes and small examples") {
    CHECK(kalmbach(corpus::chain(2)).size() == 2);
    for (int n = 2; n <= 6; ++n) {
      const auto k = kalmbach(corpus::chain(n));
      CHECK(k.size() == (std::size_t{1} << (n - 1)));
      CHECK(find_ortho_isomorphism(k.to_ortholattice(), boolean_algebra(n - 1)).has_value());
    }
    const auto km2 = kalmbach(corpus::m(2));
    CHECK(km2.size() == 6);
    CHECK(km2.atom_ids().size() == 4);
    CHECK(find_ortho_isomorphism(km2.to_ortholattice(), mo(2)).has_value());
    CHECK(blocks(km2.to_ortholattice()).size() == 2);
    CHECK(kalmbach(corpus::chain(4)).atom_ids().size() == 3);

    const auto kn5 = kalmbach(corpus::n5());
    const auto bs = blocks(kn5.to_ortholattice());
    REQUIRE(bs.size() == 2);
    std::multiset<std::size_t> sizes;
    for (const auto& b : bs) sizes.insert(b.elements.size());
    CHECK(sizes == std::multiset<std::size_t>{4, 8});
    CHECK_THROWS_AS(kalmbach(corpus::chain(6), KalmbachLimits{8}), Error);
  }

  TEST_CASE("chain isomorphism onto the powerset") {
    for (int n = 2; n <= 6; ++n) {
      const auto c = corpus::chain(n);
      const auto k = kalmbach(c);
      std::set<unsigned> images;
      const unsigned full = (1u << (n - 1)) - 1;
      for (ElementId x = 0; x < k.size(); ++x) {
        const unsigned m = phi_mask(c, k.seq(x));
        images.insert(m);
        CHECK(phi_mask(c, k.seq(k.perp(x))) == (full & ~m));
        for (ElementId y = 0; y < k.size(); ++y) {
          const unsigned my = phi_mask(c, k.seq(y));
          CHECK(k.leq(x, y) == ((m & ~my) == 0));
        }
      }
      CHECK(images.size() == k.size());
    }
    const auto c3 = corpus::chain(3);
    const auto phi = phi_chain(c3, seq(c3, {"c0", "c1"}));
    CHECK(phi == std::vector<ElementId>{c3.id("c0")});
  }

  TEST_CASE("joins") {
    const auto c = corpus::chain(4);
    const auto kc = kalmbach(c);
    const ElementId x = kc.id(seq(c, {"c0", "c1"}));
    const ElementId y = kc.id(seq(c, {"c1", "c2"}));
    CHECK(kc.seq(kc.join(x, y)) == seq(c, {"c0", "c2"}));
    CHECK(kc.join(x, x) == x);
    const auto m2 = corpus::m(2);
    const auto km = kalmbach(m2);
    CHECK(km.seq(km.join(km.id(seq(m2, {"0", "a"})), km.id(seq(m2, {"0", "b"})))) == seq(m2, {"0", "1"}));

    // Direct joins agree with brute force and with the truncation scheme.
    for (const auto& [name, L] : corpus::lattices()) {
      CAPTURE(name);
      const auto k = kalmbach(L);
      if (k.size() > 400) continue;
      bool ok = true;
      for (ElementId a = 0; a < k.size(); ++a) {
        for (ElementId b = 0; b < k.size(); ++b) {
          const ElementId j = k.join(a, b);
          ok = ok && j == kjoin_bruteforce(k, a, b);
          ok = ok && kjoin_by_truncation(k, k.seq(a), k.seq(b)) == k.seq(j);
          ok = ok && k.meet(a, b) == k.perp(k.join(k.perp(a), k.perp(b)));
        }
      }
      CHECK(ok);
    }
  }

  TEST_CASE("subchain joins agree") {
    // For a subchain D of a maximal chain C, joins in K(D) equal joins in K(C).
    const auto c = corpus::chain(5);
    const auto kc = kalmbach(c);
    const std::vector<std::vector<const char*>> subchains = {{"c0", "c2", "c4"}, {"c0", "c1", "c3", "c4"}, {"c0", "c4"}};
    for (const auto& names : subchains) {
      std::vector<std::string> ns(names.begin(), names.end());
      std::vector<std::pair<std::string, std::string>> covers;
      for (std::size_t i = 1; i < ns.size(); ++i) covers.emplace_back(ns[i - 1], ns[i]);
      const auto d = lattice_from_covers(ns, covers);
      const auto kd = kalmbach(d);
      auto lift = [&](const KSeq& s) {
        std::vector<ElementId> ids;
        for (std::size_t i = 0; i < s.size(); ++i) ids.push_back(c.id(d.name(s[i])));
        return kc.id(KSeq::from_terms(c, ids));
      };
      for (ElementId a = 0; a < kd.size(); ++a)
        for (ElementId b = 0; b < kd.size(); ++b) CHECK(lift(kd.seq(kd.join(a, b))) == kc.join(lift(kd.seq(a)), lift(kd.seq(b))));
    }
  }

  TEST_CASE("interval heights match the dense lattice") {
    for (const auto& [name, L] : corpus::lattices()) {
      CAPTURE(name);
      const auto k = kalmbach(L);
      if (k.size() > 300) continue;
      const auto dense = k.to_ortholattice();
      bool ok = true;
      for (ElementId x = 0; x < k.size(); ++x)
        for (ElementId y = 0; y < k.size(); ++y)
          if (k.leq(x, y)) ok = ok && k.interval_height(x, y) == dense.lattice().chain_height(x, y);
      CHECK(ok);
    }
  }

  TEST_CASE("perp is an order-inverting involution") {
    for (const auto& [name, L] : corpus::lattices()) {
      CAPTURE(name);
      const auto k = kalmbach(L);
      if (k.size() > 400) continue;
      bool ok = true;
      for (ElementId x = 0; x < k.size(); ++x) {
        ok = ok && k.perp(k.perp(x)) == x;
        for (ElementId y = 0; y < k.size(); ++y)
          if (k.leq(x, y)) ok = ok && k.leq(k.perp(y), k.perp(x));
      }
      CHECK(ok);
    }
  }

  TEST_CASE("structure checks") {
    const auto m2 = corpus::m(2);
    const auto km = kalmbach(m2);
    const ElementId a = km.id(seq(m2, {"0", "a"})), b = km.id(seq(m2, {"0", "b"}));
    CHECK_FALSE(commutes(km, a, b));
    CHECK_FALSE(union_is_chain(m2, km.seq(a), km.seq(b)));
    const auto kc = kalmbach(corpus::chain(5));
    bool all = true;
    for (ElementId x = 0; x < kc.size(); ++x)
      for (ElementId y = 0; y < kc.size(); ++y) all = all && commutes(kc, x, y);
    CHECK(all);
    for (const auto& L : {corpus::m(2), corpus::n5(), corpus::chain(4)}) {
      const auto k = kalmbach(L);
      CHECK(is_orthomodular(k).holds);
      CHECK(katoms_check(k).holds);
      CHECK(kblocks_check(k).holds);
      CHECK(kcommute_check(k).holds);
    }
  }
}
