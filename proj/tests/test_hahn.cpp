#include <doctest.h>

#include <algorithm>

#include "hahn.hpp"
#include "order.hpp"

using namespace omlkit;

namespace {

GammaExp g(std::vector<std::int64_t> v) { return GammaExp(std::move(v)); }

KVector vec(std::initializer_list<HahnScalar> xs) { return KVector(xs); }

HahnScalar t(std::size_t n) { return HahnSeries::t(n); }
HahnScalar q(long v) { return HahnScalar::rational(v); }

}  // namespace

TEST_SUITE("hahn") {
  TEST_CASE("reverse lexicographic group order") {
    CHECK(GammaExp::delta(0) < GammaExp::delta(1));
    CHECK(g({5, -1}) < GammaExp{});
    CHECK(g({0, 0, 0}) == GammaExp{});
    CHECK((GammaExp::delta(2) + GammaExp::delta(2)).scaled(-1) == g({0, 0, -2}));
    CHECK(GammaExp::parse("(0:5,1:-1)") == g({5, -1}));
    CHECK(g({5, -1}).str() == "(0:5,1:-1)");
    CHECK(GammaExp{}.str() == "()");
    CHECK_THROWS_AS(GammaExp::parse("(0:"), Error);
    CHECK(TypeClass::of(g({3, 2, -1})) == TypeClass::of(g({1, 0, 1})));
    CHECK(TypeClass::of(g({3, 2, -1})).str() == "T{0,2}");
    CHECK(Valuation(GammaExp{}) < Valuation::infinity());
  }

  TEST_CASE("series arithmetic and valuation") {
    const auto one = HahnSeries::constant(1);
    const auto t0 = HahnSeries::t(0);
    CHECK(HahnSeries::t(3).valuation() == Valuation(GammaExp::delta(3)));
    const auto p = (one + t0) * (one - t0);
    CHECK(p == one - t0 * t0);
    CHECK(p.valuation() == Valuation(GammaExp{}));
    CHECK(HahnSeries{}.valuation().is_infinite());
    CHECK((t0 - t0).is_zero());
    CHECK(HahnSeries::parse(p.str()) == p);
    CHECK(HahnSeries::parse("0").is_zero());
    const auto d = exact_divide(p, one + t0);
    REQUIRE(d.has_value());
    CHECK(*d == one - t0);
    CHECK_FALSE(exact_divide(one, one + t0).has_value());
    // Leading coefficient sits at the valuation.
    const auto s = HahnSeries::from_terms({{GammaExp::delta(1), 3}, {GammaExp{}, 0}, {GammaExp::delta(0), mpq_class(1, 2)}});
    CHECK(s.term_count() == 2);
    CHECK(s.leading_coefficient() == mpq_class(1, 2));
  }

  TEST_CASE("fraction field") {
    const HahnScalar t0 = t(0);
    const HahnScalar inv = t0.inverse();
    CHECK(inv.valuation() == Valuation(-GammaExp::delta(0)));
    CHECK(inv * t0 == q(1));
    const HahnScalar u = q(1) + t0;
    CHECK(u * u.inverse() == q(1));
    CHECK(HahnScalar(HahnSeries::t(0), HahnSeries::t(0) * HahnSeries::t(0)) == inv);
    CHECK_THROWS_AS(HahnScalar().inverse(), Error);
    CHECK((u / u) == q(1));
    CHECK((u - u).is_zero());
  }

  TEST_CASE("form, anisotropy and types") {
    for (std::size_t n = 0; n < 5; ++n) {
      const auto e = basis_vector(5, n);
      CHECK(form(e) == t(n));
      CHECK(type_of(e) == TypeClass::delta(n));
      for (std::size_t m = 0; m < 5; ++m)
        if (m != n) CHECK(form(e, basis_vector(5, m)).is_zero());
    }
    const auto f = add(basis_vector(2, 0), basis_vector(2, 1));
    CHECK(form(f) == t(0) + t(1));
    CHECK(form(f).valuation() == Valuation(GammaExp::delta(0)));
    CHECK(type_of(f) == TypeClass::delta(0));
    CHECK(type_of(scale(t(1) + q(3), f)) == type_of(f));

    const auto zero = anisotropy_check(KVector(3));
    CHECK_FALSE(zero.nonzero);
    CHECK(zero.valuation.is_infinite());
    const auto e2 = anisotropy_check(basis_vector(3, 2));
    CHECK(e2.nonzero);
    CHECK(e2.valuation == Valuation(GammaExp::delta(2)));
    CHECK(e2.valuation == e2.predicted);
    CHECK_THROWS_AS(type_of(KVector(2)), Error);
  }

  TEST_CASE("orthogonalization") {
    const auto e0 = basis_vector(2, 0), e1 = basis_vector(2, 1);
    CHECK(orthogonalize({e0, e1}) == std::vector<KVector>{e0, e1});
    CHECK(orthogonalize({e0, add(e0, e1)}) == std::vector<KVector>{e0, e1});
    CHECK_THROWS_AS(orthogonalize({e0, scale(q(2), e0)}), Error);
  }

  TEST_CASE("subspaces and complements") {
    const auto e = [](std::size_t i) { return basis_vector(3, i); };
    const auto x = Subspace::span(3, {e(0)});
    CHECK(ortho_complement(x) == Subspace::span(3, {e(1), e(2)}));
    CHECK(ortho_complement(Subspace(3)) == Subspace::span(3, {e(0), e(1), e(2)}));

    const auto f = add(basis_vector(2, 0), basis_vector(2, 1));
    const auto perp = ortho_complement(Subspace::span(2, {f}));
    const auto expected = vec({t(1), -t(0)});
    CHECK(perp == Subspace::span(2, {expected}));
    CHECK(perp.dim() == 1);
    CHECK(form(perp.basis()[0], f).is_zero());

    CHECK(pi_map(Subspace(3)).empty());
    CHECK(pi_map(Subspace::span(3, {e(0), e(1)})) == std::set<TypeClass>{TypeClass::delta(0), TypeClass::delta(1)});
    CHECK(closure_check(Subspace::span(3, {add(e(0), e(2)), e(1)})));
    CHECK(Subspace::span(3, {e(0), add(e(0), e(1)), e(1)}).dim() == 2);
    CHECK(Subspace::span(3, {e(0)}).subset_of(Subspace::span(3, {e(0), e(1)})));
    CHECK(Subspace::span(3, {e(0)}).join(Subspace::span(3, {e(1)})).contains(add(e(0), e(1))));
    CHECK(rank(3, {e(0), e(0), KVector(3)}) == 1);
  }

  TEST_CASE("counting types") {
    const auto c = counting_types(3);
    CHECK(c.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.at(TypeClass::delta(i)) == 1);
  }

  TEST_CASE("seeded randomized report") {
    KellerOptions opts;
    opts.dim = 3;
    opts.trials = 60;
    opts.seed = 7;
    const auto a = keller_report(opts);
    CHECK(a.all_pass());
    CHECK(a.text() == keller_report(opts).text());
    for (const auto& l : a.lines()) CHECK_MESSAGE(l.verdict != "false", l.check);
  }
}
