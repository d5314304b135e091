#pragma once

// Exact arithmetic over Γ = ⊕Z with the reverse lexicographic order:
// finite-support series with rational coefficients, their fractions, and the
// diagonal form <f,g> = Σ f(n) g(n) t_n on finite slices E_n.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "report.hpp"

namespace omlkit {

class GammaExp {
 public:
  GammaExp() = default;
  explicit GammaExp(std::vector<std::int64_t> entries);
  static GammaExp delta(std::size_t n);

  std::int64_t operator[](std::size_t i) const noexcept { return i < v_.size() ? v_[i] : 0; }
  // One past the largest index with a nonzero entry.
  std::size_t extent() const noexcept { return v_.size(); }
  bool is_zero() const noexcept { return v_.empty(); }

  GammaExp operator+(const GammaExp& o) const;
  GammaExp operator-(const GammaExp& o) const;
  GammaExp operator-() const;
  GammaExp scaled(std::int64_t k) const;

  // Decided at the largest index where the entries differ.
  std::strong_ordering operator<=>(const GammaExp& o) const noexcept;
  bool operator==(const GammaExp& o) const noexcept { return v_ == o.v_; }

  // "(i:v,j:w)" over nonzero entries; "()" for zero.
  std::string str() const;
  static GammaExp parse(std::string_view text);

 private:
  void trim() noexcept;
  std::vector<std::int64_t> v_;
};

inline std::strong_ordering gamma_cmp(const GammaExp& a, const GammaExp& b) { return a <=> b; }

// Element of Γ/2Γ: the set of indices with odd entries.
class TypeClass {
 public:
  TypeClass() = default;
  static TypeClass of(const GammaExp& g);
  static TypeClass delta(std::size_t n) { return of(GammaExp::delta(n)); }

  TypeClass operator+(const TypeClass& o) const;
  auto operator<=>(const TypeClass& o) const = default;
  const std::vector<std::size_t>& odd_indices() const noexcept { return odd_; }
  std::string str() const;  // "T{0,2}"

 private:
  std::vector<std::size_t> odd_;
};

// GammaExp or the sentinel ∞ above everything.
class Valuation {
 public:
  Valuation() = default;  // ∞
  explicit Valuation(GammaExp g) : finite_(true), g_(std::move(g)) {}
  static Valuation infinity() { return {}; }

  bool is_infinite() const noexcept { return !finite_; }
  const GammaExp& value() const;
  Valuation operator+(const Valuation& o) const;
  Valuation operator-(const Valuation& o) const;  // finite subtrahend only
  std::strong_ordering operator<=>(const Valuation& o) const noexcept;
  bool operator==(const Valuation& o) const noexcept;
  std::string str() const;

 private:
  bool finite_ = false;
  GammaExp g_;
};

class HahnSeries {
 public:
  using Terms = std::map<GammaExp, mpq_class>;

  HahnSeries() = default;
  static HahnSeries constant(const mpq_class& q);
  static HahnSeries monomial(const GammaExp& g, const mpq_class& q);
  static HahnSeries t(std::size_t n) { return monomial(GammaExp::delta(n), 1); }
  static HahnSeries from_terms(Terms terms);  // zero coefficients are dropped

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Valuation valuation() const;
  mpq_class leading_coefficient() const;  // coefficient at the valuation; 0 for 0

  HahnSeries operator+(const HahnSeries& o) const;
  HahnSeries operator-(const HahnSeries& o) const;
  HahnSeries operator-() const;
  HahnSeries operator*(const HahnSeries& o) const;
  HahnSeries scaled(const mpq_class& q, const GammaExp& shift = {}) const;
  bool operator==(const HahnSeries& o) const { return terms_ == o.terms_; }

  // "3/2 * t[(0:1)] - 1 * t[()]"; zero prints as "0".
  std::string str() const;
  static HahnSeries parse(std::string_view text);

 private:
  void add_term(const GammaExp& g, const mpq_class& q);
  Terms terms_;
};

// a / b when b divides a in the finite-support ring, else nullopt.
std::optional<HahnSeries> exact_divide(const HahnSeries& a, const HahnSeries& b);

// Fraction num/den of series; den is kept with lowest term 1 * t[()].
class HahnScalar {
 public:
  HahnScalar() : den_(HahnSeries::constant(1)) {}
  HahnScalar(HahnSeries num);  // NOLINT: series embed as scalars
  HahnScalar(HahnSeries num, HahnSeries den);
  static HahnScalar rational(const mpq_class& q) { return HahnScalar(HahnSeries::constant(q)); }

  const HahnSeries& num() const noexcept { return num_; }
  const HahnSeries& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  Valuation valuation() const;

  HahnScalar operator+(const HahnScalar& o) const;
  HahnScalar operator-(const HahnScalar& o) const;
  HahnScalar operator-() const;
  HahnScalar operator*(const HahnScalar& o) const;
  HahnScalar operator/(const HahnScalar& o) const;
  HahnScalar inverse() const;
  bool operator==(const HahnScalar& o) const;

  std::string str() const;

 private:
  void normalize();
  HahnSeries num_;
  HahnSeries den_;
};

using KVector = std::vector<HahnScalar>;

KVector basis_vector(std::size_t n, std::size_t i);
bool is_zero(const KVector& v);
KVector add(const KVector& a, const KVector& b);
KVector scale(const HahnScalar& c, const KVector& v);
std::string vector_str(const KVector& v);

HahnScalar form(const KVector& f, const KVector& g);
inline HahnScalar form(const KVector& f) { return form(f, f); }

struct Anisotropy {
  bool nonzero = false;
  Valuation valuation;         // φ(<f>) computed directly
  Valuation predicted;         // min over nonzero i of 2 φ(f_i) + δ_i
  bool unique_minimum = true;  // the minimum is attained once
};

Anisotropy anisotropy_check(const KVector& f);

TypeClass type_of(const KVector& f);

// Row space; the basis is an independent subset of the spanning vectors.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : n_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<KVector>& vectors);

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<KVector>& basis() const noexcept { return rows_; }

  bool contains(const KVector& v) const;
  bool subset_of(const Subspace& o) const;
  Subspace join(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

 private:
  std::size_t n_;
  std::vector<KVector> rows_;
};

std::size_t rank(std::size_t ambient, const std::vector<KVector>& vectors);

// Pairwise orthogonal family with the same span; throws DependentInput.
std::vector<KVector> orthogonalize(const std::vector<KVector>& vectors);

std::set<TypeClass> pi_map(const Subspace& x);
Subspace ortho_complement(const Subspace& x);
// X⊥⊥ = X and dim X + dim X⊥ = n.
bool closure_check(const Subspace& x);

std::map<TypeClass, int> counting_types(std::size_t n);

// Seeded generators with small coefficients and supports.
class KellerSampler {
 public:
  explicit KellerSampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  GammaExp gamma(std::size_t max_index, std::int64_t bound);
  HahnSeries series(std::size_t max_terms, std::size_t max_index);
  HahnScalar scalar(std::size_t max_index, bool allow_zero = true);
  KVector vector(std::size_t n, std::size_t max_index);
  std::vector<KVector> independent_family(std::size_t n, std::size_t count);
  Subspace subspace(std::size_t n, std::size_t max_dim);
  // Random subspace of `outer` of dimension at most max_dim.
  Subspace subspace_of(const Subspace& outer, std::size_t max_dim);

 private:
  std::mt19937_64 rng_;
};

struct KellerOptions {
  std::size_t dim = 4;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
};

Report keller_report(const KellerOptions& options);

}  // namespace omlkit
