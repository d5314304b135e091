#include "hahn.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

#include "order.hpp"

namespace omlkit {

// ---------------------------------------------------------------- GammaExp

GammaExp::GammaExp(std::vector<std::int64_t> entries) : v_(std::move(entries)) { trim(); }

GammaExp GammaExp::delta(std::size_t n) {
  std::vector<std::int64_t> v(n + 1, 0);
  v[n] = 1;
  return GammaExp(std::move(v));
}

void GammaExp::trim() noexcept {
  while (!v_.empty() && v_.back() == 0) v_.pop_back();
}

GammaExp GammaExp::operator+(const GammaExp& o) const {
  std::vector<std::int64_t> r(std::max(v_.size(), o.v_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return GammaExp(std::move(r));
}

GammaExp GammaExp::operator-(const GammaExp& o) const { return *this + (-o); }

GammaExp GammaExp::operator-() const { return scaled(-1); }

GammaExp GammaExp::scaled(std::int64_t k) const {
  std::vector<std::int64_t> r(v_);
  for (auto& x : r) x *= k;
  return GammaExp(std::move(r));
}

std::strong_ordering GammaExp::operator<=>(const GammaExp& o) const noexcept {
  for (std::size_t i = std::max(v_.size(), o.v_.size()); i-- > 0;) {
    if ((*this)[i] != o[i]) return (*this)[i] <=> o[i];
  }
  return std::strong_ordering::equal;
}

std::string GammaExp::str() const {
  std::string out = "(";
  bool first = true;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] == 0) continue;
    if (!first) out += ",";
    out += std::to_string(i) + ":" + std::to_string(v_[i]);
    first = false;
  }
  return out + ")";
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string digits(bool allow_sign) {
    skip_ws();
    const std::size_t start = i_;
    if (allow_sign && i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t first_digit = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == first_digit) fail("expected digits");
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kParse, why + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

GammaExp parse_gamma(Cursor& c) {
  c.expect('(');
  std::map<std::size_t, std::int64_t> entries;
  if (!c.accept(')')) {
    do {
      const std::string idx = c.digits(false);
      c.expect(':');
      const std::string val = c.digits(true);
      std::size_t index = 0;
      std::int64_t value = 0;
      try {
        index = std::stoul(idx);
        value = std::stoll(val);
      } catch (const std::exception&) {
        c.fail("number out of range");
      }
      if (index > 4096) c.fail("index too large");
      if (!entries.emplace(index, value).second) c.fail("repeated index");
    } while (c.accept(','));
    c.expect(')');
  }
  std::vector<std::int64_t> v(entries.empty() ? 0 : entries.rbegin()->first + 1, 0);
  for (const auto& [i, x] : entries) v[i] = x;
  return GammaExp(std::move(v));
}

}  // namespace

GammaExp GammaExp::parse(std::string_view text) {
  Cursor c(text);
  GammaExp g = parse_gamma(c);
  if (!c.done()) c.fail("trailing input");
  return g;
}

// ---------------------------------------------------------------- TypeClass

TypeClass TypeClass::of(const GammaExp& g) {
  TypeClass t;
  for (std::size_t i = 0; i < g.extent(); ++i) {
    if (g[i] % 2 != 0) t.odd_.push_back(i);
  }
  return t;
}

TypeClass TypeClass::operator+(const TypeClass& o) const {
  TypeClass t;
  std::set_symmetric_difference(odd_.begin(), odd_.end(), o.odd_.begin(), o.odd_.end(), std::back_inserter(t.odd_));
  return t;
}

std::string TypeClass::str() const {
  std::string out = "T{";
  for (std::size_t i = 0; i < odd_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(odd_[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------- Valuation

const GammaExp& Valuation::value() const {
  if (!finite_) throw Error(ErrorCode::kInvalidArgument, "valuation is infinite");
  return g_;
}

Valuation Valuation::operator+(const Valuation& o) const {
  if (!finite_ || !o.finite_) return infinity();
  return Valuation(g_ + o.g_);
}

Valuation Valuation::operator-(const Valuation& o) const {
  if (!o.finite_) throw Error(ErrorCode::kInvalidArgument, "cannot subtract an infinite valuation");
  if (!finite_) return infinity();
  return Valuation(g_ - o.g_);
}

std::strong_ordering Valuation::operator<=>(const Valuation& o) const noexcept {
  if (!finite_ || !o.finite_) {
    if (finite_ == o.finite_) return std::strong_ordering::equal;
    return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return g_ <=> o.g_;
}

bool Valuation::operator==(const Valuation& o) const noexcept { return (*this <=> o) == 0; }

std::string Valuation::str() const { return finite_ ? g_.str() : "inf"; }

// ---------------------------------------------------------------- HahnSeries

HahnSeries HahnSeries::constant(const mpq_class& q) { return monomial(GammaExp{}, q); }

HahnSeries HahnSeries::monomial(const GammaExp& g, const mpq_class& q) {
  HahnSeries s;
  s.add_term(g, q);
  return s;
}

HahnSeries HahnSeries::from_terms(Terms terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  for (auto& [g, q] : terms) q.canonicalize();
  HahnSeries s;
  s.terms_ = std::move(terms);
  return s;
}

void HahnSeries::add_term(const GammaExp& g, const mpq_class& q) {
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, q);
  if (inserted) {
    it->second.canonicalize();
    return;
  }
  it->second += q;
  if (it->second == 0) terms_.erase(it);
}

Valuation HahnSeries::valuation() const {
  if (terms_.empty()) return Valuation::infinity();
  return Valuation(terms_.begin()->first);
}

mpq_class HahnSeries::leading_coefficient() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

HahnSeries HahnSeries::operator+(const HahnSeries& o) const {
  HahnSeries r = *this;
  for (const auto& [g, q] : o.terms_) r.add_term(g, q);
  return r;
}

HahnSeries HahnSeries::operator-(const HahnSeries& o) const {
  HahnSeries r = *this;
  for (const auto& [g, q] : o.terms_) r.add_term(g, -q);
  return r;
}

HahnSeries HahnSeries::operator-() const { return scaled(-1); }

HahnSeries HahnSeries::operator*(const HahnSeries& o) const {
  HahnSeries r;
  for (const auto& [g, q] : terms_) {
    for (const auto& [h, p] : o.terms_) r.add_term(g + h, q * p);
  }
  return r;
}

HahnSeries HahnSeries::scaled(const mpq_class& q, const GammaExp& shift) const {
  HahnSeries r;
  if (q == 0) return r;
  for (const auto& [g, p] : terms_) r.terms_.emplace(g + shift, p * q);
  return r;
}

std::string HahnSeries::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, q] : terms_) {
    const bool negative = q < 0;
    const mpq_class mag = abs(q);
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += mag.get_str() + " * t[" + g.str() + "]";
    first = false;
  }
  return out;
}

namespace {

mpq_class parse_rational(Cursor& c) {
  const std::string num = c.digits(false);
  std::string text = num;
  if (c.accept('/')) {
    const std::string den = c.digits(false);
    if (den.find_first_not_of('0') == std::string::npos) c.fail("zero denominator");
    text += "/" + den;
  }
  mpq_class q(text, 10);
  q.canonicalize();
  return q;
}

// Bare "t[γ]" has coefficient 1; a bare rational sits at exponent 0.
void parse_term(Cursor& c, mpq_class sign, HahnSeries& acc) {
  mpq_class q = 1;
  GammaExp g;
  if (c.peek() == 't') {
    c.expect('t');
    c.expect('[');
    g = parse_gamma(c);
    c.expect(']');
  } else {
    q = parse_rational(c);
    if (c.accept('*')) {
      c.expect('t');
      c.expect('[');
      g = parse_gamma(c);
      c.expect(']');
    }
  }
  acc = acc + HahnSeries::monomial(g, sign * q);
}

}  // namespace

HahnSeries HahnSeries::parse(std::string_view text) {
  Cursor c(text);
  HahnSeries acc;
  mpq_class sign = 1;
  if (c.accept('-')) sign = -1;
  parse_term(c, sign, acc);
  while (!c.done()) {
    if (c.accept('+')) {
      sign = 1;
    } else if (c.accept('-')) {
      sign = -1;
    } else {
      c.fail("expected '+' or '-'");
    }
    parse_term(c, sign, acc);
  }
  return acc;
}

std::optional<HahnSeries> exact_divide(const HahnSeries& a, const HahnSeries& b) {
  if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by the zero series");
  if (a.is_zero()) return HahnSeries{};

  // Exponents of a quotient lie in the coordinate box [minA - minB, maxA - maxB].
  std::size_t extent = 0;
  for (const auto& [g, q] : a.terms()) extent = std::max(extent, g.extent());
  for (const auto& [g, q] : b.terms()) extent = std::max(extent, g.extent());
  auto bounds = [extent](const HahnSeries& s) {
    std::vector<std::int64_t> lo(extent, INT64_MAX), hi(extent, INT64_MIN);
    for (const auto& [g, q] : s.terms()) {
      for (std::size_t i = 0; i < extent; ++i) {
        lo[i] = std::min(lo[i], g[i]);
        hi[i] = std::max(hi[i], g[i]);
      }
    }
    return std::pair{lo, hi};
  };
  const auto [alo, ahi] = bounds(a);
  const auto [blo, bhi] = bounds(b);

  const auto& [bg, bq] = *b.terms().begin();
  if (b.is_monomial()) return a.scaled(1 / bq, -bg);
  HahnSeries::Terms quotient;
  HahnSeries::Terms rem = a.terms();
  while (!rem.empty()) {
    const GammaExp g = rem.begin()->first - bg;
    for (std::size_t i = 0; i < extent; ++i) {
      if (g[i] < alo[i] - blo[i] || g[i] > ahi[i] - bhi[i]) return std::nullopt;
    }
    if (g.extent() > extent) return std::nullopt;
    const mpq_class q = rem.begin()->second / bq;
    quotient.emplace_hint(quotient.end(), g, q);
    for (const auto& [h, c] : b.terms()) {
      auto [it, inserted] = rem.try_emplace(g + h, -q * c);
      if (!inserted) {
        it->second -= q * c;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return HahnSeries::from_terms(std::move(quotient));
}

// ---------------------------------------------------------------- HahnScalar

HahnScalar::HahnScalar(HahnSeries num) : num_(std::move(num)), den_(HahnSeries::constant(1)) {}

HahnScalar::HahnScalar(HahnSeries num, HahnSeries den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::kDivisionByZero, "zero denominator");
  normalize();
}

void HahnScalar::normalize() {
  if (num_.is_zero()) {
    den_ = HahnSeries::constant(1);
    return;
  }
  if (!den_.is_monomial()) {
    if (auto q = exact_divide(num_, den_)) {
      num_ = std::move(*q);
      den_ = HahnSeries::constant(1);
      return;
    }
  }
  const auto& [g, c] = *den_.terms().begin();
  const mpq_class inv = 1 / c;
  const GammaExp shift = -g;
  num_ = num_.scaled(inv, shift);
  den_ = den_.scaled(inv, shift);
}

Valuation HahnScalar::valuation() const { return num_.valuation() - den_.valuation(); }

HahnScalar HahnScalar::operator+(const HahnScalar& o) const {
  if (den_ == o.den_) return HahnScalar(num_ + o.num_, den_);
  return HahnScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

HahnScalar HahnScalar::operator-(const HahnScalar& o) const { return *this + (-o); }

HahnScalar HahnScalar::operator-() const {
  HahnScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

HahnScalar HahnScalar::operator*(const HahnScalar& o) const {
  if (is_zero() || o.is_zero()) return {};
  return HahnScalar(num_ * o.num_, den_ * o.den_);
}

HahnScalar HahnScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  return HahnScalar(den_, num_);
}

HahnScalar HahnScalar::operator/(const HahnScalar& o) const { return *this * o.inverse(); }

bool HahnScalar::operator==(const HahnScalar& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

std::string HahnScalar::str() const {
  if (den_ == HahnSeries::constant(1)) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ---------------------------------------------------------------- vectors

KVector basis_vector(std::size_t n, std::size_t i) {
  KVector v(n);
  v[i] = HahnScalar::rational(1);
  return v;
}

bool is_zero(const KVector& v) {
  return std::all_of(v.begin(), v.end(), [](const HahnScalar& x) { return x.is_zero(); });
}

KVector add(const KVector& a, const KVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector dimensions differ");
  KVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

KVector scale(const HahnScalar& c, const KVector& v) {
  KVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

std::string vector_str(const KVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += v[i].str();
  }
  return out + "]";
}

HahnScalar form(const KVector& f, const KVector& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::kDimensionMismatch, "vector dimensions differ");
  HahnScalar acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero() || g[i].is_zero()) continue;
    acc = acc + f[i] * g[i] * HahnScalar(HahnSeries::t(i));
  }
  return acc;
}

Anisotropy anisotropy_check(const KVector& f) {
  Anisotropy a;
  const HahnScalar q = form(f);
  a.nonzero = !q.is_zero();
  a.valuation = q.valuation();
  int hits = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    const Valuation v = Valuation(f[i].valuation().value().scaled(2) + GammaExp::delta(i));
    if (v < a.predicted) {
      a.predicted = v;
      hits = 1;
    } else if (v == a.predicted) {
      ++hits;
    }
  }
  a.unique_minimum = hits <= 1;
  return a;
}

TypeClass type_of(const KVector& f) {
  if (is_zero(f)) throw Error(ErrorCode::kZeroVector, "type of the zero vector");
  return TypeClass::of(form(f).valuation().value());
}

// ---------------------------------------------------------------- Subspace
//
// Linear algebra runs on polynomial rows (denominators cleared), with
// fraction-free elimination whose divisions are exact by construction.

namespace {

using PolyRow = std::vector<HahnSeries>;

void check_dims(std::size_t n, const std::vector<KVector>& vs) {
  for (const auto& v : vs) {
    if (v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "vector dimension differs from the ambient");
  }
}

HahnSeries divide_exactly(const HahnSeries& a, const HahnSeries& b) {
  auto q = exact_divide(a, b);
  if (!q) throw Error(ErrorCode::kInternal, "fraction-free step hit an inexact division");
  return *q;
}

// Divides out the lowest term of the first nonzero entry.
PolyRow strip_monomial(PolyRow r) {
  for (const auto& x : r) {
    if (x.is_zero()) continue;
    const auto& [g, c] = *x.terms().begin();
    const mpq_class inv = 1 / c;
    const GammaExp shift = -g;
    for (auto& y : r) y = y.scaled(inv, shift);
    break;
  }
  return r;
}

// A nonzero multiple of v with polynomial entries.
PolyRow to_poly(const KVector& v) {
  const HahnSeries one = HahnSeries::constant(1);
  HahnSeries common = one;
  for (const auto& x : v) {
    if (!x.is_zero() && !(x.den() == one)) common = common * x.den();
  }
  PolyRow r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) r[i] = v[i].num() * divide_exactly(common, v[i].den());
  }
  return strip_monomial(std::move(r));
}

KVector from_poly(const PolyRow& r) {
  KVector v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = HahnScalar(r[i]);
  return v;
}

HahnSeries poly_form(const PolyRow& a, const PolyRow& b) {
  HahnSeries acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    acc = acc + (a[i] * b[i]).scaled(1, GammaExp::delta(i));
  }
  return acc;
}

struct Echelon {
  std::vector<PolyRow> rows;  // every pivot entry equals det
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> origin;  // input index of each pivot row
  HahnSeries det = HahnSeries::constant(1);
};

// Fraction-free Gauss-Jordan: entries stay minors of the input, so each
// division by the previous pivot is exact.
Echelon eliminate(std::size_t n, std::vector<PolyRow> rows) {
  Echelon e;
  std::vector<std::size_t> origin(rows.size());
  std::iota(origin.begin(), origin.end(), 0);
  HahnSeries prev = HahnSeries::constant(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    std::swap(origin[r], origin[p]);
    const HahnSeries piv = rows[r][col];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const HahnSeries f = rows[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        HahnSeries x = piv * rows[i][j];
        if (!f.is_zero()) x = x - f * rows[r][j];
        rows[i][j] = divide_exactly(x, prev);
      }
    }
    prev = piv;
    e.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  origin.resize(r);
  e.rows = std::move(rows);
  e.origin = std::move(origin);
  e.det = prev;
  return e;
}

std::vector<PolyRow> poly_rows(const std::vector<KVector>& vs) {
  std::vector<PolyRow> out;
  for (const auto& v : vs) out.push_back(is_zero(v) ? PolyRow(v.size()) : to_poly(v));
  return out;
}

}  // namespace

Subspace Subspace::span(std::size_t ambient, const std::vector<KVector>& vectors) {
  check_dims(ambient, vectors);
  const Echelon e = eliminate(ambient, poly_rows(vectors));
  std::vector<std::size_t> keep = e.origin;
  std::sort(keep.begin(), keep.end());
  Subspace s(ambient);
  for (std::size_t i : keep) s.rows_.push_back(vectors[i]);
  return s;
}

bool Subspace::contains(const KVector& v) const {
  if (v.size() != n_) throw Error(ErrorCode::kDimensionMismatch, "vector dimension differs from the ambient");
  if (is_zero(v)) return true;
  std::vector<KVector> all = rows_;
  all.push_back(v);
  return rank(n_, all) == dim();
}

bool Subspace::subset_of(const Subspace& o) const { return n_ == o.n_ && o.join(*this).dim() == o.dim(); }

Subspace Subspace::join(const Subspace& o) const {
  std::vector<KVector> all = rows_;
  all.insert(all.end(), o.rows_.begin(), o.rows_.end());
  return span(n_, all);
}

bool Subspace::operator==(const Subspace& o) const {
  return n_ == o.n_ && dim() == o.dim() && join(o).dim() == dim();
}

std::size_t rank(std::size_t ambient, const std::vector<KVector>& vectors) {
  check_dims(ambient, vectors);
  return eliminate(ambient, poly_rows(vectors)).rows.size();
}

// Integral Gram-Schmidt: with D_0 = 1 and D_j the Gram determinant of the
// first j inputs, u_j = D_j b_j* stays polynomial and
//   W <- (D_{j+1} W - <v_k, u_j> u_j) / D_j
// divides exactly at every step.
std::vector<KVector> orthogonalize(const std::vector<KVector>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t n = vectors.front().size();
  check_dims(n, vectors);
  if (rank(n, vectors) != vectors.size()) throw Error(ErrorCode::kDependentInput, "input vectors are dependent");

  std::vector<PolyRow> v;
  for (const auto& x : vectors) v.push_back(to_poly(x));
  std::vector<PolyRow> u;
  std::vector<HahnSeries> d{HahnSeries::constant(1)};
  for (std::size_t k = 0; k < v.size(); ++k) {
    PolyRow w = v[k];
    for (std::size_t j = 0; j < k; ++j) {
      const HahnSeries lambda = poly_form(v[k], u[j]);
      for (std::size_t i = 0; i < n; ++i) {
        HahnSeries x = d[j + 1] * w[i];
        if (!lambda.is_zero()) x = x - lambda * u[j][i];
        w[i] = divide_exactly(x, d[j]);
      }
    }
    d.push_back(divide_exactly(poly_form(w, w), d[k]));
    u.push_back(std::move(w));
  }

  std::vector<KVector> out;
  for (const auto& w : u) out.push_back(from_poly(strip_monomial(w)));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (!form(out[i], out[j]).is_zero()) throw Error(ErrorCode::kInternal, "orthogonalization left a nonzero product");
    }
  }
  std::vector<KVector> both = vectors;
  both.insert(both.end(), out.begin(), out.end());
  if (rank(n, both) != vectors.size()) throw Error(ErrorCode::kInternal, "orthogonalization changed the span");
  return out;
}

std::set<TypeClass> pi_map(const Subspace& x) {
  std::set<TypeClass> out;
  for (const auto& v : orthogonalize(x.basis())) out.insert(type_of(v));
  return out;
}

// Kernel of the pairing matrix g_ji = b_j(i) t_i, read off the fraction-free
// reduced form: free column c gives d e_c - Σ_k R_kc e_{p_k}.
Subspace ortho_complement(const Subspace& x) {
  const std::size_t n = x.ambient();
  std::vector<PolyRow> gram;
  for (const auto& b : x.basis()) {
    PolyRow g = to_poly(b);
    for (std::size_t i = 0; i < n; ++i) g[i] = g[i].scaled(1, GammaExp::delta(i));
    gram.push_back(std::move(g));
  }
  const Echelon e = eliminate(n, std::move(gram));
  std::vector<KVector> kernel;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(e.pivots.begin(), e.pivots.end(), c) != e.pivots.end()) continue;
    PolyRow v(n);
    v[c] = e.det;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rows[k][c];
    KVector kv = from_poly(strip_monomial(std::move(v)));
    for (const auto& b : x.basis()) {
      if (!form(b, kv).is_zero()) throw Error(ErrorCode::kInternal, "complement vector is not orthogonal");
    }
    kernel.push_back(std::move(kv));
  }
  return Subspace::span(n, kernel);
}

bool closure_check(const Subspace& x) {
  const Subspace perp = ortho_complement(x);
  return x.dim() + perp.dim() == x.ambient() && ortho_complement(perp) == x;
}

std::map<TypeClass, int> counting_types(std::size_t n) {
  std::map<TypeClass, int> out;
  for (std::size_t i = 0; i < n; ++i) ++out[type_of(basis_vector(n, i))];
  return out;
}

// ---------------------------------------------------------------- sampling

std::int64_t KellerSampler::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

GammaExp KellerSampler::gamma(std::size_t max_index, std::int64_t bound) {
  std::vector<std::int64_t> v(max_index + 1, 0);
  for (auto& x : v) {
    if (integer(0, 1)) x = integer(-bound, bound);
  }
  return GammaExp(std::move(v));
}

HahnSeries KellerSampler::series(std::size_t max_terms, std::size_t max_index) {
  HahnSeries s;
  const auto terms = integer(1, static_cast<std::int64_t>(max_terms));
  for (std::int64_t k = 0; k < terms; ++k) {
    std::int64_t num = integer(-3, 3);
    if (num == 0) num = 1;
    mpq_class q(num, static_cast<unsigned long>(integer(1, 3)));
    q.canonicalize();
    s = s + HahnSeries::monomial(gamma(max_index, 2), q);
  }
  return s;
}

HahnScalar KellerSampler::scalar(std::size_t max_index, bool allow_zero) {
  if (allow_zero && integer(0, 4) == 0) return {};
  while (true) {
    HahnSeries num = series(2, max_index);
    if (num.is_zero()) continue;
    HahnSeries den = HahnSeries::constant(1);
    if (integer(0, 3) == 0) {
      den = series(2, max_index);
      if (den.is_zero()) continue;
    }
    return HahnScalar(std::move(num), std::move(den));
  }
}

KVector KellerSampler::vector(std::size_t n, std::size_t max_index) {
  KVector v(n);
  for (auto& x : v) x = scalar(max_index);
  return v;
}

std::vector<KVector> KellerSampler::independent_family(std::size_t n, std::size_t count) {
  std::vector<KVector> out;
  while (out.size() < count) {
    KVector v(n);
    for (auto& x : v) {
      if (integer(0, 2) == 0) continue;
      x = HahnScalar(HahnSeries::monomial(gamma(1, 1), mpq_class(integer(1, 3) * (integer(0, 1) ? 1 : -1))));
    }
    std::vector<KVector> trial = out;
    trial.push_back(v);
    if (rank(n, trial) == trial.size()) out = std::move(trial);
  }
  return out;
}

Subspace KellerSampler::subspace(std::size_t n, std::size_t max_dim) {
  const auto d = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(std::min(max_dim, n))));
  return Subspace::span(n, independent_family(n, d));
}

Subspace KellerSampler::subspace_of(const Subspace& outer, std::size_t max_dim) {
  const std::size_t n = outer.ambient();
  const auto d = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(std::min(max_dim, outer.dim()))));
  std::vector<KVector> picked;
  while (picked.size() < d) {
    KVector v(n);
    for (const auto& b : outer.basis()) v = add(v, scale(HahnScalar::rational(integer(-2, 2)), b));
    std::vector<KVector> trial = picked;
    trial.push_back(v);
    if (rank(n, trial) == trial.size()) picked = std::move(trial);
  }
  return Subspace::span(n, picked);
}

// ---------------------------------------------------------------- report

namespace {

struct Tally {
  std::size_t failures = 0;
  std::optional<std::size_t> first;
  void record(std::size_t trial, bool ok) {
    if (ok) return;
    ++failures;
    if (!first) first = trial;
  }
};

void add_tally(Report& rep, const std::string& name, const Tally& t) {
  std::vector<std::string> w;
  if (t.failures) w = {"failures=" + std::to_string(t.failures), "first_trial=" + std::to_string(*t.first)};
  rep.add(name, t.failures == 0, std::move(w));
}

bool subset(const std::set<TypeClass>& a, const std::set<TypeClass>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::set<TypeClass> all_types(std::size_t n) {
  std::set<TypeClass> out;
  for (std::size_t i = 0; i < n; ++i) out.insert(TypeClass::delta(i));
  return out;
}

}  // namespace

Report keller_report(const KellerOptions& opt) {
  if (opt.dim == 0 || opt.dim > 12) throw Error(ErrorCode::kInvalidArgument, "dim must be in 1..12");
  const std::size_t n = opt.dim;
  const std::size_t trials = opt.trials;
  KellerSampler rs(opt.seed);
  Report rep;
  rep.info("dim", std::to_string(n));
  rep.info("seed", std::to_string(opt.seed));
  rep.info("trials", std::to_string(trials));
  for (std::size_t i = 0; i < n; ++i) rep.info("type e" + std::to_string(i), type_of(basis_vector(n, i)).str());

  Tally gamma_order;
  for (std::size_t k = 0; k < trials; ++k) {
    const GammaExp a = rs.gamma(4, 3), b = rs.gamma(4, 3), c = rs.gamma(4, 3);
    bool ok = ((a < b) + (a == b) + (a > b)) == 1;
    ok = ok && ((a <=> b) == 0) == (a == b) && (a < b) == (b > a);
    if (a < b && b < c) ok = ok && a < c;
    if (a < b) ok = ok && a + c < b + c;
    gamma_order.record(k, ok);
  }
  add_tally(rep, "gamma_order", gamma_order);

  Tally series_laws;
  for (std::size_t k = 0; k < trials; ++k) {
    const HahnSeries x = rs.series(3, 3), y = rs.series(3, 3);
    bool ok = (x * y).valuation() == x.valuation() + y.valuation();
    ok = ok && (x * y).leading_coefficient() == x.leading_coefficient() * y.leading_coefficient();
    const Valuation vs = (x + y).valuation();
    const Valuation lo = std::min(x.valuation(), y.valuation());
    ok = ok && vs >= lo;
    if (x.valuation() != y.valuation()) ok = ok && vs == lo;
    series_laws.record(k, ok);
  }
  add_tally(rep, "series_valuation", series_laws);

  Tally field;
  const HahnScalar one = HahnScalar::rational(1);
  for (std::size_t k = 0; k < trials; ++k) {
    const HahnScalar a = rs.scalar(2), b = rs.scalar(2), c = rs.scalar(2);
    bool ok = (a + b) + c == a + (b + c) && a + b == b + a;
    ok = ok && (a * b) * c == a * (b * c) && a * b == b * a;
    ok = ok && a * (b + c) == a * b + a * c;
    ok = ok && (a + (-a)).is_zero() && a * one == a;
    if (!a.is_zero()) ok = ok && a * a.inverse() == one;
    ok = ok && (a * b).valuation() == a.valuation() + b.valuation();
    ok = ok && (a + b).valuation() >= std::min(a.valuation(), b.valuation());
    const HahnSeries x = rs.series(2, 2), y = rs.series(2, 2);
    ok = ok && HahnScalar(x + y) == HahnScalar(x) + HahnScalar(y) && HahnScalar(x * y) == HahnScalar(x) * HahnScalar(y);
    field.record(k, ok);
  }
  add_tally(rep, "scalar_field", field);

  bool phi_t = true;
  for (std::size_t i = 0; i <= 12; ++i) phi_t = phi_t && HahnSeries::t(i).valuation() == Valuation(GammaExp::delta(i));
  rep.add("phi_t_n", phi_t);
  bool form_e = true;
  for (std::size_t i = 0; i < n; ++i) {
    const KVector e = basis_vector(n, i);
    form_e = form_e && form(e) == HahnScalar(HahnSeries::t(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) form_e = form_e && form(e, basis_vector(n, j)).is_zero();
    }
  }
  rep.add("form_e_n", form_e);

  Tally aniso;
  for (std::size_t k = 0; k < trials; ++k) {
    const KVector f = rs.vector(6, 2);
    const Anisotropy a = anisotropy_check(f);
    bool ok;
    if (is_zero(f)) {
      ok = !a.nonzero && a.valuation.is_infinite();
    } else {
      ok = a.nonzero && a.valuation == a.predicted && a.unique_minimum;
    }
    aniso.record(k, ok);
  }
  add_tally(rep, "anisotropy_formula", aniso);

  Tally triangle, scaling;
  for (std::size_t k = 0; k < trials; ++k) {
    const KVector f = rs.vector(n, 2), g = rs.vector(n, 2);
    triangle.record(k, form(add(f, g)).valuation() >= std::min(form(f).valuation(), form(g).valuation()));
    if (!is_zero(f)) {
      const HahnScalar c = rs.scalar(2, false);
      scaling.record(k, type_of(scale(c, f)) == type_of(f));
    }
  }
  add_tally(rep, "triangle_inequality", triangle);
  add_tally(rep, "type_scaling", scaling);

  Tally distinct;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t ambient = 2 + k % 5;
    const std::size_t count = static_cast<std::size_t>(rs.integer(2, std::min<std::int64_t>(3, ambient)));
    const auto family = orthogonalize(rs.independent_family(ambient, count));
    std::set<TypeClass> types;
    bool ok = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
      types.insert(type_of(family[i]));
      for (std::size_t j = i + 1; j < family.size(); ++j) ok = ok && form(family[i], family[j]).is_zero();
    }
    distinct.record(k, ok && types.size() == family.size());
  }
  add_tally(rep, "orthogonal_distinct_types", distinct);

  Tally dd1, dd2, dd3, dd4, chain, basis_free, closure;
  const std::set<TypeClass> delta_types = all_types(n);
  for (std::size_t k = 0; k < trials; ++k) {
    const Subspace x = rs.subspace(n, 3);
    const auto px = pi_map(x);
    dd1.record(k, px.empty() == (x.dim() == 0) && px.size() == x.dim());

    const Subspace y = rs.subspace_of(x, 3);
    dd2.record(k, subset(pi_map(y), px));

    const Subspace xp = ortho_complement(x);
    const Subspace z = rs.subspace_of(xp, 3);
    std::set<TypeClass> joined = px;
    const auto pz = pi_map(z);
    joined.insert(pz.begin(), pz.end());
    dd3.record(k, pi_map(x.join(z)) == joined);

    std::set<TypeClass> expected;
    std::set_difference(delta_types.begin(), delta_types.end(), px.begin(), px.end(),
                        std::inserter(expected, expected.end()));
    dd4.record(k, pi_map(xp) == expected);

    // finite increasing chain y <= x <= x v z
    const Subspace top = x.join(z);
    std::set<TypeClass> uni = pi_map(y);
    uni.insert(px.begin(), px.end());
    const auto ptop = pi_map(top);
    uni.insert(ptop.begin(), ptop.end());
    chain.record(k, uni == ptop);

    std::vector<KVector> shuffled = x.basis();
    std::reverse(shuffled.begin(), shuffled.end());
    for (std::size_t i = 1; i < shuffled.size(); ++i) {
      shuffled[i] = add(shuffled[i], scale(HahnScalar::rational(rs.integer(-2, 2)), shuffled[0]));
    }
    std::set<TypeClass> again;
    for (const auto& v : orthogonalize(shuffled)) again.insert(type_of(v));
    basis_free.record(k, again == px);

    closure.record(k, closure_check(x));
  }
  add_tally(rep, "pi_empty_iff_zero", dd1);
  add_tally(rep, "pi_monotone", dd2);
  add_tally(rep, "pi_orthogonal_join", dd3);
  add_tally(rep, "pi_complement", dd4);
  add_tally(rep, "pi_finite_chain", chain);
  add_tally(rep, "pi_basis_independent", basis_free);
  add_tally(rep, "biorthogonal_closure", closure);

  Tally type_order;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto m = static_cast<std::size_t>(rs.integer(1, 12));
    std::vector<std::int64_t> v(13, 0);
    for (std::size_t i = 0; i <= 12; ++i) v[i] = 2 * rs.integer(-3, 3) + (i == m ? 1 : 0);
    GammaExp g(std::move(v));
    if (g < GammaExp{}) g = -g;
    const bool premise = GammaExp{} < g && TypeClass::of(g) == TypeClass::delta(m);
    type_order.record(k, premise && g > GammaExp::delta(m - 1));
  }
  add_tally(rep, "type_order", type_order);

  const auto counts = counting_types(n);
  bool counting = counts.size() == n;
  for (const auto& [t, c] : counts) counting = counting && c == 1 && delta_types.count(t);
  rep.add("counting_types", counting);

  KellerSampler table_rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t s = 0; s < 3; ++s) {
    const Subspace x = table_rng.subspace(n, 3);
    std::vector<std::string> items;
    for (const auto& t : pi_map(x)) items.push_back(t.str());
    std::string basis;
    for (const auto& b : x.basis()) basis += vector_str(b);
    rep.info("pi sample " + std::to_string(s) + " " + (basis.empty() ? "{0}" : basis), std::to_string(x.dim()),
             items);
  }
  return rep;
}

}  // namespace omlkit
