#include "kalmbach.hpp"

#include <algorithm>
#include <functional>

namespace omlkit {

KSeq KSeq::from_terms(const BoundedLattice& base, std::span<const ElementId> terms) {
  if (terms.size() % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "sequence length must be even");
  KSeq s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] >= base.size()) throw Error(ErrorCode::kInvalidArgument, "sequence term outside the base lattice");
    if (i > 0 && !base.lt(terms[i - 1], terms[i])) {
      throw Error(ErrorCode::kInvalidArgument, "sequence is not strictly increasing",
                  {base.name(terms[i - 1]), base.name(terms[i])});
    }
    s.push_back(terms[i]);
  }
  return s;
}

void KSeq::push_back(ElementId x) {
  if (n_ == kCapacity) throw Error(ErrorCode::kTooLarge, "sequence exceeds the term capacity");
  t_[n_++] = static_cast<std::uint16_t>(x);
}

std::strong_ordering KSeq::operator<=>(const KSeq& other) const noexcept {
  if (n_ != other.n_) return n_ <=> other.n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (t_[i] != other.t_[i]) return t_[i] <=> other.t_[i];
  }
  return std::strong_ordering::equal;
}

bool KSeq::operator==(const KSeq& other) const noexcept {
  return n_ == other.n_ && std::equal(t_.begin(), t_.begin() + n_, other.t_.begin());
}

std::string kseq_name(const BoundedLattice& base, const KSeq& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += base.name(x[i]);
  }
  return out + ")";
}

bool kleq(const BoundedLattice& base, const KSeq& x, const KSeq& y) {
  for (std::size_t i = 0; i < x.pairs(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < y.pairs() && !contained; ++j) {
      contained = base.leq(y.lo(j), x.lo(i)) && base.leq(x.hi(i), y.hi(j));
    }
    if (!contained) return false;
  }
  return true;
}

KSeq kperp(const BoundedLattice& base, const KSeq& x) {
  const std::size_t n = x.size();
  const bool has_bottom = n > 0 && x[0] == base.bottom();
  const bool has_top = n > 0 && x[n - 1] == base.top();
  KSeq r;
  if (!has_bottom) r.push_back(base.bottom());
  for (std::size_t i = has_bottom ? 1 : 0; i < (has_top ? n - 1 : n); ++i) r.push_back(x[i]);
  if (!has_top) r.push_back(base.top());
  return r;
}

KSeq kjoin(const BoundedLattice& base, const KSeq& x, const KSeq& y) {
  struct Hull {
    ElementId lo, hi;
  };
  std::vector<Hull> hulls;
  hulls.reserve(x.pairs() + y.pairs());
  for (std::size_t i = 0; i < x.pairs(); ++i) hulls.push_back({x.lo(i), x.hi(i)});
  for (std::size_t j = 0; j < y.pairs(); ++j) hulls.push_back({y.lo(j), y.hi(j)});

  auto separated = [&](const Hull& a, const Hull& b) { return base.lt(a.hi, b.lo) || base.lt(b.hi, a.lo); };
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < hulls.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < hulls.size() && !merged; ++j) {
        if (separated(hulls[i], hulls[j])) continue;
        hulls[i] = {base.meet(hulls[i].lo, hulls[j].lo), base.join(hulls[i].hi, hulls[j].hi)};
        hulls.erase(hulls.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  std::sort(hulls.begin(), hulls.end(), [&](const Hull& a, const Hull& b) { return base.lt(a.hi, b.lo); });
  KSeq out;
  for (const auto& h : hulls) {
    out.push_back(h.lo);
    out.push_back(h.hi);
  }
  return out;
}

KSeq kmeet(const BoundedLattice& base, const KSeq& x, const KSeq& y) {
  return kperp(base, kjoin(base, kperp(base, x), kperp(base, y)));
}

KalmbachOML::KalmbachOML(BoundedLattice base, std::vector<KSeq> elements)
    : base_(std::move(base)), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (elems_.empty() || !elems_.front().empty()) {
    throw Error(ErrorCode::kInternal, "Kalmbach element list lacks the empty sequence");
  }
  perp_.resize(elems_.size());
  for (ElementId x = 0; x < elems_.size(); ++x) perp_[x] = id(kperp(base_, elems_[x]));
  top_ = perp_[0];

  std::vector<ElementId> two_term;
  for (ElementId x = 0; x < elems_.size() && elems_[x].size() <= 2; ++x) {
    if (elems_[x].size() == 2) two_term.push_back(x);
  }
  for (ElementId a : two_term) {
    const bool minimal = std::none_of(two_term.begin(), two_term.end(), [&](ElementId b) {
      return b != a && kleq(base_, elems_[b], elems_[a]);
    });
    if (minimal) atoms_.push_back(a);
  }
}

std::optional<ElementId> KalmbachOML::find(const KSeq& s) const noexcept {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), s);
  if (it == elems_.end() || !(*it == s)) return std::nullopt;
  return static_cast<ElementId>(it - elems_.begin());
}

ElementId KalmbachOML::id(const KSeq& s) const {
  auto found = find(s);
  if (!found) throw Error(ErrorCode::kInternal, "sequence " + kseq_name(base_, s) + " is not an element");
  return *found;
}

ElementId KalmbachOML::join(ElementId x, ElementId y) const { return id(kjoin(base_, elems_[x], elems_[y])); }

ElementId KalmbachOML::meet(ElementId x, ElementId y) const { return id(kmeet(base_, elems_[x], elems_[y])); }

int KalmbachOML::interval_height(ElementId x, ElementId y) const {
  if (!leq(x, y)) return -1;
  const KSeq z = kmeet(base_, elems_[y], elems_[perp_[x]]);
  int h = 0;
  for (std::size_t i = 0; i < z.pairs(); ++i) h += base_.chain_height(z.lo(i), z.hi(i));
  return h;
}

OrthoLattice KalmbachOML::to_ortholattice(const LatticeLimits& limits) const {
  const std::size_t n = elems_.size();
  if (n > limits.max_elements) {
    throw Error(ErrorCode::kTooLarge, "K(L) has " + std::to_string(n) + " elements, above the dense cap of " +
                                          std::to_string(limits.max_elements));
  }
  std::vector<std::string> names(n);
  BitMatrix up(n);
  for (ElementId x = 0; x < n; ++x) {
    names[x] = name(x);
    for (ElementId y = 0; y < n; ++y) {
      if (leq(x, y)) up.set(x, y);
    }
  }
  return OrthoLattice(BoundedLattice::from_order(std::move(names), std::move(up), limits), perp_);
}

std::size_t count_even_chains(const BoundedLattice& base, std::size_t cap) {
  const std::size_t n = base.size();
  const std::size_t limit = cap + 1;
  auto sat_add = [limit](std::size_t a, std::size_t b) { return std::min(limit, a + b); };
  std::vector<std::size_t> ending(n, 1);  // chains of the current length ending at x
  std::size_t total = 1;                  // the empty chain
  for (std::size_t len = 2;; ++len) {
    std::vector<std::size_t> next(n, 0);
    bool any = false;
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId w = 0; w < n; ++w) {
        if (ending[w] && base.lt(w, x)) next[x] = sat_add(next[x], ending[w]);
      }
      any = any || next[x] != 0;
    }
    if (!any) break;
    if (len % 2 == 0) {
      for (std::size_t c : next) total = sat_add(total, c);
    }
    ending = std::move(next);
    if (total >= limit) break;
  }
  return total;
}

KalmbachOML kalmbach(const BoundedLattice& base, const KalmbachLimits& limits) {
  if (base.size() < 2) throw Error(ErrorCode::kInvalidArgument, "base lattice must have 0 != 1");
  const std::size_t count = count_even_chains(base, limits.max_elements);
  if (count > limits.max_elements) {
    throw Error(ErrorCode::kTooLarge, "K(L) would exceed " + std::to_string(limits.max_elements) + " elements");
  }
  const std::size_t n = base.size();
  std::vector<std::vector<ElementId>> above(n);
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (base.lt(x, y)) above[x].push_back(y);
    }
  }
  std::vector<KSeq> out;
  out.reserve(count);
  out.emplace_back();
  KSeq cur;
  std::function<void(ElementId)> extend = [&](ElementId last) {
    for (ElementId next : above[last]) {
      cur.push_back(next);
      if (cur.size() % 2 == 0) out.push_back(cur);
      extend(next);
      cur.pop_back();
    }
  };
  for (ElementId s = 0; s < n; ++s) {
    cur.push_back(s);
    extend(s);
    cur.pop_back();
  }
  return KalmbachOML(base, std::move(out));
}

namespace {

KSeq prefix(const KSeq& x, std::size_t pairs) {
  KSeq out;
  for (std::size_t i = 0; i < 2 * std::min(pairs, x.pairs()); ++i) out.push_back(x[i]);
  return out;
}

}  // namespace

KSeq kjoin_by_truncation(const KalmbachOML& k, const KSeq& x, const KSeq& y) {
  const auto& base = k.base();
  const std::size_t rounds = std::max(x.pairs(), y.pairs());
  KSeq z;
  for (std::size_t n = 0; n <= rounds; ++n) {
    KSeq zn = kjoin(base, prefix(x, n), prefix(y, n));
    if (!kleq(base, z, zn)) {
      throw Error(ErrorCode::kInternal, "truncation joins are not increasing at " + kseq_name(base, zn));
    }
    z = zn;
  }
  return z;
}

ElementId kjoin_bruteforce(const KalmbachOML& k, ElementId x, ElementId y) {
  std::vector<ElementId> bounds;
  for (ElementId z = 0; z < k.size(); ++z) {
    if (k.leq(x, z) && k.leq(y, z)) bounds.push_back(z);
  }
  ElementId best = bounds.front();
  for (ElementId z : bounds) {
    if (k.leq(z, best)) best = z;
  }
  for (ElementId z : bounds) {
    if (!k.leq(best, z)) throw Error(ErrorCode::kNotALattice, "no least upper bound", {k.name(x), k.name(y)});
  }
  return best;
}

std::vector<ElementId> phi_chain(const BoundedLattice& chain, const KSeq& x) {
  std::vector<ElementId> all(chain.size());
  for (ElementId z = 0; z < chain.size(); ++z) all[z] = z;
  if (!is_chain(chain, all)) throw Error(ErrorCode::kInvalidArgument, "phi is defined on chains only");
  std::vector<ElementId> out;
  for (ElementId z = 0; z < chain.size(); ++z) {
    for (std::size_t i = 0; i < x.pairs(); ++i) {
      if (chain.leq(x.lo(i), z) && chain.lt(z, x.hi(i))) {
        out.push_back(z);
        break;
      }
    }
  }
  return out;
}

PredicateResult katoms_check(const KalmbachOML& k) {
  std::vector<ElementId> expected;
  for (const auto& [a, b] : k.base().cover_pairs()) {
    const std::array<ElementId, 2> t{a, b};
    expected.push_back(k.id(KSeq::from_terms(k.base(), t)));
  }
  std::sort(expected.begin(), expected.end());
  const auto& actual = k.atom_ids();
  if (expected == actual) return {};
  std::vector<ElementId> diff;
  std::set_symmetric_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                                std::back_inserter(diff));
  return {false, {diff.front()}};
}

PredicateResult kblocks_check(const KalmbachOML& k) {
  const OrthoLattice dense = k.to_ortholattice();
  std::vector<std::vector<ElementId>> from_blocks;
  for (auto& b : blocks(dense)) from_blocks.push_back(std::move(b.elements));

  const auto& base = k.base();
  std::vector<std::vector<ElementId>> from_chains;
  for (const Chain& c : maximal_chains(base)) {
    std::vector<bool> in(base.size(), false);
    for (ElementId e : c) in[e] = true;
    std::vector<ElementId> members;
    for (ElementId x = 0; x < k.size(); ++x) {
      const KSeq& s = k.seq(x);
      bool inside = true;
      for (std::size_t i = 0; i < s.size() && inside; ++i) inside = in[s[i]];
      if (inside) members.push_back(x);
    }
    from_chains.push_back(std::move(members));
  }
  std::sort(from_chains.begin(), from_chains.end());
  if (std::adjacent_find(from_chains.begin(), from_chains.end()) != from_chains.end()) {
    throw Error(ErrorCode::kInternal, "two maximal chains give the same subalgebra");
  }
  for (const auto& b : from_blocks) {
    if (!std::binary_search(from_chains.begin(), from_chains.end(), b)) return {false, b};
  }
  for (const auto& c : from_chains) {
    if (!std::binary_search(from_blocks.begin(), from_blocks.end(), c)) return {false, c};
  }
  return {};
}

bool union_is_chain(const BoundedLattice& base, const KSeq& x, const KSeq& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!base.comparable(x[i], y[j])) return false;
    }
  }
  return true;
}

PredicateResult kcommute_check(const KalmbachOML& k) {
  for (ElementId x = 0; x < k.size(); ++x) {
    for (ElementId y = 0; y < k.size(); ++y) {
      if (commutes(k, x, y) != union_is_chain(k.base(), k.seq(x), k.seq(y))) return {false, {x, y}};
    }
  }
  return {};
}

}  // namespace omlkit
