#include "order.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace omlkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kNonTotalPerp: return "NonTotalPerp";
    case ErrorCode::kNotALattice: return "NotALattice";
    case ErrorCode::kNoBounds: return "NoBounds";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kNotComparable: return "NotComparable";
    case ErrorCode::kNotBelowJoin: return "NotBelowJoin";
    case ErrorCode::kNotOrderInverting: return "NotOrderInverting";
    case ErrorCode::kNotInvolutive: return "NotInvolutive";
    case ErrorCode::kNotComplement: return "NotComplement";
    case ErrorCode::kNotOml: return "NotOML";
    case ErrorCode::kNotCentral: return "NotCentral";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kRowsTooSmall: return "RowsTooSmall";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDependentInput: return "DependentInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> witness)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {}

BitMatrix::BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

std::size_t BitMatrix::row_count(std::size_t r) const noexcept {
  std::size_t count = 0;
  for (auto w : row(r)) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

namespace {

constexpr std::size_t kHardMaxElements = 65535;

std::size_t first_common_bit(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::size_t& count) {
  std::size_t first = SIZE_MAX;
  count = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t both = a[w] & b[w];
    if (both == 0) continue;
    if (first == SIZE_MAX) first = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
    count += static_cast<std::size_t>(std::popcount(both));
  }
  return first;
}

}  // namespace

std::optional<ElementId> BoundedLattice::find(const std::string& name) const {
  const auto& names = data_->names;
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<ElementId>(it - names.begin());
}

ElementId BoundedLattice::id(const std::string& name) const {
  auto found = find(name);
  if (!found) throw Error(ErrorCode::kUnknownName, "no element named '" + name + "'", {name});
  return *found;
}

int BoundedLattice::chain_height(ElementId x, ElementId y) const {
  if (!leq(x, y)) return -1;
  std::vector<int> best(size(), -1);
  best[x] = 0;
  for (ElementId z : data_->topo) {
    if (z == x || !leq(x, z) || !leq(z, y)) continue;
    int h = -1;
    for (ElementId w : data_->lower[z]) {
      if (best[w] >= 0) h = std::max(h, best[w] + 1);
    }
    best[z] = h;
  }
  return best[y];
}

BoundedLattice BoundedLattice::from_order(std::vector<std::string> names, BitMatrix up, const LatticeLimits& limits) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorCode::kNoBounds, "empty lattice");
  if (n > limits.max_elements || n > kHardMaxElements) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n) + " elements exceeds the cap of " +
                                          std::to_string(std::min(limits.max_elements, kHardMaxElements)));
  }
  if (up.size() != n) throw Error(ErrorCode::kInternal, "order matrix size mismatch");

  auto data = std::make_shared<Data>();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (up.test(x, y) && up.test(y, x)) {
        throw Error(ErrorCode::kCycleDetected, "order is not antisymmetric", {names[x], names[y]});
      }
    }
  }

  std::vector<std::size_t> up_count(n);
  for (std::size_t x = 0; x < n; ++x) up_count[x] = up.row_count(x);
  data->topo.resize(n);
  std::iota(data->topo.begin(), data->topo.end(), ElementId{0});
  std::stable_sort(data->topo.begin(), data->topo.end(),
                   [&](ElementId a, ElementId b) { return up_count[a] > up_count[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[data->topo[r]] = r;

  std::optional<ElementId> bottom;
  std::optional<ElementId> top;
  for (ElementId x = 0; x < n; ++x) {
    if (up_count[x] == n) bottom = x;
  }
  for (ElementId t = 0; t < n && !top; ++t) {
    bool all_below = true;
    for (std::size_t x = 0; x < n && all_below; ++x) all_below = up.test(x, t);
    if (all_below) top = t;
  }
  if (!bottom || !top) throw Error(ErrorCode::kNoBounds, "lattice has no bottom or no top");
  data->bottom = *bottom;
  data->top = *top;

  // Rank-indexed up-sets and reverse-rank-indexed down-sets: the first common
  // bit is then the least (resp. greatest) candidate bound.
  BitMatrix up_by_rank(n);
  BitMatrix down_by_rank(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (up.test(x, y)) {
        up_by_rank.set(x, rank[y]);
        down_by_rank.set(y, n - 1 - rank[x]);
      }
    }
  }
  std::vector<std::size_t> down_count(n);
  for (std::size_t x = 0; x < n; ++x) down_count[x] = down_by_rank.row_count(x);

  data->join.assign(n * n, 0);
  data->meet.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      std::size_t count = 0;
      std::size_t bit = first_common_bit(up_by_rank.row(x), up_by_rank.row(y), count);
      if (bit == SIZE_MAX || up_count[data->topo[bit]] != count) {
        throw Error(ErrorCode::kNotALattice, "no least upper bound", {names[x], names[y]});
      }
      const ElementId j = data->topo[bit];
      bit = first_common_bit(down_by_rank.row(x), down_by_rank.row(y), count);
      if (bit == SIZE_MAX || down_count[data->topo[n - 1 - bit]] != count) {
        throw Error(ErrorCode::kNotALattice, "no greatest lower bound", {names[x], names[y]});
      }
      const ElementId m = data->topo[n - 1 - bit];
      data->join[x * n + y] = data->join[y * n + x] = static_cast<std::uint16_t>(j);
      data->meet[x * n + y] = data->meet[y * n + x] = static_cast<std::uint16_t>(m);
    }
  }

  data->cover = BitMatrix(n);
  data->upper.assign(n, {});
  data->lower.assign(n, {});
  std::vector<std::uint64_t> dominated(up.words_per_row());
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(dominated.begin(), dominated.end(), 0);
    for (std::size_t r = rank[x] + 1; r < n; ++r) {
      const ElementId z = data->topo[r];
      if (!up.test(x, z)) continue;
      if ((dominated[z / 64] >> (z % 64)) & 1u) continue;
      data->cover.set(x, z);
      auto zrow = up.row(z);
      for (std::size_t w = 0; w < dominated.size(); ++w) dominated[w] |= zrow[w];
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (data->cover.test(x, y)) {
        data->cover_list.emplace_back(x, y);
        data->upper[x].push_back(y);
        data->lower[y].push_back(x);
      }
    }
  }

  data->names = std::move(names);
  data->up = std::move(up);
  BoundedLattice lattice;
  lattice.data_ = std::move(data);
  return lattice;
}

BoundedLattice lattice_from_covers(const std::vector<std::string>& names,
                                   const std::vector<std::pair<std::string, std::string>>& cover_pairs,
                                   const LatticeLimits& limits) {
  const std::size_t n = names.size();
  if (n > limits.max_elements || n > kHardMaxElements) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n) + " elements exceeds the cap");
  }
  std::unordered_map<std::string, ElementId> index;
  for (ElementId i = 0; i < n; ++i) {
    if (!index.emplace(names[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate element name '" + names[i] + "'", {names[i]});
    }
  }
  std::vector<std::vector<ElementId>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [lo, hi] : cover_pairs) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw Error(ErrorCode::kUnknownName, "cover references '" + lo + "'", {lo});
    if (b == index.end()) throw Error(ErrorCode::kUnknownName, "cover references '" + hi + "'", {hi});
    if (a->second == b->second) throw Error(ErrorCode::kCycleDetected, "self-cover on '" + lo + "'", {lo});
    succ[a->second].push_back(b->second);
    ++indegree[b->second];
  }

  std::vector<ElementId> order;
  order.reserve(n);
  std::vector<ElementId> ready;
  for (ElementId i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    ElementId x = ready.back();
    ready.pop_back();
    order.push_back(x);
    for (ElementId y : succ[x]) {
      if (--indegree[y] == 0) ready.push_back(y);
    }
  }
  if (order.size() != n) {
    std::vector<std::string> witness;
    for (ElementId i = 0; i < n; ++i) {
      if (indegree[i] != 0) witness.push_back(names[i]);
    }
    throw Error(ErrorCode::kCycleDetected, "cover relation contains a cycle", witness);
  }

  BitMatrix up(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const ElementId x = *it;
    up.set(x, x);
    auto row = up.row(x);
    for (ElementId y : succ[x]) {
      auto yrow = up.row(y);
      for (std::size_t w = 0; w < row.size(); ++w) row[w] |= yrow[w];
    }
  }
  return BoundedLattice::from_order(names, std::move(up), limits);
}

std::vector<ElementId> atoms(const BoundedLattice& lattice) {
  if (lattice.size() == 1) return {};
  return lattice.upper_covers(lattice.bottom());
}

std::vector<Chain> maximal_chains(const BoundedLattice& lattice) {
  std::vector<Chain> chains;
  Chain current{lattice.bottom()};
  std::function<void(ElementId)> walk = [&](ElementId x) {
    if (x == lattice.top()) {
      chains.push_back(current);
      return;
    }
    for (ElementId y : lattice.upper_covers(x)) {
      current.push_back(y);
      walk(y);
      current.pop_back();
    }
  };
  walk(lattice.bottom());
  return chains;
}

bool is_chain(const BoundedLattice& lattice, std::span<const ElementId> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (!lattice.comparable(elements[i], elements[j])) return false;
    }
  }
  return true;
}

std::size_t height(const BoundedLattice& lattice) {
  return static_cast<std::size_t>(lattice.chain_height(lattice.bottom(), lattice.top()));
}

BoundedLattice lattice_product(const BoundedLattice& a, const BoundedLattice& b, const LatticeLimits& limits) {
  const std::size_t nb = b.size();
  if (a.size() * nb > limits.max_elements) throw Error(ErrorCode::kTooLarge, "product exceeds the size cap");
  std::vector<std::string> names;
  for (ElementId x = 0; x < a.size(); ++x) {
    for (ElementId y = 0; y < nb; ++y) names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (ElementId x = 0; x < a.size(); ++x) {
    for (ElementId y = 0; y < nb; ++y) {
      for (ElementId x2 : a.upper_covers(x)) covers.emplace_back(names[x * nb + y], names[x2 * nb + y]);
      for (ElementId y2 : b.upper_covers(y)) covers.emplace_back(names[x * nb + y], names[x * nb + y2]);
    }
  }
  return lattice_from_covers(names, covers, limits);
}

BoundedLattice induced_lattice(const BoundedLattice& lattice, std::span<const ElementId> elements) {
  const std::size_t n = elements.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (ElementId e : elements) names.push_back(lattice.name(e));
  BitMatrix up(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (lattice.leq(elements[i], elements[j])) up.set(i, j);
    }
  }
  return BoundedLattice::from_order(std::move(names), std::move(up));
}

IntervalView interval(const BoundedLattice& lattice, ElementId x, ElementId y) {
  if (!lattice.leq(x, y)) {
    throw Error(ErrorCode::kNotComparable, "interval endpoints are not ordered", {lattice.name(x), lattice.name(y)});
  }
  IntervalView view;
  view.lower = x;
  view.upper = y;
  for (ElementId z = 0; z < lattice.size(); ++z) {
    if (lattice.leq(x, z) && lattice.leq(z, y)) view.parent_ids.push_back(z);
  }
  view.lattice = induced_lattice(lattice, view.parent_ids);
  return view;
}

std::optional<std::vector<ElementId>> find_isomorphism(const BoundedLattice& a, const BoundedLattice& b,
                                                       std::span<const ElementId> unary_a,
                                                       std::span<const ElementId> unary_b) {
  const bool with_unary = !unary_a.empty() && !unary_b.empty();
  const std::size_t n = a.size();
  if (n != b.size() || a.cover_pairs().size() != b.cover_pairs().size()) return std::nullopt;

  auto signature = [](const BoundedLattice& l, ElementId x) {
    std::size_t ups = l.up_sets().row_count(x);
    std::size_t downs = 0;
    for (ElementId y = 0; y < l.size(); ++y) downs += l.leq(y, x) ? 1 : 0;
    return std::array<std::size_t, 4>{ups, downs, l.upper_covers(x).size(), l.lower_covers(x).size()};
  };
  std::vector<std::array<std::size_t, 4>> sig_a(n), sig_b(n);
  for (ElementId x = 0; x < n; ++x) {
    sig_a[x] = signature(a, x);
    sig_b[x] = signature(b, x);
  }
  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), ElementId{0});
  std::sort(order.begin(), order.end(), [&](ElementId p, ElementId q) { return sig_a[p] > sig_a[q]; });

  std::vector<ElementId> map(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) {
    if (k == n) return true;
    const ElementId x = order[k];
    for (ElementId y = 0; y < n; ++y) {
      if (used[y] || sig_a[x] != sig_b[y]) continue;
      bool consistent = true;
      for (std::size_t i = 0; i < k && consistent; ++i) {
        const ElementId p = order[i];
        consistent = a.leq(p, x) == b.leq(map[p], y) && a.leq(x, p) == b.leq(y, map[p]);
        if (consistent && with_unary) {
          if (unary_a[x] == p) consistent = unary_b[y] == map[p];
          if (consistent && unary_a[p] == x) consistent = unary_b[map[p]] == y;
        }
      }
      if (consistent && with_unary && unary_a[x] == x) consistent = unary_b[y] == y;
      if (!consistent) continue;
      map[x] = y;
      used[y] = true;
      if (extend(k + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

PredicateResult check_modular(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        if (l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) return {false, {x, y, z}};
      }
    }
  }
  return {};
}

PredicateResult check_distributive(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      for (ElementId z = 0; z < n; ++z) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return {false, {x, y, z}};
      }
    }
  }
  return {};
}

namespace {

PredicateResult check_semimodular(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      if (l.covers(l.meet(a, b), a) && !l.covers(b, l.join(a, b))) return {false, {a, b}};
    }
  }
  return {};
}

PredicateResult check_dual_semimodular(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      if (l.covers(a, l.join(a, b)) && !l.covers(l.meet(a, b), b)) return {false, {a, b}};
    }
  }
  return {};
}

PredicateResult check_covering(const BoundedLattice& l) {
  for (ElementId a : atoms(l)) {
    for (ElementId x = 0; x < l.size(); ++x) {
      if (!l.leq(a, x) && !l.covers(x, l.join(x, a))) return {false, {a, x}};
    }
  }
  return {};
}

PredicateResult check_atomic(const BoundedLattice& l) {
  const auto as = atoms(l);
  for (ElementId x = 0; x < l.size(); ++x) {
    if (x == l.bottom()) continue;
    bool found = std::any_of(as.begin(), as.end(), [&](ElementId a) { return l.leq(a, x); });
    if (!found) return {false, {x}};
  }
  return {};
}

PredicateResult check_atomistic(const BoundedLattice& l) {
  const auto as = atoms(l);
  for (ElementId x = 0; x < l.size(); ++x) {
    ElementId acc = l.bottom();
    for (ElementId a : as) {
      if (l.leq(a, x)) acc = l.join(acc, a);
    }
    if (acc != x) return {false, {x}};
  }
  return {};
}

PredicateResult check_weakly_atomic(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (!l.lt(x, y)) continue;
      bool found = false;
      for (const auto& [u, v] : l.cover_pairs()) {
        if (l.leq(x, u) && l.leq(v, y)) {
          found = true;
          break;
        }
      }
      if (!found) return {false, {x, y}};
    }
  }
  return {};
}

PredicateResult check_strongly_atomic(const BoundedLattice& l) {
  // [x,y] is atomic iff every z in (x,y] dominates an upper cover of x.
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId z = 0; z < n; ++z) {
      if (!l.lt(x, z)) continue;
      const auto& ups = l.upper_covers(x);
      bool found = std::any_of(ups.begin(), ups.end(), [&](ElementId w) { return l.leq(w, z); });
      if (!found) return {false, {x, z}};
    }
  }
  return {};
}

PredicateResult check_complemented(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    bool found = false;
    for (ElementId y = 0; y < n && !found; ++y) {
      found = l.meet(x, y) == l.bottom() && l.join(x, y) == l.top();
    }
    if (!found) return {false, {x}};
  }
  return {};
}

PredicateResult check_relatively_complemented(const BoundedLattice& l) {
  const ElementId n = static_cast<ElementId>(l.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (!l.leq(x, y)) continue;
      for (ElementId z = 0; z < n; ++z) {
        if (!l.leq(x, z) || !l.leq(z, y)) continue;
        bool found = false;
        for (ElementId w = 0; w < n && !found; ++w) {
          found = l.leq(x, w) && l.leq(w, y) && l.meet(z, w) == x && l.join(z, w) == y;
        }
        if (!found) return {false, {x, y, z}};
      }
    }
  }
  return {};
}

}  // namespace

LatticePredicates predicates(const BoundedLattice& lattice) {
  LatticePredicates p;
  p.modular = check_modular(lattice);
  p.semimodular = check_semimodular(lattice);
  p.dual_semimodular = check_dual_semimodular(lattice);
  p.covering = check_covering(lattice);
  p.atomic = check_atomic(lattice);
  p.atomistic = check_atomistic(lattice);
  p.weakly_atomic = check_weakly_atomic(lattice);
  p.strongly_atomic = check_strongly_atomic(lattice);
  p.distributive = check_distributive(lattice);
  p.complemented = check_complemented(lattice);
  p.relatively_complemented = check_relatively_complemented(lattice);
  return p;
}

}  // namespace omlkit
