#include "ortho.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace omlkit {

OrthoLattice::OrthoLattice(BoundedLattice lattice, std::vector<ElementId> perp)
    : lattice_(std::move(lattice)), perp_(std::move(perp)) {
  const ElementId n = static_cast<ElementId>(lattice_.size());
  if (perp_.size() != n) throw Error(ErrorCode::kNonTotalPerp, "complementation is not total");
  for (ElementId x = 0; x < n; ++x) {
    if (perp_[x] >= n) throw Error(ErrorCode::kNonTotalPerp, "complementation maps outside the lattice");
  }
  for (ElementId x = 0; x < n; ++x) {
    if (perp_[perp_[x]] != x) throw Error(ErrorCode::kNotInvolutive, "x'' != x", {lattice_.name(x)});
  }
  for (ElementId x = 0; x < n; ++x) {
    if (lattice_.meet(x, perp_[x]) != lattice_.bottom() || lattice_.join(x, perp_[x]) != lattice_.top()) {
      throw Error(ErrorCode::kNotComplement, "x' is not a complement of x", {lattice_.name(x)});
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (lattice_.leq(x, y) && !lattice_.leq(perp_[y], perp_[x])) {
        throw Error(ErrorCode::kNotOrderInverting, "x <= y but y' is not below x'",
                    {lattice_.name(x), lattice_.name(y)});
      }
    }
  }
}

OrthoLattice ortholattice(BoundedLattice lattice, const std::vector<std::pair<std::string, std::string>>& perp_pairs) {
  const std::size_t n = lattice.size();
  std::vector<ElementId> perp(n, static_cast<ElementId>(n));
  for (const auto& [from, to] : perp_pairs) perp[lattice.id(from)] = lattice.id(to);
  for (ElementId x = 0; x < n; ++x) {
    if (perp[x] == n) throw Error(ErrorCode::kNonTotalPerp, "no complement given for '" + lattice.name(x) + "'",
                                  {lattice.name(x)});
  }
  return OrthoLattice(std::move(lattice), std::move(perp));
}

OrthoLattice boolean_algebra(unsigned n) {
  if (n > 12) throw Error(ErrorCode::kTooLarge, "2^" + std::to_string(n) + " exceeds the lattice cap");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::string> names(size);
  for (std::size_t s = 0; s < size; ++s) {
    std::string bits(n, '0');
    for (unsigned i = 0; i < n; ++i) {
      if ((s >> i) & 1u) bits[i] = '1';
    }
    names[s] = n == 0 ? "0" : bits;
  }
  BitMatrix up(size);
  for (std::size_t s = 0; s < size; ++s) {
    for (std::size_t t = 0; t < size; ++t) {
      if ((s & t) == s) up.set(s, t);
    }
  }
  std::vector<ElementId> perp(size);
  for (std::size_t s = 0; s < size; ++s) perp[s] = static_cast<ElementId>((size - 1) ^ s);
  return OrthoLattice(BoundedLattice::from_order(std::move(names), std::move(up)), std::move(perp));
}

OrthoLattice mo(unsigned k) {
  if (k == 0 || k > 26) throw Error(ErrorCode::kInvalidArgument, "MO_k needs 1 <= k <= 26");
  std::vector<std::string> names{"0"};
  for (unsigned i = 0; i < k; ++i) {
    const std::string letter(1, static_cast<char>('a' + i));
    names.push_back(letter);
    names.push_back(letter + "'");
  }
  names.push_back("1");
  const std::size_t n = names.size();
  BitMatrix up(n);
  for (std::size_t x = 0; x < n; ++x) {
    up.set(x, x);
    up.set(0, x);
    up.set(x, n - 1);
  }
  std::vector<ElementId> perp(n);
  perp[0] = static_cast<ElementId>(n - 1);
  perp[n - 1] = 0;
  for (std::size_t i = 1; i + 1 < n; i += 2) {
    perp[i] = static_cast<ElementId>(i + 1);
    perp[i + 1] = static_cast<ElementId>(i);
  }
  return OrthoLattice(BoundedLattice::from_order(std::move(names), std::move(up)), std::move(perp));
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool any_bit(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

void bron_kerbosch(const std::vector<Bits>& adj, std::vector<ElementId>& r, Bits p, Bits x,
                   std::vector<std::vector<ElementId>>& out) {
  if (!any_bit(p) && !any_bit(x)) {
    out.push_back(r);
    return;
  }
  // pivot: vertex of P u X with most neighbours in P
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have_pivot = false;
  for (std::size_t w = 0; w < p.size(); ++w) {
    std::uint64_t cand = p[w] | x[w];
    while (cand) {
      const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand));
      cand &= cand - 1;
      std::size_t count = 0;
      for (std::size_t k = 0; k < p.size(); ++k) count += static_cast<std::size_t>(std::popcount(p[k] & adj[v][k]));
      if (!have_pivot || count > best) {
        pivot = v;
        best = count;
        have_pivot = true;
      }
    }
  }
  Bits todo(p.size());
  for (std::size_t w = 0; w < p.size(); ++w) todo[w] = p[w] & ~adj[pivot][w];
  for (std::size_t w = 0; w < todo.size(); ++w) {
    while (todo[w]) {
      const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(todo[w]));
      todo[w] &= todo[w] - 1;
      Bits p2(p.size()), x2(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        p2[k] = p[k] & adj[v][k];
        x2[k] = x[k] & adj[v][k];
      }
      r.push_back(static_cast<ElementId>(v));
      bron_kerbosch(adj, r, std::move(p2), std::move(x2), out);
      r.pop_back();
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      x[v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
}

bool is_boolean_subalgebra(const OrthoLattice& ol, const std::vector<ElementId>& elems) {
  std::vector<bool> in(ol.size(), false);
  for (ElementId e : elems) in[e] = true;
  if (!in[ol.bottom()] || !in[ol.top()]) return false;
  for (ElementId x : elems) {
    if (!in[ol.perp(x)]) return false;
    for (ElementId y : elems) {
      if (!in[ol.join(x, y)] || !in[ol.meet(x, y)]) return false;
    }
  }
  for (ElementId x : elems) {
    for (ElementId y : elems) {
      for (ElementId z : elems) {
        if (ol.meet(x, ol.join(y, z)) != ol.join(ol.meet(x, y), ol.meet(x, z))) return false;
      }
    }
  }
  return true;
}

void require_oml(const OrthoLattice& ol) {
  auto result = is_orthomodular(ol);
  if (!result.holds) {
    throw Error(ErrorCode::kNotOml, "ortholattice is not orthomodular", element_names(ol, result.witness));
  }
}

}  // namespace

std::vector<Block> blocks(const OrthoLattice& ol) {
  require_oml(ol);
  const std::size_t n = ol.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<Bits> adj(n, Bits(words, 0));
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x + 1; y < n; ++y) {
      if (commutes(ol, x, y)) {
        adj[x][y / 64] |= std::uint64_t{1} << (y % 64);
        adj[y][x / 64] |= std::uint64_t{1} << (x % 64);
      }
    }
  }
  Bits all(words, 0);
  for (std::size_t v = 0; v < n; ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
  std::vector<std::vector<ElementId>> cliques;
  std::vector<ElementId> r;
  bron_kerbosch(adj, r, all, Bits(words, 0), cliques);

  std::vector<Block> out;
  out.reserve(cliques.size());
  for (auto& clique : cliques) {
    std::sort(clique.begin(), clique.end());
    if (!is_boolean_subalgebra(ol, clique)) {
      throw Error(ErrorCode::kInternal, "maximal commuting set is not a Boolean subalgebra",
                  element_names(ol, clique));
    }
    out.push_back(Block{std::move(clique)});
  }
  std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) { return a.elements < b.elements; });
  return out;
}

bool is_directly_irreducible(const OrthoLattice& ol) { return trivial_center(center(ol)); }

std::pair<OrthoLattice, OrthoLattice> decompose(const OrthoLattice& ol, ElementId c) {
  for (ElementId y = 0; y < ol.size(); ++y) {
    if (!commutes(ol, c, y)) throw Error(ErrorCode::kNotCentral, "element is not central", {ol.name(c), ol.name(y)});
  }
  const ElementId cp = ol.perp(c);
  OrthoLattice left = interval_oml(ol, ol.bottom(), c);
  OrthoLattice right = interval_oml(ol, ol.bottom(), cp);

  // local ids of the interval factors are their parent ids in increasing order
  auto local_ids = [&](ElementId upper) {
    std::vector<ElementId> local(ol.size(), static_cast<ElementId>(ol.size()));
    ElementId next = 0;
    for (ElementId z = 0; z < ol.size(); ++z) {
      if (ol.leq(z, upper)) local[z] = next++;
    }
    return local;
  };
  const auto to_left = local_ids(c);
  const auto to_right = local_ids(cp);
  const std::size_t width = right.size();
  std::vector<std::size_t> image(ol.size());
  std::vector<bool> hit(left.size() * right.size(), false);
  for (ElementId x = 0; x < ol.size(); ++x) {
    image[x] = to_left[ol.meet(x, c)] * width + to_right[ol.meet(x, cp)];
    if (hit[image[x]]) throw Error(ErrorCode::kInternal, "central decomposition map is not injective");
    hit[image[x]] = true;
  }
  if (ol.size() != left.size() * right.size()) {
    throw Error(ErrorCode::kInternal, "central decomposition map is not onto");
  }
  auto pair_join = [&](std::size_t a, std::size_t b) {
    return left.join(a / width, b / width) * width + right.join(a % width, b % width);
  };
  auto pair_meet = [&](std::size_t a, std::size_t b) {
    return left.meet(a / width, b / width) * width + right.meet(a % width, b % width);
  };
  for (ElementId x = 0; x < ol.size(); ++x) {
    if (image[ol.perp(x)] != left.perp(image[x] / width) * width + right.perp(image[x] % width)) {
      throw Error(ErrorCode::kInternal, "central decomposition does not preserve complements");
    }
    for (ElementId y = 0; y < ol.size(); ++y) {
      if (image[ol.join(x, y)] != pair_join(image[x], image[y]) ||
          image[ol.meet(x, y)] != pair_meet(image[x], image[y])) {
        throw Error(ErrorCode::kInternal, "central decomposition does not preserve lattice operations");
      }
    }
  }
  return {std::move(left), std::move(right)};
}

OrthoLattice product(std::span<const OrthoLattice> factors) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidArgument, "product needs at least one factor");
  std::size_t total = 1;
  for (const auto& f : factors) {
    total *= f.size();
    if (total > 65535) throw Error(ErrorCode::kTooLarge, "product is too large");
  }
  auto digits = [&](std::size_t code) {
    std::vector<ElementId> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = static_cast<ElementId>(code % factors[i].size());
      code /= factors[i].size();
    }
    return d;
  };
  auto encode = [&](const std::vector<ElementId>& d) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) code = code * factors[i].size() + d[i];
    return static_cast<ElementId>(code);
  };
  std::vector<std::vector<ElementId>> tuples(total);
  std::vector<std::string> names(total);
  for (std::size_t s = 0; s < total; ++s) {
    tuples[s] = digits(s);
    std::string name = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) name += ",";
      name += factors[i].name(tuples[s][i]);
    }
    names[s] = name + ")";
  }
  BitMatrix up(total);
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t t = 0; t < total; ++t) {
      bool below = true;
      for (std::size_t i = 0; i < factors.size() && below; ++i) below = factors[i].leq(tuples[s][i], tuples[t][i]);
      if (below) up.set(s, t);
    }
  }
  std::vector<ElementId> perp(total);
  for (std::size_t s = 0; s < total; ++s) {
    std::vector<ElementId> d = tuples[s];
    for (std::size_t i = 0; i < factors.size(); ++i) d[i] = factors[i].perp(d[i]);
    perp[s] = encode(d);
  }
  return OrthoLattice(BoundedLattice::from_order(std::move(names), std::move(up), {total}), std::move(perp));
}

OrthoLattice horizontal_sum(std::span<const OrthoLattice> summands) {
  if (summands.empty()) throw Error(ErrorCode::kInvalidArgument, "horizontal sum needs at least one summand");
  for (const auto& s : summands) require_oml(s);
  if (summands.size() == 1) return summands.front();

  std::vector<std::string> names{"0"};
  struct Origin {
    std::size_t summand;
    ElementId id;
  };
  std::vector<Origin> origin{{0, 0}};
  std::vector<std::vector<ElementId>> local_to_global(summands.size());
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto& s = summands[i];
    local_to_global[i].assign(s.size(), 0);
    for (ElementId x = 0; x < s.size(); ++x) {
      if (x == s.bottom() || x == s.top()) continue;
      local_to_global[i][x] = static_cast<ElementId>(names.size());
      names.push_back(std::to_string(i) + "." + s.name(x));
      origin.push_back({i, x});
    }
  }
  const ElementId top = static_cast<ElementId>(names.size());
  names.push_back("1");
  origin.push_back({0, 0});
  for (std::size_t i = 0; i < summands.size(); ++i) {
    local_to_global[i][summands[i].bottom()] = 0;
    local_to_global[i][summands[i].top()] = top;
  }

  const std::size_t n = names.size();
  BitMatrix up(n);
  for (std::size_t x = 0; x < n; ++x) {
    up.set(x, x);
    up.set(0, x);
    up.set(x, top);
  }
  for (std::size_t x = 1; x < top; ++x) {
    for (std::size_t y = 1; y < top; ++y) {
      if (origin[x].summand == origin[y].summand &&
          summands[origin[x].summand].leq(origin[x].id, origin[y].id)) {
        up.set(x, y);
      }
    }
  }
  std::vector<ElementId> perp(n);
  perp[0] = top;
  perp[top] = 0;
  for (std::size_t x = 1; x < top; ++x) {
    const auto& s = summands[origin[x].summand];
    perp[x] = local_to_global[origin[x].summand][s.perp(origin[x].id)];
  }
  OrthoLattice sum(BoundedLattice::from_order(std::move(names), std::move(up)), std::move(perp));
  auto oml = is_orthomodular(sum);
  if (!oml.holds) throw Error(ErrorCode::kInternal, "horizontal sum is not orthomodular", element_names(sum, oml.witness));
  return sum;
}

namespace {

OrthoLattice interval_algebra(const OrthoLattice& ol, const IntervalView& view) {
  std::vector<ElementId> to_local(ol.size(), static_cast<ElementId>(ol.size()));
  for (ElementId i = 0; i < view.parent_ids.size(); ++i) to_local[view.parent_ids[i]] = i;
  std::vector<ElementId> perp(view.parent_ids.size());
  for (ElementId i = 0; i < view.parent_ids.size(); ++i) {
    const ElementId z = view.parent_ids[i];
    perp[i] = to_local[ol.join(view.lower, ol.meet(ol.perp(z), view.upper))];
  }
  return OrthoLattice(view.lattice, std::move(perp));
}

}  // namespace

OrthoLattice interval_oml(const OrthoLattice& ol, ElementId x, ElementId y) {
  if (!ol.leq(x, y)) throw Error(ErrorCode::kNotComparable, "interval endpoints are not ordered", {ol.name(x), ol.name(y)});
  require_oml(ol);
  const IntervalView view = interval(ol.lattice(), x, y);
  OrthoLattice result = interval_algebra(ol, view);
  auto oml = is_orthomodular(result);
  if (!oml.holds) throw Error(ErrorCode::kInternal, "interval is not orthomodular", element_names(result, oml.witness));

  if (x != ol.bottom()) {
    // z -> z ^ x' onto [0, y ^ x'], inverse w -> w v x
    const ElementId target_top = ol.meet(y, ol.perp(x));
    const IntervalView base_view = interval(ol.lattice(), ol.bottom(), target_top);
    const OrthoLattice base = interval_algebra(ol, base_view);
    if (base.size() != result.size()) throw Error(ErrorCode::kInternal, "interval sizes differ");
    std::vector<ElementId> base_local(ol.size(), static_cast<ElementId>(ol.size()));
    for (ElementId i = 0; i < base_view.parent_ids.size(); ++i) base_local[base_view.parent_ids[i]] = i;
    std::vector<ElementId> map(result.size());
    for (ElementId i = 0; i < result.size(); ++i) {
      const ElementId z = view.parent_ids[i];
      const ElementId w = ol.meet(z, ol.perp(x));
      if (base_local[w] == ol.size() || ol.join(w, x) != z) {
        throw Error(ErrorCode::kInternal, "interval isomorphism fails at '" + ol.name(z) + "'");
      }
      map[i] = base_local[w];
    }
    for (ElementId i = 0; i < result.size(); ++i) {
      if (map[result.perp(i)] != base.perp(map[i])) throw Error(ErrorCode::kInternal, "interval isomorphism breaks #");
      for (ElementId j = 0; j < result.size(); ++j) {
        if (result.leq(i, j) != base.leq(map[i], map[j])) throw Error(ErrorCode::kInternal, "interval isomorphism breaks order");
      }
    }
  }
  return result;
}

std::optional<std::vector<ElementId>> find_ortho_isomorphism(const OrthoLattice& a, const OrthoLattice& b) {
  return find_isomorphism(a.lattice(), b.lattice(), a.perp_map(), b.perp_map());
}

PredicateResult check_foulis_holland(const OrthoLattice& ol) {
  const ElementId n = static_cast<ElementId>(ol.size());
  std::vector<std::vector<bool>> comm(n, std::vector<bool>(n));
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) comm[x][y] = commutes(ol, x, y);
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (!comm[x][y]) continue;
      for (ElementId z = 0; z < n; ++z) {
        if (!comm[x][z] || !comm[y][z]) continue;
        if (ol.meet(x, ol.join(y, z)) != ol.join(ol.meet(x, y), ol.meet(x, z)) ||
            ol.join(x, ol.meet(y, z)) != ol.meet(ol.join(x, y), ol.join(x, z))) {
          return {false, {x, y, z}};
        }
      }
    }
  }
  return {};
}

}  // namespace omlkit
