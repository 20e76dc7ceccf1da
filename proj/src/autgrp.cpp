#include "geodef/autgrp.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "geodef/util.hpp"

namespace geodef::autgrp {

Perm identity_perm(std::uint32_t n) {
  Perm p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = static_cast<std::uint16_t>(i);
  return p;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm invert_perm(const Perm& a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint16_t>(i);
  return out;
}

bool PointGroup::contains(const Perm& p) const {
  return std::binary_search(elems.begin(), elems.end(), p);
}

bool PointGroup::subset_of(const PointGroup& other) const {
  if (universe != other.universe) return false;
  return std::includes(other.elems.begin(), other.elems.end(), elems.begin(), elems.end());
}

PointGroup make_group(std::uint32_t universe, std::vector<Perm> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return PointGroup{universe, std::move(elems)};
}

bool satisfies_group_laws(const PointGroup& g) {
  if (!g.contains(identity_perm(g.universe))) return false;
  for (const Perm& a : g.elems)
    if (!g.contains(invert_perm(a))) return false;
  for (const Perm& a : g.elems)
    for (const Perm& b : g.elems)
      if (!g.contains(compose_perm(a, b))) return false;
  return true;
}

namespace {

// Backtracking state shared per worker: relation tuples are precomputed
// per depth, holding every tuple over points 0..m that mentions m.
struct DepthTuples {
  int arity = 0;
  std::vector<std::uint8_t> components;  // arity entries per tuple
  std::vector<std::uint8_t> member;      // one entry per tuple
};

struct SearchPlan {
  std::uint32_t universe = 0;
  // tuples[rel][depth]
  std::vector<std::vector<DepthTuples>> tuples;
  std::vector<const Bitset*> bits;
};

SearchPlan build_plan(const geom::Geometry& g) {
  SearchPlan plan;
  plan.universe = static_cast<std::uint32_t>(g.universe());
  for (const geom::NamedRelation& rel : g.rels) {
    plan.bits.push_back(&rel.ext.bits);
    std::vector<DepthTuples> per_depth(plan.universe);
    int n = rel.ext.n;
    for (auto& dt : per_depth) dt.arity = n;
    // Wrong candidates almost always break a constraint among distinct
    // points, and member tuples are the sharpest; list those first so
    // failing branches die after a short scan. Within a bucket the
    // enumeration order is kept, so the layout is deterministic.
    struct Entry {
      std::vector<std::uint32_t> tuple;
      bool member;
      int bucket;  // 0: distinct member, 1: distinct non-member, 2: repeats
    };
    std::vector<std::vector<Entry>> entries(plan.universe);
    std::vector<std::uint32_t> tuple(n, 0);
    while (true) {
      std::uint32_t maxc = 0;
      bool distinct = true;
      for (int i = 0; i < n; ++i) {
        maxc = std::max(maxc, tuple[i]);
        for (int j = i + 1; j < n; ++j)
          if (tuple[i] == tuple[j]) distinct = false;
      }
      bool member = rel.ext.test_points(tuple);
      int bucket = distinct ? (member ? 0 : 1) : 2;
      entries[maxc].push_back(Entry{tuple, member, bucket});
      int pos = n - 1;
      while (pos >= 0) {
        if (++tuple[pos] < plan.universe) break;
        tuple[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    for (std::uint32_t depth = 0; depth < plan.universe; ++depth) {
      std::stable_sort(entries[depth].begin(), entries[depth].end(),
                       [](const Entry& a, const Entry& b) { return a.bucket < b.bucket; });
      DepthTuples& dt = per_depth[depth];
      for (const Entry& e : entries[depth]) {
        for (int i = 0; i < n; ++i) dt.components.push_back(static_cast<std::uint8_t>(e.tuple[i]));
        dt.member.push_back(e.member ? 1 : 0);
      }
    }
    plan.tuples.push_back(std::move(per_depth));
  }
  return plan;
}

struct Searcher {
  const SearchPlan& plan;
  std::vector<std::uint16_t> img;
  std::vector<std::uint8_t> used;
  std::vector<Perm>& out;

  Searcher(const SearchPlan& p, std::vector<Perm>& sink)
      : plan(p), img(p.universe, 0), used(p.universe, 0), out(sink) {}

  bool consistent_at(std::uint32_t depth) const {
    std::uint64_t u = plan.universe;
    const std::uint16_t* im = img.data();
    for (std::size_t r = 0; r < plan.tuples.size(); ++r) {
      const DepthTuples& dt = plan.tuples[r][depth];
      const Bitset& bits = *plan.bits[r];
      std::size_t count = dt.member.size();
      const std::uint8_t* comp = dt.components.data();
      const std::uint8_t* mem = dt.member.data();
      switch (dt.arity) {
        case 1:
          for (std::size_t t = 0; t < count; ++t, ++comp)
            if (bits.test(im[comp[0]]) != static_cast<bool>(mem[t])) return false;
          break;
        case 2:
          for (std::size_t t = 0; t < count; ++t, comp += 2)
            if (bits.test(im[comp[0]] + u * im[comp[1]]) != static_cast<bool>(mem[t]))
              return false;
          break;
        case 3:
          for (std::size_t t = 0; t < count; ++t, comp += 3)
            if (bits.test(im[comp[0]] + u * (im[comp[1]] + u * im[comp[2]])) !=
                static_cast<bool>(mem[t]))
              return false;
          break;
        default:
          for (std::size_t t = 0; t < count; ++t, comp += dt.arity) {
            std::uint64_t idx = 0;
            for (int i = dt.arity; i-- > 0;) idx = idx * u + im[comp[i]];
            if (bits.test(idx) != static_cast<bool>(mem[t])) return false;
          }
      }
    }
    return true;
  }

  void dfs(std::uint32_t depth) {
    if (depth == plan.universe) {
      out.emplace_back(img.begin(), img.end());
      return;
    }
    for (std::uint32_t cand = 0; cand < plan.universe; ++cand) {
      if (used[cand]) continue;
      img[depth] = static_cast<std::uint16_t>(cand);
      used[cand] = 1;
      if (consistent_at(depth)) dfs(depth + 1);
      used[cand] = 0;
    }
  }
};

}  // namespace

PointGroup brute_force_aut(const geom::Geometry& g, std::uint32_t max_universe,
                           unsigned threads) {
  std::uint64_t u = g.universe();
  if (u > max_universe)
    fail(Err::CapacityExceeded, "universe of " + std::to_string(u) +
                                    " points exceeds the search bound " +
                                    std::to_string(max_universe));
  SearchPlan plan = build_plan(g);
  std::uint32_t n = plan.universe;

  if (threads <= 1) {
    std::vector<Perm> found;
    Searcher s(plan, found);
    s.dfs(0);
    return PointGroup{n, std::move(found)};
  }

  // Split on the image of point 0; each worker explores its subtrees and
  // results are concatenated in candidate order, which preserves the
  // lexicographic output order.
  std::vector<std::vector<Perm>> slots(n);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint32_t cand = next.fetch_add(1);
      if (cand >= n) return;
      Searcher s(plan, slots[cand]);
      s.img[0] = static_cast<std::uint16_t>(cand);
      s.used[cand] = 1;
      if (s.consistent_at(0)) s.dfs(1);
    }
  };
  std::vector<std::thread> pool;
  unsigned t = std::min<unsigned>(threads, n);
  for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::vector<Perm> found;
  for (auto& s : slots)
    for (Perm& p : s) found.push_back(std::move(p));
  return PointGroup{n, std::move(found)};
}

std::vector<std::pair<FieldAutomorphism, Perm>> induced_group(const Gf& field, int d) {
  std::vector<std::pair<FieldAutomorphism, Perm>> out;
  std::uint64_t n = geom::point_count(field, d);
  for (const FieldAutomorphism& a : frobenius_group(field)) {
    Perm perm(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      geom::Point<Gf> p = geom::index_point(field, d, static_cast<std::uint32_t>(i));
      for (auto& c : p) c = a.apply(field, c);
      perm[i] = static_cast<std::uint16_t>(geom::point_index(field, p));
    }
    out.emplace_back(a, std::move(perm));
  }
  return out;
}

PointGroup compose_groups(std::span<const Perm> a, std::span<const Perm> b,
                          std::uint32_t universe) {
  for (const Perm& p : a)
    if (p.size() != universe) fail(Err::UniverseMismatch, "left factor on a different universe");
  for (const Perm& p : b)
    if (p.size() != universe) fail(Err::UniverseMismatch, "right factor on a different universe");
  std::vector<Perm> elems;
  elems.reserve(a.size() * b.size());
  for (const Perm& x : a)
    for (const Perm& y : b) elems.push_back(compose_perm(x, y));
  return make_group(universe, std::move(elems));
}

std::optional<affine::AffineMap<Gf>> perm_as_affine(const Gf& field, int d, const Perm& perm) {
  std::uint32_t n = static_cast<std::uint32_t>(geom::point_count(field, d));
  geom::Point<Gf> t = geom::index_point(field, d, perm[0]);  // image of the origin
  affine::Matrix<Gf> linear;
  linear.d = d;
  linear.a.assign(static_cast<std::size_t>(d) * d, field.zero());
  for (int j = 0; j < d; ++j) {
    geom::Point<Gf> unit(d, field.zero());
    unit[j] = field.one();
    std::uint32_t uidx = geom::point_index(field, unit);
    geom::Point<Gf> img = geom::index_point(field, d, perm[uidx]);
    for (int r = 0; r < d; ++r) linear.at(r, j) = field.sub(img[r], t[r]);
  }
  if (!affine::mat_invertible(field, linear)) return std::nullopt;
  affine::AffineMap<Gf> cand{std::move(linear), t};
  for (std::uint32_t i = 0; i < n; ++i) {
    geom::Point<Gf> p = geom::index_point(field, d, i);
    if (geom::point_index(field, affine::apply(field, cand, p)) != perm[i]) return std::nullopt;
  }
  return cand;
}

Decomposition decompose(const Perm& alpha, const geom::Geometry& g) {
  if (alpha.size() != g.universe())
    fail(Err::UniverseMismatch, "bijection is on a different universe");
  for (const geom::NamedRelation& rel : g.rels)
    if (!affine::respects(alpha, rel.ext).ok)
      fail(Err::NotAnAutomorphism, "map does not respect relation '" + rel.name + "'");

  std::optional<Decomposition> found;
  for (const auto& [aut, perm] : induced_group(g.field, g.d)) {
    Perm candidate = compose_perm(alpha, invert_perm(perm));
    if (auto aff = perm_as_affine(g.field, g.d, candidate)) {
      if (found)
        fail(Err::NoDecomposition, "decomposition is not unique on this structure");
      found = Decomposition{std::move(*aff), aut};
    }
  }
  if (!found)
    fail(Err::NoDecomposition,
         "no affine-after-induced decomposition exists; the structure may violate the "
         "field-size hypothesis");
  return *found;
}

}  // namespace geodef::autgrp
