#pragma once

// Reference evaluators used to cross-check the library.  Everything here
// works straight from the definitions with plain loops and no pruning, so
// it shares no search or reporting code with the implementation.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dcont/dcont.hpp"

namespace oracle {

using dcont::Container;
using dcont::ContMorphism;
using dcont::DirectedContainer;
using dcont::Index;
using dcont::kNone;
using dcont::SmallCat;

inline bool in_range(Index i, std::size_t n) { return i < n; }

/// Tables total and typed, by direct inspection.
inline bool well_typed(const DirectedContainer& dc) {
  const auto n = dc.base.shapes.size();
  if (dc.base.positions.size() != n || dc.root.size() != n || dc.down.size() != n || dc.plus.size() != n)
    return false;
  for (Index s = 0; s < n; ++s) {
    if (!dc.base.positions[s]) return false;
    const auto k = dc.base.positions[s]->size();
    if (!in_range(dc.root[s], k) || dc.down[s].size() != k || dc.plus[s].size() != k) return false;
    for (Index p = 0; p < k; ++p) {
      const Index d = dc.down[s][p];
      if (!in_range(d, n) || dc.plus[s][p].size() != dc.base.positions[d]->size()) return false;
      for (Index r : dc.plus[s][p])
        if (!in_range(r, k)) return false;
    }
  }
  return true;
}

/// The five directed-container laws, evaluated literally.
inline bool lawful(const DirectedContainer& dc) {
  if (!well_typed(dc)) return false;
  const auto size = [&](Index s) { return dc.base.positions[s]->size(); };
  for (Index s = 0; s < dc.down.size(); ++s) {
    const Index o = dc.root[s];
    if (dc.down[s][o] != s) return false;
    for (Index p = 0; p < size(s); ++p) {
      const Index d = dc.down[s][p];
      if (dc.plus[s][p][dc.root[d]] != p) return false;
    }
    for (Index p = 0; p < size(s); ++p)
      if (dc.plus[s][o][p] != p) return false;
    for (Index p = 0; p < size(s); ++p) {
      const Index d = dc.down[s][p];
      for (Index q = 0; q < size(d); ++q) {
        const Index pq = dc.plus[s][p][q];
        if (dc.down[s][pq] != dc.down[d][q]) return false;
        const Index dd = dc.down[d][q];
        for (Index u = 0; u < size(dd); ++u)
          if (dc.plus[s][pq][u] != dc.plus[s][p][dc.plus[d][q][u]]) return false;
      }
    }
  }
  return true;
}

/// Category laws on complete tables.
inline bool cat_lawful(const SmallCat& c) {
  const auto n = c.objects.size(), a = c.arrows.size();
  for (Index f = 0; f < a; ++f)
    if (!in_range(c.src[f], n) || !in_range(c.tgt[f], n)) return false;
  for (Index x = 0; x < n; ++x) {
    const Index i = c.ident[x];
    if (!in_range(i, a) || c.src[i] != x || c.tgt[i] != x) return false;
  }
  for (Index f = 0; f < a; ++f)
    for (Index g = 0; g < a; ++g) {
      const Index h = c.comp[f][g];
      if ((c.tgt[f] == c.src[g]) != (h != kNone)) return false;
      if (h == kNone) continue;
      if (!in_range(h, a) || c.src[h] != c.src[f] || c.tgt[h] != c.tgt[g]) return false;
    }
  for (Index f = 0; f < a; ++f) {
    if (c.comp[c.ident[c.src[f]]][f] != f || c.comp[f][c.ident[c.tgt[f]]] != f) return false;
    for (Index g = 0; g < a; ++g) {
      if (c.comp[f][g] == kNone) continue;
      for (Index h = 0; h < a; ++h)
        if (c.comp[g][h] != kNone && c.comp[c.comp[f][g]][h] != c.comp[f][c.comp[g][h]]) return false;
    }
  }
  return true;
}

/// M1-M3 on lawful endpoints with a well-typed (t, q).
inline bool dmorph_lawful(const ContMorphism& m, const DirectedContainer& a, const DirectedContainer& b) {
  for (Index s = 0; s < a.shape_count(); ++s) {
    const Index ts = m.shape_map[s];
    const auto& q = m.position_map[s];
    if (q[b.root[ts]] != a.root[s]) return false;
    for (Index p = 0; p < b.fiber_size(ts); ++p) {
      const Index sub = a.down[s][q[p]];
      if (m.shape_map[sub] != b.down[ts][p]) return false;
      for (Index p2 = 0; p2 < b.fiber_size(b.down[ts][p]); ++p2)
        if (a.plus[s][q[p]][m.position_map[sub][p2]] != q[b.plus[ts][p][p2]]) return false;
    }
  }
  return true;
}

/// Calls f on every function [n] → [k], as a vector of images.
template <class F>
void each_function(std::size_t n, std::size_t k, F&& f) {
  if (n > 0 && k == 0) return;
  std::vector<Index> v(n, 0);
  while (true) {
    f(v);
    std::size_t i = n;
    while (i > 0 && ++v[i - 1] == k) v[--i] = 0;
    if (i == 0) return;
  }
}

/// Every well-typed (root, down, plus) table on c, lawful or not.
inline std::vector<DirectedContainer> all_candidates(const Container& c) {
  const auto n = c.shape_count();
  std::vector<DirectedContainer> out;
  DirectedContainer dc = dcont::blank_dcont(c);
  std::vector<std::pair<Index, Index>> cells;
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < c.fiber_size(s); ++p) cells.emplace_back(s, p);
  std::function<void(std::size_t)> plus_rec;
  std::function<void(std::size_t)> down_rec = [&](std::size_t i) {
    if (i == cells.size()) return plus_rec(0);
    auto [s, p] = cells[i];
    for (Index d = 0; d < n; ++d) {
      dc.down[s][p] = d;
      down_rec(i + 1);
    }
  };
  plus_rec = [&](std::size_t i) {
    if (i == cells.size()) {
      out.push_back(dc);
      return;
    }
    auto [s, p] = cells[i];
    each_function(c.fiber_size(dc.down[s][p]), c.fiber_size(s), [&](const std::vector<Index>& row) {
      dc.plus[s][p] = row;
      plus_rec(i + 1);
    });
  };
  std::function<void(Index)> root_rec = [&](Index s) {
    if (s == n) return down_rec(0);
    for (Index o = 0; o < c.fiber_size(s); ++o) {
      dc.root[s] = o;
      root_rec(s + 1);
    }
  };
  root_rec(0);
  return out;
}

/// Unpruned reference enumeration: all candidates filtered by `lawful`.
inline std::vector<DirectedContainer> brute_structures(const Container& c) {
  std::vector<DirectedContainer> out;
  for (auto& dc : all_candidates(c))
    if (lawful(dc)) out.push_back(std::move(dc));
  return out;
}

/// Canonical text for set comparisons.
inline std::string key(const DirectedContainer& dc) { return dcont::io::to_json(dc).dump(); }

inline std::set<std::string> keys(const std::vector<DirectedContainer>& v) {
  std::set<std::string> out;
  for (const auto& dc : v) out.insert(key(dc));
  return out;
}

/// Copy of dc with shapes permuted by sigma and positions of s by pi[s]:
/// element s of a lands at sigma[s] in the result.
inline DirectedContainer permute(const DirectedContainer& dc, const std::vector<Index>& sigma,
                                 const std::vector<std::vector<Index>>& pi) {
  const auto n = dc.shape_count();
  std::vector<std::string> shapes(n);
  std::vector<std::vector<std::string>> fibers(n);
  for (Index s = 0; s < n; ++s) {
    shapes[sigma[s]] = dc.shapes()[s];
    fibers[sigma[s]].resize(dc.fiber_size(s));
    for (Index p = 0; p < dc.fiber_size(s); ++p) fibers[sigma[s]][pi[s][p]] = dc.fiber(s)[p];
  }
  DirectedContainer out = dcont::blank_dcont(dcont::make_container(shapes, fibers));
  for (Index s = 0; s < n; ++s) {
    const Index t = sigma[s];
    out.root[t] = pi[s][dc.root[s]];
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      out.down[t][pi[s][p]] = sigma[d];
      auto& row = out.plus[t][pi[s][p]];
      row.assign(dc.fiber_size(d), kNone);
      for (Index q = 0; q < dc.fiber_size(d); ++q) row[pi[d][q]] = pi[s][dc.plus[s][p][q]];
    }
  }
  return out;
}

/// Brute-force isomorphism test over every shape and position permutation.
inline bool brute_isomorphic(const DirectedContainer& a, const DirectedContainer& b) {
  const auto n = a.shape_count();
  if (n != b.shape_count()) return false;
  std::vector<Index> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool sizes = true;
    for (Index s = 0; s < n; ++s) sizes = sizes && a.fiber_size(s) == b.fiber_size(sigma[s]);
    if (!sizes) continue;
    std::vector<std::vector<Index>> pi(n);
    for (Index s = 0; s < n; ++s) {
      pi[s].resize(a.fiber_size(s));
      std::iota(pi[s].begin(), pi[s].end(), 0);
    }
    // odometer over the per-shape permutations
    while (true) {
      auto c = permute(a, sigma, pi);
      bool same = c.root == b.root && c.down == b.down && c.plus == b.plus;
      if (same) return true;
      Index s = 0;
      while (s < n && !std::next_permutation(pi[s].begin(), pi[s].end())) ++s;
      if (s == n) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937;

inline Index pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<Index>(0, n - 1)(rng); }

inline std::vector<Index> random_permutation(Rng& rng, std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

/// Random relabelling of dc, isomorphic by construction.
inline DirectedContainer random_relabel(Rng& rng, const DirectedContainer& dc) {
  std::vector<std::vector<Index>> pi;
  for (Index s = 0; s < dc.shape_count(); ++s) pi.push_back(random_permutation(rng, dc.fiber_size(s)));
  return permute(dc, random_permutation(rng, dc.shape_count()), pi);
}

/// A small lawful directed container from the built-in families.
inline DirectedContainer random_example(Rng& rng) {
  namespace ex = dcont::examples;
  const Index n = pick(rng, 4);
  std::vector<std::string> set;
  for (Index i = 0; i <= pick(rng, 3); ++i) set.push_back(std::string(1, static_cast<char>('a' + i)));
  switch (pick(rng, 6)) {
    case 0: return ex::suffixes(n);
    case 1: return ex::cyclic(n);
    case 2: return ex::saturating_nat(n);
    case 3: return ex::context_trees(n);
    case 4: return ex::reader(set);
    default: return ex::array(set);
  }
}

/// Random container with up to max_shapes shapes and fibers of size 1..max_fiber.
inline Container random_container(Rng& rng, std::size_t max_shapes, std::size_t max_fiber) {
  const std::size_t n = 1 + pick(rng, max_shapes);
  std::vector<std::string> shapes;
  std::vector<std::vector<std::string>> fibers;
  for (std::size_t s = 0; s < n; ++s) {
    shapes.push_back("s" + std::to_string(s));
    fibers.push_back(dcont::range_set("", 1 + pick(rng, max_fiber)).elements);
  }
  return dcont::make_container(shapes, fibers);
}

/// Random well-typed tables (almost never lawful).
inline DirectedContainer random_tables(Rng& rng, const Container& c) {
  DirectedContainer dc = dcont::blank_dcont(c);
  for (Index s = 0; s < c.shape_count(); ++s) {
    dc.root[s] = pick(rng, c.fiber_size(s));
    for (Index p = 0; p < c.fiber_size(s); ++p) {
      const Index d = pick(rng, c.shape_count());
      dc.down[s][p] = d;
      dc.plus[s][p].clear();
      for (Index q = 0; q < c.fiber_size(d); ++q) dc.plus[s][p].push_back(pick(rng, c.fiber_size(s)));
    }
  }
  return dc;
}

}  // namespace oracle
