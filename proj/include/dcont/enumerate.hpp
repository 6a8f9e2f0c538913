#pragma once

#include <string>
#include <vector>

#include "constructions.hpp"

namespace dcont {

inline constexpr std::size_t kDefaultBudget = 100'000'000;

/// Size of the unpruned candidate space for directed-container structures
/// on c: Π s. |P s| root choices times Π (s, p). Σ s'. |P s|^|P s'|
/// (a subshape for every position, then a plus row typed by it).
inline std::size_t structure_space_size(const Container& c) {
  std::size_t space = 1;
  for (Index s = 0; s < c.shape_count(); ++s) {
    space = saturating_mul(space, c.fiber_size(s));
    std::size_t per_position = 0;
    for (Index d = 0; d < c.shape_count(); ++d)
      per_position = saturating_add(per_position, saturating_pow(c.fiber_size(s), c.fiber_size(d)));
    space = saturating_mul(space, saturating_pow(per_position, c.fiber_size(s)));
  }
  return space;
}

/// Size of the unpruned (t, q) space between two directed containers.
inline std::size_t morphism_space_size(const DirectedContainer& src, const DirectedContainer& dst) {
  std::size_t space = 1;
  for (Index s = 0; s < src.shape_count(); ++s) {
    std::size_t per_shape = 0;
    for (Index t = 0; t < dst.shape_count(); ++t)
      per_shape = saturating_add(per_shape, saturating_pow(src.fiber_size(s), dst.fiber_size(t)));
    space = saturating_mul(space, per_shape);
  }
  return space;
}

namespace detail {

/// Backtracking over (root, down, plus) cells in canonical order.  Unit
/// laws force root-related cells, L2 prunes each plus entry, and L5 is
/// checked on every instance whose cells are all filled.
class StructureSearch {
 public:
  explicit StructureSearch(const Container& c) : dc_(blank_dcont(c)) {}

  std::vector<DirectedContainer> run() {
    for (Index s = 0; s < dc_.shape_count(); ++s)
      if (dc_.fiber_size(s) == 0) return {};
    choose_root(0);
    return std::move(out_);
  }

 private:
  void choose_root(Index s) {
    if (s == dc_.shape_count()) return choose_down(0, 0);
    for (Index o = 0; o < dc_.fiber_size(s); ++o) {
      dc_.root[s] = o;
      choose_root(s + 1);
    }
    dc_.root[s] = kNone;
  }

  void choose_down(Index s, Index p) {
    if (s == dc_.shape_count()) {
      cells_.clear();
      for (Index a = 0; a < dc_.shape_count(); ++a)
        for (Index b = 0; b < dc_.fiber_size(a); ++b) {
          dc_.plus[a][b].assign(dc_.fiber_size(dc_.down[a][b]), kNone);
          for (Index c = 0; c < dc_.plus[a][b].size(); ++c) cells_.push_back({a, b, c});
        }
      return choose_plus(0);
    }
    if (p == dc_.fiber_size(s)) return choose_down(s + 1, 0);
    if (p == dc_.root[s]) {
      dc_.down[s][p] = s;  // L1
      choose_down(s, p + 1);
    } else {
      for (Index d = 0; d < dc_.shape_count(); ++d) {
        dc_.down[s][p] = d;
        choose_down(s, p + 1);
      }
    }
    dc_.down[s][p] = kNone;
  }

  void choose_plus(std::size_t k) {
    if (k == cells_.size()) {
      out_.push_back(dc_);
      return;
    }
    const auto [s, p, q] = cells_[k];
    const Index d = dc_.down[s][p];
    Index forced = kNone;
    if (q == dc_.root[d]) forced = p;  // L3
    if (p == dc_.root[s]) {            // L4
      if (forced != kNone && forced != q) return;
      forced = q;
    }
    const Index lo = forced == kNone ? 0 : forced;
    const Index hi = forced == kNone ? dc_.fiber_size(s) : forced + 1;
    for (Index r = lo; r < hi; ++r) {
      if (dc_.down[s][r] != dc_.down[d][q]) continue;  // L2
      dc_.plus[s][p][q] = r;
      if (associative_so_far(s)) choose_plus(k + 1);
    }
    dc_.plus[s][p][q] = kNone;
  }

  /// L5 on every filled instance rooted at shape s or at a shape whose
  /// subshapes include s.
  bool associative_so_far(Index changed) const {
    for (Index s = 0; s < dc_.shape_count(); ++s) {
      bool relevant = s == changed;
      for (Index p = 0; p < dc_.fiber_size(s) && !relevant; ++p) relevant = dc_.down[s][p] == changed;
      if (!relevant) continue;
      for (Index p = 0; p < dc_.fiber_size(s); ++p) {
        const Index d = dc_.down[s][p];
        for (Index q = 0; q < dc_.fiber_size(d); ++q) {
          const Index pq = dc_.plus[s][p][q];
          if (pq == kNone) continue;
          const Index dd = dc_.down[d][q];
          for (Index u = 0; u < dc_.fiber_size(dd); ++u) {
            const Index lhs = dc_.plus[s][pq][u];
            const Index inner = dc_.plus[d][q][u];
            if (lhs == kNone || inner == kNone) continue;
            const Index rhs = dc_.plus[s][p][inner];
            if (rhs == kNone) continue;
            if (lhs != rhs) return false;
          }
        }
      }
    }
    return true;
  }

  struct Cell {
    Index s, p, q;
  };

  DirectedContainer dc_;
  std::vector<Cell> cells_;
  std::vector<DirectedContainer> out_;
};

class MorphismSearch {
 public:
  MorphismSearch(const DirectedContainer& src, const DirectedContainer& dst) : src_(src), dst_(dst) {}

  std::vector<ContMorphism> run() {
    if (src_.shape_count() > 0 && dst_.shape_count() == 0) return {};
    m_.shape_map.assign(src_.shape_count(), kNone);
    m_.position_map.assign(src_.shape_count(), {});
    choose_t(0);
    return std::move(out_);
  }

 private:
  void choose_t(Index s) {
    if (s == src_.shape_count()) {
      cells_.clear();
      for (Index a = 0; a < src_.shape_count(); ++a) {
        m_.position_map[a].assign(dst_.fiber_size(m_.shape_map[a]), kNone);
        for (Index p = 0; p < m_.position_map[a].size(); ++p) cells_.push_back({a, p});
      }
      return choose_q(0);
    }
    for (Index t = 0; t < dst_.shape_count(); ++t) {
      m_.shape_map[s] = t;
      choose_t(s + 1);
    }
    m_.shape_map[s] = kNone;
  }

  void choose_q(std::size_t k) {
    if (k == cells_.size()) {
      out_.push_back(m_);
      return;
    }
    const auto [s, p] = cells_[k];
    const Index ts = m_.shape_map[s];
    const bool root = p == dst_.root[ts];
    const Index lo = root ? src_.root[s] : 0;  // M2
    const Index hi = root ? src_.root[s] + 1 : src_.fiber_size(s);
    for (Index r = lo; r < hi; ++r) {
      if (m_.shape_map[src_.down[s][r]] != dst_.down[ts][p]) continue;  // M1
      m_.position_map[s][p] = r;
      if (m3_so_far()) choose_q(k + 1);
    }
    m_.position_map[s][p] = kNone;
  }

  bool m3_so_far() const {
    const auto& t = m_.shape_map;
    const auto& q = m_.position_map;
    for (Index s = 0; s < src_.shape_count(); ++s)
      for (Index p = 0; p < q[s].size(); ++p) {
        const Index qp = q[s][p];
        if (qp == kNone) continue;
        const Index sub = src_.down[s][qp];
        const Index dsub = dst_.down[t[s]][p];
        for (Index p2 = 0; p2 < dst_.fiber_size(dsub); ++p2) {
          const Index back = q[sub][p2];
          const Index rhs = q[s][dst_.plus[t[s]][p][p2]];
          if (back == kNone || rhs == kNone) continue;
          if (src_.plus[s][qp][back] != rhs) return false;
        }
      }
    return true;
  }

  struct Cell {
    Index s, p;
  };

  const DirectedContainer& src_;
  const DirectedContainer& dst_;
  ContMorphism m_;
  std::vector<Cell> cells_;
  std::vector<ContMorphism> out_;
};

}  // namespace detail

/// Every lawful (↓, o, ⊕) on c, in lexicographic order of the flattened
/// (root, down, plus) tables.
inline std::vector<DirectedContainer> enum_structures(const Container& c, std::size_t budget = kDefaultBudget) {
  if (auto v = validate_container(c); !v.passed())
    throw Error("ill-typed", "invalid container: " + v.violations.front().line());
  if (const auto space = structure_space_size(c); space > budget)
    throw Error("budget-exceeded", std::to_string(space) + " candidate structures");
  return detail::StructureSearch(c).run();
}

/// Every directed-container morphism src → dst, in lexicographic order of
/// (t, q).
inline std::vector<DContMorphism> enum_morphisms(const DirectedContainer& src, const DirectedContainer& dst,
                                                 std::size_t budget = kDefaultBudget) {
  if (!is_lawful(src) || !is_lawful(dst)) throw Error("ill-typed", "endpoints must be lawful");
  if (const auto space = morphism_space_size(src, dst); space > budget)
    throw Error("budget-exceeded", std::to_string(space) + " candidate morphisms");
  auto a = std::make_shared<const DirectedContainer>(src);
  auto b = std::make_shared<const DirectedContainer>(dst);
  std::vector<DContMorphism> out;
  for (auto& m : detail::MorphismSearch(src, dst).run()) out.push_back({std::move(m), a, b});
  return out;
}

/// Class id (index of its representative in the returned list) for every
/// entry, representatives being first-in-order members of each class.
struct IsoClasses {
  std::vector<DirectedContainer> representatives;
  std::vector<Index> class_of;
};

inline IsoClasses iso_classes(const std::vector<DirectedContainer>& items) {
  IsoClasses out;
  for (const auto& dc : items) {
    Index cls = kNone;
    for (Index r = 0; r < out.representatives.size() && cls == kNone; ++r)
      if (isomorphic(out.representatives[r], dc)) cls = r;
    if (cls == kNone) {
      cls = out.representatives.size();
      out.representatives.push_back(dc);
    }
    out.class_of.push_back(cls);
  }
  return out;
}

inline std::vector<DirectedContainer> quotient_by_iso(const std::vector<DirectedContainer>& items) {
  return iso_classes(items).representatives;
}

inline bool is_groupoid(const DirectedContainer& dc) {
  return groupoid_inverse_search(dcont_to_cat(dc)).has_value();
}

/// Isomorphic to its own opposite.  Groupoids are, but not conversely:
/// any commutative one-object monoid is self-dual.
inline bool is_self_dual(const DirectedContainer& dc) { return isomorphic(opposite_dcont(dc), dc); }

/// Every ⊖ table passing check_bidirected, by brute force over all tables.
inline std::vector<OminusMap> enum_ominus_maps(const DirectedContainer& dc, std::size_t budget = kDefaultBudget) {
  std::size_t space = 1;
  std::vector<std::pair<Index, Index>> cells;
  for (Index s = 0; s < dc.shape_count(); ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      cells.emplace_back(s, p);
      space = saturating_mul(space, dc.fiber_size(dc.down[s][p]));
    }
  if (space > budget) throw Error("budget-exceeded", std::to_string(space) + " candidate ominus maps");
  std::vector<OminusMap> out;
  if (space == 0) return out;
  OminusMap om;
  for (Index s = 0; s < dc.shape_count(); ++s) om.table.emplace_back(dc.fiber_size(s), 0);
  while (true) {
    if (check_bidirected(dc, om).passed()) out.push_back(om);
    std::size_t i = cells.size();
    while (i > 0) {
      auto [s, p] = cells[i - 1];
      if (++om.table[s][p] < dc.fiber_size(dc.down[s][p])) break;
      om.table[s][p] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace dcont
