#pragma once

#include <optional>
#include <string>
#include <vector>

#include "category.hpp"

namespace dcont {

/// ⊖ table: ominus[s][p] is a position of the subshape s ↓ p.
struct OminusMap {
  std::vector<std::vector<Index>> table;

  friend bool operator==(const OminusMap&, const OminusMap&) = default;
};

/// inverse[f] is the two-sided inverse of arrow f.
struct InverseMap {
  std::vector<Index> inverse;

  friend bool operator==(const InverseMap&, const InverseMap&) = default;
};

inline std::string left_name(std::string_view x) { return "L:" + std::string(x); }
inline std::string right_name(std::string_view x) { return "R:" + std::string(x); }

/// The directed container with no shapes.
inline DirectedContainer empty_dcont() { return blank_dcont(make_container({}, {})); }

/// One shape "*" with one position "*".
inline DirectedContainer unit_dcont() {
  DirectedContainer dc = blank_dcont(make_container({"*"}, {{"*"}}));
  dc.root[0] = 0;
  dc.down[0][0] = 0;
  dc.plus[0][0] = {0};
  return dc;
}

// ---------------------------------------------------------------------------
// Coproduct

inline DirectedContainer coproduct_dcont(const DirectedContainer& a, const DirectedContainer& b) {
  const auto na = a.shape_count();
  std::vector<std::string> shapes;
  std::vector<std::vector<std::string>> fibers;
  for (Index s = 0; s < na; ++s) {
    shapes.push_back(left_name(a.shapes()[s]));
    fibers.push_back(a.fiber(s).elements);
  }
  for (Index s = 0; s < b.shape_count(); ++s) {
    shapes.push_back(right_name(b.shapes()[s]));
    fibers.push_back(b.fiber(s).elements);
  }
  DirectedContainer dc = blank_dcont(make_container(std::move(shapes), std::move(fibers)));
  auto copy = [&](const DirectedContainer& part, Index shift) {
    for (Index s = 0; s < part.shape_count(); ++s) {
      dc.root[s + shift] = part.root[s];
      for (Index p = 0; p < part.fiber_size(s); ++p) {
        dc.down[s + shift][p] = part.down[s][p] + shift;
        dc.plus[s + shift][p] = part.plus[s][p];
      }
    }
  };
  copy(a, 0);
  copy(b, na);
  return dc;
}

inline SmallCat coproduct_cat(const SmallCat& a, const SmallCat& b) {
  FinSet objects{a.objects.name, {}}, arrows{a.arrows.name, {}};
  for (const auto& o : a.objects.elements) objects.elements.push_back(left_name(o));
  for (const auto& o : b.objects.elements) objects.elements.push_back(right_name(o));
  for (const auto& f : a.arrows.elements) arrows.elements.push_back(left_name(f));
  for (const auto& f : b.arrows.elements) arrows.elements.push_back(right_name(f));
  SmallCat cat = blank_cat(std::move(objects), std::move(arrows));
  auto copy = [&](const SmallCat& part, Index obj_shift, Index arr_shift) {
    for (Index s = 0; s < part.object_count(); ++s) cat.ident[s + obj_shift] = part.ident[s] + arr_shift;
    for (Index f = 0; f < part.arrow_count(); ++f) {
      cat.src[f + arr_shift] = part.src[f] + obj_shift;
      cat.tgt[f + arr_shift] = part.tgt[f] + obj_shift;
      for (Index g = 0; g < part.arrow_count(); ++g)
        if (part.comp[f][g] != kNone) cat.comp[f + arr_shift][g + arr_shift] = part.comp[f][g] + arr_shift;
    }
  };
  copy(a, 0, 0);
  copy(b, a.object_count(), a.arrow_count());
  return cat;
}

/// inl : a → a ⊎ b and inr : b → a ⊎ b.
inline std::pair<DContMorphism, DContMorphism> coproduct_injections(const DirectedContainer& a,
                                                                    const DirectedContainer& b) {
  auto sum = std::make_shared<const DirectedContainer>(coproduct_dcont(a, b));
  auto inject = [&](const DirectedContainer& part, Index shift) {
    ContMorphism m = identity_cont_morphism(part.base);
    for (auto& t : m.shape_map) t += shift;
    return DContMorphism{std::move(m), std::make_shared<const DirectedContainer>(part), sum};
  };
  return {inject(a, 0), inject(b, a.shape_count())};
}

/// The mediating morphism [f, g] : a ⊎ b → c.
inline DContMorphism copair(const DContMorphism& f, const DContMorphism& g) {
  if (!(*f.target == *g.target)) throw Error("domain-mismatch", "copair needs a common codomain");
  ContMorphism m;
  for (const auto* part : {&f, &g}) {
    m.shape_map.insert(m.shape_map.end(), part->underlying.shape_map.begin(),
                       part->underlying.shape_map.end());
    m.position_map.insert(m.position_map.end(), part->underlying.position_map.begin(),
                          part->underlying.position_map.end());
  }
  return {std::move(m), std::make_shared<const DirectedContainer>(coproduct_dcont(*f.source, *g.source)),
          f.target};
}

// ---------------------------------------------------------------------------
// Hancock's tensor

inline DirectedContainer tensor_dcont(const DirectedContainer& a, const DirectedContainer& b) {
  const auto na = a.shape_count();
  const auto nb = b.shape_count();
  std::vector<std::string> shapes;
  std::vector<std::vector<std::string>> fibers;
  for (Index s0 = 0; s0 < na; ++s0)
    for (Index s1 = 0; s1 < nb; ++s1) {
      shapes.push_back(pair_name(a.shapes()[s0], b.shapes()[s1]));
      auto& fiber = fibers.emplace_back();
      for (const auto& p0 : a.fiber(s0).elements)
        for (const auto& p1 : b.fiber(s1).elements) fiber.push_back(pair_name(p0, p1));
    }
  DirectedContainer dc = blank_dcont(make_container(std::move(shapes), std::move(fibers)));
  auto shape = [nb](Index s0, Index s1) { return s0 * nb + s1; };
  for (Index s0 = 0; s0 < na; ++s0)
    for (Index s1 = 0; s1 < nb; ++s1) {
      const Index s = shape(s0, s1);
      const auto w = b.fiber_size(s1);
      dc.root[s] = a.root[s0] * w + b.root[s1];
      for (Index p0 = 0; p0 < a.fiber_size(s0); ++p0)
        for (Index p1 = 0; p1 < w; ++p1) {
          const Index p = p0 * w + p1;
          const Index d0 = a.down[s0][p0];
          const Index d1 = b.down[s1][p1];
          dc.down[s][p] = shape(d0, d1);
          auto& row = dc.plus[s][p];
          for (Index q0 = 0; q0 < a.fiber_size(d0); ++q0)
            for (Index q1 = 0; q1 < b.fiber_size(d1); ++q1)
              row.push_back(a.plus[s0][p0][q0] * w + b.plus[s1][p1][q1]);
        }
    }
  return dc;
}

/// Product category; arrows "(f,g)" in lexicographic order.
inline SmallCat tensor_cat(const SmallCat& a, const SmallCat& b) {
  FinSet objects{a.objects.name, {}}, arrows{a.arrows.name, {}};
  for (const auto& x : a.objects.elements)
    for (const auto& y : b.objects.elements) objects.elements.push_back(pair_name(x, y));
  for (const auto& f : a.arrows.elements)
    for (const auto& g : b.arrows.elements) arrows.elements.push_back(pair_name(f, g));
  SmallCat cat = blank_cat(std::move(objects), std::move(arrows));
  const auto ob = b.object_count();
  const auto ab = b.arrow_count();
  for (Index x = 0; x < a.object_count(); ++x)
    for (Index y = 0; y < ob; ++y) cat.ident[x * ob + y] = a.ident[x] * ab + b.ident[y];
  for (Index f0 = 0; f0 < a.arrow_count(); ++f0)
    for (Index f1 = 0; f1 < ab; ++f1) {
      const Index f = f0 * ab + f1;
      cat.src[f] = a.src[f0] * ob + b.src[f1];
      cat.tgt[f] = a.tgt[f0] * ob + b.tgt[f1];
      for (Index g0 = 0; g0 < a.arrow_count(); ++g0)
        for (Index g1 = 0; g1 < ab; ++g1) {
          const Index c0 = a.comp[f0][g0];
          const Index c1 = b.comp[f1][g1];
          if (c0 != kNone && c1 != kNone) cat.comp[f][g0 * ab + g1] = c0 * ab + c1;
        }
    }
  return cat;
}

// ---------------------------------------------------------------------------
// Opposite

/// src/tgt swapped, f ;op g = g ; f.  An involution on tables.
inline SmallCat opposite_cat(const SmallCat& cat) {
  SmallCat op = cat;
  op.src = cat.tgt;
  op.tgt = cat.src;
  for (Index f = 0; f < cat.arrow_count(); ++f)
    for (Index g = 0; g < cat.arrow_count(); ++g) op.comp[f][g] = cat.comp[g][f];
  return op;
}

/// Pop s = {(s', p) | s' ↓ p = s} in (s', p) order, s ↓op (s', p) = s',
/// oop s = (s, o s), (s', p) ⊕op (s'', p') = (s'', p' ⊕ p).
inline DirectedContainer opposite_dcont(const DirectedContainer& dc) {
  if (auto r = check_dcont_laws(dc); !r.passed())
    throw Error("not-lawful", r.violations.front().line());
  const auto n = dc.shape_count();
  // incoming[s] lists (s', p) with s' ↓ p = s
  std::vector<std::vector<std::pair<Index, Index>>> incoming(n);
  for (Index s2 = 0; s2 < n; ++s2)
    for (Index p = 0; p < dc.fiber_size(s2); ++p) incoming[dc.down[s2][p]].emplace_back(s2, p);
  auto local = [&](Index s, Index s2, Index p) {
    const auto& in = incoming[s];
    return static_cast<Index>(std::find(in.begin(), in.end(), std::make_pair(s2, p)) - in.begin());
  };

  std::vector<std::vector<std::string>> fibers(n);
  for (Index s = 0; s < n; ++s)
    for (auto [s2, p] : incoming[s]) fibers[s].push_back(pair_name(dc.shapes()[s2], dc.fiber(s2)[p]));
  DirectedContainer op = blank_dcont(make_container(dc.shapes().elements, std::move(fibers)));

  for (Index s = 0; s < n; ++s) {
    op.root[s] = local(s, s, dc.root[s]);
    for (Index i = 0; i < incoming[s].size(); ++i) {
      const auto [s2, p] = incoming[s][i];
      op.down[s][i] = s2;
      auto& row = op.plus[s][i];
      for (auto [s3, p2] : incoming[s2]) row.push_back(local(s, s3, dc.plus[s3][p2][p]));
    }
  }
  return op;
}

// ---------------------------------------------------------------------------
// Groupoids and bidirected containers

/// Inverse laws: src(f⁻¹) = tgt f, tgt(f⁻¹) = src f, f ; f⁻¹ = id, f⁻¹ ; f = id.
inline LawReport check_inverse(const SmallCat& cat, const InverseMap& inv) {
  LawReport r;
  const auto& A = cat.arrows;
  if (inv.inverse.size() != cat.arrow_count()) throw Error("ill-typed", "inverse table has the wrong size");
  for (Index f = 0; f < cat.arrow_count(); ++f) {
    const Index g = inv.inverse[f];
    if (g >= cat.arrow_count()) throw Error("ill-typed", "inverse(" + A[f] + ") is not an arrow");
    if (cat.src[g] != cat.tgt[f]) r.add("inverse-source", {{"p", A[f]}}, cat.objects[cat.src[g]], cat.objects[cat.tgt[f]]);
    if (cat.tgt[g] != cat.src[f]) r.add("inverse-target", {{"p", A[f]}}, cat.objects[cat.tgt[g]], cat.objects[cat.src[f]]);
    if (cat.src[g] != cat.tgt[f] || cat.tgt[g] != cat.src[f]) continue;
    if (cat.comp[f][g] != cat.ident[cat.src[f]])
      r.add("right-inverse", {{"p", A[f]}}, A[cat.comp[f][g]], A[cat.ident[cat.src[f]]]);
    if (cat.comp[g][f] != cat.ident[cat.tgt[f]])
      r.add("left-inverse", {{"p", A[f]}}, A[cat.comp[g][f]], A[cat.ident[cat.tgt[f]]]);
  }
  return r;
}

/// The inverse of every arrow, or nullopt if some arrow is not an iso.
/// Inverses in a category are unique, so the first candidate is the answer.
inline std::optional<InverseMap> groupoid_inverse_search(const SmallCat& cat) {
  InverseMap inv;
  inv.inverse.reserve(cat.arrow_count());
  for (Index f = 0; f < cat.arrow_count(); ++f) {
    Index found = kNone;
    for (Index g = 0; g < cat.arrow_count() && found == kNone; ++g)
      if (cat.src[g] == cat.tgt[f] && cat.tgt[g] == cat.src[f] &&
          cat.comp[f][g] == cat.ident[cat.src[f]] && cat.comp[g][f] == cat.ident[cat.tgt[f]])
        found = g;
    if (found == kNone) return std::nullopt;
    inv.inverse.push_back(found);
  }
  return inv;
}

/// Outcome of check_bidirected.  `b1_redundant` is set when the directed
/// container is lawful and B2 holds everywhere, in which case B1 follows.
struct BidirectedReport {
  LawReport report;
  bool b1_redundant = false;

  bool passed() const noexcept { return report.passed(); }
};

/// Exhaustive check of
///   B1  (s ↓ p) ↓ (⊖ p) = s
///   B2  p ⊕ ⊖p = o⟨s⟩
///   B3  ⊖p ⊕ p = o⟨s ↓ p⟩
inline BidirectedReport check_bidirected(const DirectedContainer& dc, const OminusMap& om) {
  if (!is_lawful(dc)) throw Error("ill-typed", "not a lawful directed container");
  const auto n = dc.shape_count();
  if (om.table.size() != n) throw Error("ill-typed", "ominus does not cover every shape");
  for (Index s = 0; s < n; ++s) {
    if (om.table[s].size() != dc.fiber_size(s))
      throw Error("ill-typed", "ominus(" + dc.shapes()[s] + ", -) has the wrong width");
    for (Index p = 0; p < dc.fiber_size(s); ++p)
      if (om.table[s][p] >= dc.fiber_size(dc.down[s][p]))
        throw Error("ill-typed", "ominus(" + dc.shapes()[s] + ", " + dc.fiber(s)[p] +
                                     ") is not a position of the subshape");
  }

  BidirectedReport out;
  auto& r = out.report;
  const auto& S = dc.shapes();
  bool b2_everywhere = true;
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      const Index back = om.table[s][p];
      const Index dd = dc.down[d][back];
      if (dd != s) r.add("B1", {{"s", S[s]}, {"p", dc.fiber(s)[p]}}, S[dd], S[s]);
    }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index got = dc.plus[s][p][om.table[s][p]];
      if (got != dc.root[s]) {
        b2_everywhere = false;
        r.add("B2", {{"s", S[s]}, {"p", dc.fiber(s)[p]}}, dc.fiber(s)[got], dc.fiber(s)[dc.root[s]]);
      }
    }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      const Index back = om.table[s][p];
      if (dc.down[d][back] != s) continue;
      const Index got = dc.plus[d][back][p];
      if (got != dc.root[d])
        r.add("B3", {{"s", S[s]}, {"p", dc.fiber(s)[p]}}, dc.fiber(d)[got], dc.fiber(d)[dc.root[d]]);
    }
  out.b1_redundant = b2_everywhere;
  return out;
}

/// ⊖⟨s⟩ p = p⁻¹, as a map over cat_to_dcont(cat).
inline OminusMap ominus_from_inverse(const SmallCat& cat, const InverseMap& inv) {
  if (auto r = check_inverse(cat, inv); !r.passed())
    throw Error("not-lawful", r.violations.front().line());
  std::vector<Index> local(cat.arrow_count());
  std::vector<Index> fill(cat.object_count(), 0);
  for (Index f = 0; f < cat.arrow_count(); ++f) local[f] = fill[cat.src[f]]++;
  OminusMap om;
  om.table.resize(cat.object_count());
  for (Index f = 0; f < cat.arrow_count(); ++f) om.table[cat.src[f]].push_back(local[inv.inverse[f]]);
  return om;
}

/// (s, p)⁻¹ = (s ↓ p, ⊖⟨s⟩ p), as a map over dcont_to_cat(dc).
inline InverseMap inverse_from_ominus(const DirectedContainer& dc, const OminusMap& om) {
  if (auto r = check_bidirected(dc, om); !r.passed())
    throw Error("not-lawful", r.report.violations.front().line());
  const auto off = dc.base.fiber_offsets();
  InverseMap inv;
  for (Index s = 0; s < dc.shape_count(); ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p)
      inv.inverse.push_back(off[dc.down[s][p]] + om.table[s][p]);
  return inv;
}

}  // namespace dcont
