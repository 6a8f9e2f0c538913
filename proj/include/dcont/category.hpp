#pragma once

#include <string>
#include <vector>

#include "iso.hpp"

namespace dcont {

// ---------------------------------------------------------------------------
// Polynomials: one global position set fibred over the shapes.

struct Polynomial {
  FinSet shapes;
  FinSet positions;
  std::vector<Index> shape_of;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// P̄ = Σ s. P s, named "(s,p)".
inline Polynomial cont_to_poly(const Container& c) {
  Polynomial poly{c.shapes, FinSet{"P", {}}, {}};
  for (Index s = 0; s < c.shape_count(); ++s)
    for (Index p = 0; p < c.fiber_size(s); ++p) {
      poly.positions.elements.push_back(pair_name(c.shapes[s], c.fiber(s)[p]));
      poly.shape_of.push_back(s);
    }
  return poly;
}

/// P s = fiber of shape_of over s, in global position order.
inline Container poly_to_cont(const Polynomial& poly) {
  if (poly.shape_of.size() != poly.positions.size())
    throw Error("table-incomplete", "shape_of does not cover every position");
  std::vector<std::vector<std::string>> fibers(poly.shapes.size());
  for (Index p = 0; p < poly.positions.size(); ++p) {
    if (poly.shape_of[p] >= poly.shapes.size())
      throw Error("ill-typed", "shape_of(" + poly.positions[p] + ") is not a shape");
    fibers[poly.shape_of[p]].push_back(poly.positions[p]);
  }
  return make_container(poly.shapes.elements, std::move(fibers));
}

/// (t, q̄) with q̄[s][p̄'] defined exactly when t s = shape_of'(p̄').
struct PolyMorphism {
  std::vector<Index> shape_map;
  std::vector<std::vector<Index>> qbar;

  friend bool operator==(const PolyMorphism&, const PolyMorphism&) = default;
};

inline PolyMorphism cont_morph_to_poly(const ContMorphism& m, const Container& src,
                                       const Container& dst) {
  const auto src_off = src.fiber_offsets();
  const auto dst_off = dst.fiber_offsets();
  PolyMorphism pm{m.shape_map, {}};
  pm.qbar.assign(src.shape_count(), std::vector<Index>(dst.total_positions(), kNone));
  for (Index s = 0; s < src.shape_count(); ++s) {
    const Index ts = m.shape_map[s];
    for (Index p = 0; p < dst.fiber_size(ts); ++p)
      pm.qbar[s][dst_off[ts] + p] = src_off[s] + m.position_map[s][p];
  }
  return pm;
}

inline ContMorphism poly_morph_to_cont(const PolyMorphism& pm, const Container& src,
                                       const Container& dst) {
  const auto src_off = src.fiber_offsets();
  const auto dst_off = dst.fiber_offsets();
  ContMorphism m{pm.shape_map, {}};
  m.position_map.resize(src.shape_count());
  for (Index s = 0; s < src.shape_count(); ++s) {
    const Index ts = pm.shape_map[s];
    for (Index p = 0; p < dst.fiber_size(ts); ++p) {
      const Index global = pm.qbar[s][dst_off[ts] + p];
      m.position_map[s].push_back(global == kNone ? kNone : global - src_off[s]);
    }
  }
  return m;
}

/// Typing and the fibre condition shape_of(q̄(s, p)) = s.
inline LawReport check_poly_morphism(const PolyMorphism& m, const Polynomial& src,
                                     const Polynomial& dst) {
  LawReport r;
  for (Index s = 0; s < src.shapes.size(); ++s) {
    if (s >= m.shape_map.size() || m.shape_map[s] >= dst.shapes.size()) {
      r.add("t-total", {{"s", src.shapes[s]}});
      continue;
    }
    for (Index p = 0; p < dst.positions.size(); ++p) {
      const bool defined_here = dst.shape_of[p] == m.shape_map[s];
      const Index v = s < m.qbar.size() && p < m.qbar[s].size() ? m.qbar[s][p] : kNone;
      if (defined_here && v == kNone) r.add("q-total", {{"s", src.shapes[s]}, {"p", dst.positions[p]}});
      else if (!defined_here && v != kNone) r.add("q-domain", {{"s", src.shapes[s]}, {"p", dst.positions[p]}});
      else if (v != kNone && (v >= src.positions.size() || src.shape_of[v] != s))
        r.add("source", {{"s", src.shapes[s]}, {"p", dst.positions[p]}},
              v < src.positions.size() ? src.shapes[src.shape_of[v]] : std::to_string(v),
              src.shapes[s]);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small categories (directed polynomials).

/// comp[f][g] is the composite f ; g (diagrammatic order), kNone where
/// tgt f ≠ src g.
struct SmallCat {
  FinSet objects;
  FinSet arrows;
  std::vector<Index> src;
  std::vector<Index> tgt;
  std::vector<Index> ident;
  std::vector<std::vector<Index>> comp;

  std::size_t object_count() const noexcept { return objects.size(); }
  std::size_t arrow_count() const noexcept { return arrows.size(); }
  bool composable(Index f, Index g) const { return tgt[f] == src[g]; }

  friend bool operator==(const SmallCat&, const SmallCat&) = default;
};

inline SmallCat blank_cat(FinSet objects, FinSet arrows) {
  SmallCat c{std::move(objects), std::move(arrows), {}, {}, {}, {}};
  const auto a = c.arrow_count();
  c.src.assign(a, kNone);
  c.tgt.assign(a, kNone);
  c.ident.assign(c.object_count(), kNone);
  c.comp.assign(a, std::vector<Index>(a, kNone));
  return c;
}

/// Exhaustive check of the category laws:
///   ident-source/ident-target  src(id s) = s = tgt(id s)
///   comp-domain                comp defined exactly on composable pairs
///   comp-source/comp-target    src(f;g) = src f, tgt(f;g) = tgt g
///   right-unit / left-unit     f ; id(tgt f) = f = id(src f) ; f
///   assoc                      (f;g);h = f;(g;h)
inline LawReport check_cat_laws(const SmallCat& cat) {
  LawReport r;
  const auto n = cat.object_count();
  const auto a = cat.arrow_count();
  const auto& O = cat.objects;
  const auto& A = cat.arrows;
  auto incomplete = [](const std::string& what) { throw Error("table-incomplete", what); };

  if (auto d = O.first_duplicate()) r.add("finset-distinct", {{"set", O.name}, {"element", *d}});
  if (auto d = A.first_duplicate()) r.add("finset-distinct", {{"set", A.name}, {"element", *d}});
  if (cat.src.size() != a || cat.tgt.size() != a) incomplete("src/tgt do not cover every arrow");
  if (cat.ident.size() != n) incomplete("ident does not cover every object");
  if (cat.comp.size() != a) incomplete("comp does not cover every arrow");

  for (Index f = 0; f < a; ++f) {
    if (cat.src[f] == kNone) incomplete("src(" + A[f] + ")");
    if (cat.tgt[f] == kNone) incomplete("tgt(" + A[f] + ")");
    if (cat.src[f] >= n) r.add("src-typing", {{"p", A[f]}}, std::to_string(cat.src[f]), O.name);
    if (cat.tgt[f] >= n) r.add("tgt-typing", {{"p", A[f]}}, std::to_string(cat.tgt[f]), O.name);
  }
  for (Index s = 0; s < n; ++s) {
    if (cat.ident[s] == kNone) incomplete("ident(" + O[s] + ")");
    if (cat.ident[s] >= a) r.add("ident-typing", {{"s", O[s]}}, std::to_string(cat.ident[s]), A.name);
  }
  if (!r.passed()) return r;

  for (Index f = 0; f < a; ++f) {
    if (cat.comp[f].size() != a) incomplete("comp(" + A[f] + ", -)");
    for (Index g = 0; g < a; ++g) {
      const Index fg = cat.comp[f][g];
      if (cat.composable(f, g)) {
        if (fg == kNone) incomplete("comp(" + A[f] + ", " + A[g] + ")");
        if (fg >= a) r.add("comp-typing", {{"p", A[f]}, {"p'", A[g]}}, std::to_string(fg), A.name);
      } else if (fg != kNone) {
        r.add("comp-domain", {{"p", A[f]}, {"p'", A[g]}}, A.name, "undefined");
      }
    }
  }
  if (!r.passed()) return r;

  for (Index s = 0; s < n; ++s) {
    const Index i = cat.ident[s];
    if (cat.src[i] != s) r.add("ident-source", {{"s", O[s]}}, O[cat.src[i]], O[s]);
    if (cat.tgt[i] != s) r.add("ident-target", {{"s", O[s]}}, O[cat.tgt[i]], O[s]);
  }
  for (Index f = 0; f < a; ++f)
    for (Index g = 0; g < a; ++g) {
      if (!cat.composable(f, g)) continue;
      const Index fg = cat.comp[f][g];
      if (cat.src[fg] != cat.src[f])
        r.add("comp-source", {{"p", A[f]}, {"p'", A[g]}}, O[cat.src[fg]], O[cat.src[f]]);
      if (cat.tgt[fg] != cat.tgt[g])
        r.add("comp-target", {{"p", A[f]}, {"p'", A[g]}}, O[cat.tgt[fg]], O[cat.tgt[g]]);
    }
  for (Index f = 0; f < a; ++f) {
    const Index ri = cat.ident[cat.tgt[f]];
    if (cat.src[ri] == cat.tgt[f] && cat.comp[f][ri] != f)
      r.add("right-unit", {{"p", A[f]}}, A[cat.comp[f][ri]], A[f]);
  }
  for (Index f = 0; f < a; ++f) {
    const Index li = cat.ident[cat.src[f]];
    if (cat.tgt[li] == cat.src[f] && cat.comp[li][f] != f)
      r.add("left-unit", {{"p", A[f]}}, A[cat.comp[li][f]], A[f]);
  }
  for (Index f = 0; f < a; ++f)
    for (Index g = 0; g < a; ++g) {
      if (!cat.composable(f, g)) continue;
      const Index fg = cat.comp[f][g];
      for (Index h = 0; h < a; ++h) {
        if (!cat.composable(g, h) || !cat.composable(fg, h)) continue;
        const Index gh = cat.comp[g][h];
        if (!cat.composable(f, gh)) continue;
        const Index lhs = cat.comp[fg][h];
        const Index rhs = cat.comp[f][gh];
        if (lhs != rhs) r.add("assoc", {{"p", A[f]}, {"p'", A[g]}, {"p''", A[h]}}, A[lhs], A[rhs]);
      }
    }
  return r;
}

inline bool is_lawful(const SmallCat& cat) {
  try {
    return check_cat_laws(cat).passed();
  } catch (const Error&) {
    return false;
  }
}

/// Objects = shapes, arrows = "(s,p)" in (s, p) order, src/tgt = s / s↓p,
/// id s = (s, o s), (s,p) ; (s↓p, p') = (s, p ⊕ p').
inline SmallCat dcont_to_cat(const DirectedContainer& dc) {
  if (auto r = check_dcont_laws(dc); !r.passed())
    throw Error("not-lawful", r.violations.front().line());
  const auto off = dc.base.fiber_offsets();
  FinSet arrows{"P", {}};
  for (Index s = 0; s < dc.shape_count(); ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p)
      arrows.elements.push_back(pair_name(dc.shapes()[s], dc.fiber(s)[p]));
  SmallCat cat = blank_cat(dc.shapes(), std::move(arrows));
  for (Index s = 0; s < dc.shape_count(); ++s) {
    cat.ident[s] = off[s] + dc.root[s];
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index f = off[s] + p;
      const Index d = dc.down[s][p];
      cat.src[f] = s;
      cat.tgt[f] = d;
      for (Index q = 0; q < dc.fiber_size(d); ++q) cat.comp[f][off[d] + q] = off[s] + dc.plus[s][p][q];
    }
  }
  return cat;
}

/// P s = arrows out of s in arrow order (named as the arrows), s ↓ f = tgt f,
/// o s = id s, f ⊕ g = f ; g.
inline DirectedContainer cat_to_dcont(const SmallCat& cat) {
  if (auto r = check_cat_laws(cat); !r.passed())
    throw Error("not-lawful", r.violations.front().line());
  std::vector<std::vector<std::string>> fibers(cat.object_count());
  std::vector<Index> local(cat.arrow_count());
  for (Index f = 0; f < cat.arrow_count(); ++f) {
    local[f] = fibers[cat.src[f]].size();
    fibers[cat.src[f]].push_back(cat.arrows[f]);
  }
  std::vector<std::vector<Index>> out(cat.object_count());
  for (Index f = 0; f < cat.arrow_count(); ++f) out[cat.src[f]].push_back(f);

  DirectedContainer dc = blank_dcont(make_container(cat.objects.elements, std::move(fibers)));
  for (Index s = 0; s < cat.object_count(); ++s) {
    dc.root[s] = local[cat.ident[s]];
    for (Index p = 0; p < out[s].size(); ++p) {
      const Index f = out[s][p];
      const Index d = cat.tgt[f];
      dc.down[s][p] = d;
      auto& row = dc.plus[s][p];
      for (Index g : out[d]) row.push_back(local[cat.comp[f][g]]);
    }
  }
  return dc;
}

/// Object bijection plus arrow bijection preserving src, tgt, id and ;.
inline std::optional<Isomorphism> find_cat_isomorphism(const SmallCat& a, const SmallCat& b) {
  return find_isomorphism(cat_to_dcont(a), cat_to_dcont(b));
}

inline bool isomorphic(const SmallCat& a, const SmallCat& b) {
  return find_cat_isomorphism(a, b).has_value();
}

/// Only identities.  Arrows are named "(s,s)" so the one-object discrete
/// and cofree categories coincide.
inline SmallCat discrete_cat(const FinSet& objects) {
  FinSet arrows{"P", {}};
  for (const auto& o : objects.elements) arrows.elements.push_back(pair_name(o, o));
  SmallCat cat = blank_cat(FinSet{"S", objects.elements}, std::move(arrows));
  for (Index s = 0; s < objects.size(); ++s) {
    cat.src[s] = cat.tgt[s] = cat.ident[s] = s;
    cat.comp[s][s] = s;
  }
  return cat;
}

/// Exactly one arrow "(a,b)" per ordered pair; (a,b) ; (b,c) = (a,c).
inline SmallCat cofree_cat(const FinSet& objects) {
  const auto n = objects.size();
  FinSet arrows{"P", {}};
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) arrows.elements.push_back(pair_name(objects[a], objects[b]));
  SmallCat cat = blank_cat(FinSet{"S", objects.elements}, std::move(arrows));
  for (Index a = 0; a < n; ++a) {
    cat.ident[a] = a * n + a;
    for (Index b = 0; b < n; ++b) {
      cat.src[a * n + b] = a;
      cat.tgt[a * n + b] = b;
      for (Index c = 0; c < n; ++c) cat.comp[a * n + b][b * n + c] = a * n + c;
    }
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Relative split pre-opcleavages (directed polynomial morphisms).

/// qbar[s][p'] is defined exactly for arrows p' of the target with
/// src' p' = t s, and is an arrow of the source.
struct PreOpMorphism {
  std::vector<Index> shape_map;
  std::vector<std::vector<Index>> qbar;

  friend bool operator==(const PreOpMorphism&, const PreOpMorphism&) = default;
};

/// Exhaustive check of
///   source  src(q̄(s,p)) = s
///   target  t(tgt(q̄(s,p))) = tgt' p
///   ident   id s = q̄(s, id'(t s))
///   comp    q̄(s,p) ; q̄(tgt(q̄(s,p)), p') = q̄(s, p ;' p')
/// with typing (t total, q̄ defined exactly on its domain).
inline LawReport check_preop_morphism(const PreOpMorphism& m, const SmallCat& src,
                                      const SmallCat& dst) {
  if (!is_lawful(src)) throw Error("ill-typed", "source is not a lawful category");
  if (!is_lawful(dst)) throw Error("ill-typed", "target is not a lawful category");
  LawReport r;
  const auto& O = src.objects;
  const auto& A = src.arrows;
  const auto& A2 = dst.arrows;
  const auto n = src.object_count();
  if (m.shape_map.size() != n || m.qbar.size() != n)
    throw Error("ill-typed", "t or q̄ does not cover every object");
  for (Index s = 0; s < n; ++s) {
    if (m.shape_map[s] >= dst.object_count())
      throw Error("ill-typed", "t(" + O[s] + ") is not an object of the target");
    if (m.qbar[s].size() != dst.arrow_count())
      throw Error("ill-typed", "q̄(" + O[s] + ", -) has the wrong width");
    for (Index p = 0; p < dst.arrow_count(); ++p) {
      const bool in_domain = dst.src[p] == m.shape_map[s];
      const Index v = m.qbar[s][p];
      if (in_domain && v == kNone)
        throw Error("ill-typed", "q̄(" + O[s] + ", " + A2[p] + ") is missing");
      if (!in_domain && v != kNone) r.add("q-domain", {{"s", O[s]}, {"p", A2[p]}}, A[v], "undefined");
      if (in_domain && v >= src.arrow_count())
        throw Error("ill-typed", "q̄(" + O[s] + ", " + A2[p] + ") is not an arrow");
    }
  }
  if (!r.passed()) return r;

  const auto& t = m.shape_map;
  const auto& q = m.qbar;
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dst.arrow_count(); ++p) {
      if (dst.src[p] != t[s]) continue;
      if (src.src[q[s][p]] != s) r.add("source", {{"s", O[s]}, {"p", A2[p]}}, O[src.src[q[s][p]]], O[s]);
    }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dst.arrow_count(); ++p) {
      if (dst.src[p] != t[s]) continue;
      const Index lhs = t[src.tgt[q[s][p]]];
      if (lhs != dst.tgt[p])
        r.add("target", {{"s", O[s]}, {"p", A2[p]}}, dst.objects[lhs], dst.objects[dst.tgt[p]]);
    }
  for (Index s = 0; s < n; ++s) {
    const Index rhs = q[s][dst.ident[t[s]]];
    if (src.ident[s] != rhs) r.add("ident", {{"s", O[s]}}, A[src.ident[s]], A[rhs]);
  }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dst.arrow_count(); ++p) {
      if (dst.src[p] != t[s]) continue;
      const Index lifted = q[s][p];
      if (src.src[lifted] != s) continue;
      const Index mid = src.tgt[lifted];
      if (t[mid] != dst.tgt[p]) continue;
      for (Index p2 = 0; p2 < dst.arrow_count(); ++p2) {
        if (dst.src[p2] != dst.tgt[p]) continue;
        const Index second = q[mid][p2];
        if (src.src[second] != mid) continue;
        const Index lhs = src.comp[lifted][second];
        const Index rhs = q[s][dst.comp[p][p2]];
        if (lhs != rhs) r.add("comp", {{"s", O[s]}, {"p", A2[p]}, {"p'", A2[p2]}}, A[lhs], A[rhs]);
      }
    }
  return r;
}

inline PreOpMorphism identity_preop(const SmallCat& cat) {
  PreOpMorphism m;
  m.shape_map.resize(cat.object_count());
  m.qbar.assign(cat.object_count(), std::vector<Index>(cat.arrow_count(), kNone));
  for (Index s = 0; s < cat.object_count(); ++s) {
    m.shape_map[s] = s;
    for (Index p = 0; p < cat.arrow_count(); ++p)
      if (cat.src[p] == s) m.qbar[s][p] = p;
  }
  return m;
}

/// Between dcont_to_cat(source) and dcont_to_cat(target): q̄(s, p) = q s p.
inline PreOpMorphism dmorph_to_preop(const DContMorphism& m) {
  const auto pm = cont_morph_to_poly(m.underlying, m.source->base, m.target->base);
  return {pm.shape_map, pm.qbar};
}

/// Between cat_to_dcont(src) and cat_to_dcont(dst): q s p = q̄(s, p).
inline DContMorphism preop_to_dmorph(const PreOpMorphism& m, const SmallCat& src,
                                     const SmallCat& dst) {
  auto a = std::make_shared<const DirectedContainer>(cat_to_dcont(src));
  auto b = std::make_shared<const DirectedContainer>(cat_to_dcont(dst));
  // arrows of cat_to_dcont are grouped by source in arrow order
  std::vector<Index> local_src(src.arrow_count()), local_dst(dst.arrow_count());
  {
    std::vector<Index> fill(src.object_count(), 0);
    for (Index f = 0; f < src.arrow_count(); ++f) local_src[f] = fill[src.src[f]]++;
    fill.assign(dst.object_count(), 0);
    for (Index f = 0; f < dst.arrow_count(); ++f) local_dst[f] = fill[dst.src[f]]++;
  }
  ContMorphism cm{m.shape_map, std::vector<std::vector<Index>>(src.object_count())};
  for (Index s = 0; s < src.object_count(); ++s) {
    auto& row = cm.position_map[s];
    row.assign(b->fiber_size(m.shape_map[s]), kNone);
    for (Index p = 0; p < dst.arrow_count(); ++p)
      if (dst.src[p] == m.shape_map[s]) {
        const Index v = m.qbar[s][p];
        row[local_dst[p]] = v == kNone ? kNone : local_src[v];
      }
  }
  return {std::move(cm), std::move(a), std::move(b)};
}

/// At most one s can be supplied for every target arrow p̄', i.e. q̄ never
/// needs its shape argument to disambiguate.
inline bool is_linear(const PreOpMorphism& m, const SmallCat& dst) {
  for (Index p = 0; p < dst.arrow_count(); ++p) {
    std::size_t candidates = 0;
    for (Index s = 0; s < m.shape_map.size(); ++s) candidates += m.shape_map[s] == dst.src[p];
    if (candidates > 1) return false;
  }
  return true;
}

}  // namespace dcont
