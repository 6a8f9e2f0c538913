#pragma once

#include <memory>
#include <string>
#include <vector>

#include "container.hpp"

namespace dcont {

/// A container with subshape (down), root and position-translation (plus)
/// tables.  plus[s][p] is indexed by the positions of the subshape
/// down[s][p].  Nothing here is assumed lawful; see check_dcont_laws.
struct DirectedContainer {
  Container base;
  std::vector<std::vector<Index>> down;
  std::vector<Index> root;
  std::vector<std::vector<std::vector<Index>>> plus;

  std::size_t shape_count() const noexcept { return base.shape_count(); }
  const FinSet& shapes() const noexcept { return base.shapes; }
  const FinSet& fiber(Index s) const { return base.fiber(s); }
  std::size_t fiber_size(Index s) const { return base.fiber_size(s); }

  Index sub(Index s, Index p) const { return down[s][p]; }
  Index add(Index s, Index p, Index p2) const { return plus[s][p][p2]; }

  friend bool operator==(const DirectedContainer&, const DirectedContainer&) = default;
};

/// Tables sized for `c` and filled with kNone.
inline DirectedContainer blank_dcont(Container c) {
  DirectedContainer dc{std::move(c), {}, {}, {}};
  const auto n = dc.shape_count();
  dc.down.resize(n);
  dc.root.assign(n, kNone);
  dc.plus.resize(n);
  for (Index s = 0; s < n; ++s) {
    dc.down[s].assign(dc.fiber_size(s), kNone);
    dc.plus[s].resize(dc.fiber_size(s));
  }
  return dc;
}

namespace detail {

inline std::string pos_name(const DirectedContainer& dc, Index s, Index p) {
  const auto& f = dc.fiber(s);
  return p < f.size() ? f[p] : "#" + std::to_string(p);
}

inline std::string shape_name(const Container& c, Index s) {
  return s < c.shapes.size() ? c.shapes[s] : "#" + std::to_string(s);
}

}  // namespace detail

/// Table completeness and typing.  Missing entries throw table-incomplete;
/// out-of-range entries are reported as *-typing violations, entries beyond
/// the domain as plus-domain.
inline LawReport check_dcont_tables(const DirectedContainer& dc) {
  LawReport r;
  const auto& S = dc.shapes();
  const auto n = dc.shape_count();
  auto incomplete = [&](const std::string& what) { throw Error("table-incomplete", what); };
  if (dc.root.size() != n || dc.down.size() != n || dc.plus.size() != n)
    incomplete("root/down/plus tables do not cover every shape");
  for (Index s = 0; s < n; ++s) {
    if (dc.root[s] == kNone) incomplete("root(" + S[s] + ")");
    if (dc.root[s] >= dc.fiber_size(s))
      r.add("root-typing", {{"s", S[s]}}, std::to_string(dc.root[s]), dc.fiber(s).name);
    if (dc.down[s].size() < dc.fiber_size(s)) incomplete("down(" + S[s] + ", -)");
    if (dc.plus[s].size() < dc.fiber_size(s)) incomplete("plus(" + S[s] + ", -, -)");
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      if (d == kNone) incomplete("down(" + S[s] + ", " + dc.fiber(s)[p] + ")");
      if (d >= n) {
        r.add("down-typing", {{"s", S[s]}, {"p", dc.fiber(s)[p]}}, std::to_string(d), S.name);
        continue;
      }
      const auto& row = dc.plus[s][p];
      const auto width = dc.fiber_size(d);
      for (Index q = 0; q < width; ++q) {
        if (q >= row.size() || row[q] == kNone)
          incomplete("plus(" + S[s] + ", " + dc.fiber(s)[p] + ", " + dc.fiber(d)[q] + ")");
        if (row[q] >= dc.fiber_size(s))
          r.add("plus-typing",
                {{"s", S[s]}, {"p", dc.fiber(s)[p]}, {"p'", dc.fiber(d)[q]}},
                std::to_string(row[q]), dc.fiber(s).name);
      }
      if (row.size() > width)
        r.add("plus-domain", {{"s", S[s]}, {"p", dc.fiber(s)[p]}}, std::to_string(row.size()),
              std::to_string(width));
    }
  }
  return r;
}

inline bool dcont_tables_well_typed(const DirectedContainer& dc) {
  try {
    return validate_container(dc.base).passed() && check_dcont_tables(dc).passed();
  } catch (const Error&) {
    return false;
  }
}

/// Exhaustive check of the five directed-container laws
///   L1  s ↓ o = s
///   L2  s ↓ (p ⊕ p') = (s ↓ p) ↓ p'
///   L3  p ⊕ o = p
///   L4  o ⊕ p = p
///   L5  (p ⊕ p') ⊕ p'' = p ⊕ (p' ⊕ p'')
/// plus table typing.  Instances whose typing depends on a failed L1/L2
/// are skipped; the failing L1/L2 instance is reported instead.
inline LawReport check_dcont_laws(const DirectedContainer& dc) {
  if (auto v = validate_container(dc.base); !v.passed())
    throw Error("ill-typed", "invalid container: " + v.violations.front().line());
  LawReport r = check_dcont_tables(dc);
  if (!r.passed()) return r;

  const auto& S = dc.shapes();
  const auto n = dc.shape_count();
  auto P = [&](Index s, Index p) { return detail::pos_name(dc, s, p); };

  for (Index s = 0; s < n; ++s) {
    const Index o = dc.root[s];
    if (dc.down[s][o] != s) r.add("L1", {{"s", S[s]}}, S[dc.down[s][o]], S[s]);
  }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      for (Index q = 0; q < dc.fiber_size(d); ++q) {
        const Index lhs = dc.down[s][dc.plus[s][p][q]];
        const Index rhs = dc.down[d][q];
        if (lhs != rhs)
          r.add("L2", {{"s", S[s]}, {"p", P(s, p)}, {"p'", P(d, q)}}, S[lhs], S[rhs]);
      }
    }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      const Index got = dc.plus[s][p][dc.root[d]];
      if (got != p) r.add("L3", {{"s", S[s]}, {"p", P(s, p)}}, P(s, got), P(s, p));
    }
  for (Index s = 0; s < n; ++s) {
    const Index o = dc.root[s];
    if (dc.down[s][o] != s) continue;
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index got = dc.plus[s][o][p];
      if (got != p) r.add("L4", {{"s", S[s]}, {"p", P(s, p)}}, P(s, got), P(s, p));
    }
  }
  for (Index s = 0; s < n; ++s)
    for (Index p = 0; p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      for (Index q = 0; q < dc.fiber_size(d); ++q) {
        const Index pq = dc.plus[s][p][q];
        const Index dd = dc.down[d][q];
        if (dc.down[s][pq] != dd) continue;
        for (Index u = 0; u < dc.fiber_size(dd); ++u) {
          const Index lhs = dc.plus[s][pq][u];
          const Index rhs = dc.plus[s][p][dc.plus[d][q][u]];
          if (lhs != rhs)
            r.add("L5", {{"s", S[s]}, {"p", P(s, p)}, {"p'", P(d, q)}, {"p''", P(dd, u)}},
                  P(s, lhs), P(s, rhs));
        }
      }
    }
  return r;
}

inline bool is_lawful(const DirectedContainer& dc) {
  try {
    return check_dcont_laws(dc).passed();
  } catch (const Error&) {
    return false;
  }
}

/// A container morphism between two directed containers.  The endpoints are
/// shared, immutable values.
struct DContMorphism {
  ContMorphism underlying;
  std::shared_ptr<const DirectedContainer> source;
  std::shared_ptr<const DirectedContainer> target;

  /// Table equality only; endpoints are compared structurally.
  friend bool operator==(const DContMorphism& a, const DContMorphism& b) {
    auto same = [](const auto& x, const auto& y) {
      return x == y || (x && y && *x == *y);
    };
    return a.underlying == b.underlying && same(a.source, b.source) && same(a.target, b.target);
  }
};

/// The three morphism laws, given lawful endpoints and a well-typed (t, q):
///   M1  t (s ↓ q s p) = t s ↓' p
///   M2  o⟨s⟩ = q s (o'⟨t s⟩)
///   M3  q s p ⊕ q (s ↓ q s p) p' = q s (p ⊕' p')
inline LawReport check_dcont_morphism(const ContMorphism& m, const DirectedContainer& src,
                                      const DirectedContainer& dst) {
  if (auto typing = check_cont_morphism(m, src.base, dst.base); !typing.passed())
    throw Error("ill-typed", "not a container morphism: " + typing.violations.front().line());
  if (!is_lawful(src)) throw Error("ill-typed", "source is not a lawful directed container");
  if (!is_lawful(dst)) throw Error("ill-typed", "target is not a lawful directed container");

  LawReport r;
  const auto& S = src.shapes();
  const auto& t = m.shape_map;
  const auto& q = m.position_map;
  auto sname = [&](Index s) { return S[s]; };
  auto tname = [&](Index s) { return dst.shapes()[s]; };

  for (Index s = 0; s < src.shape_count(); ++s)
    for (Index p = 0; p < dst.fiber_size(t[s]); ++p) {
      const Index lhs = t[src.down[s][q[s][p]]];
      const Index rhs = dst.down[t[s]][p];
      if (lhs != rhs)
        r.add("M1", {{"s", sname(s)}, {"p", dst.fiber(t[s])[p]}}, tname(lhs), tname(rhs));
    }
  for (Index s = 0; s < src.shape_count(); ++s) {
    const Index lhs = src.root[s];
    const Index rhs = q[s][dst.root[t[s]]];
    if (lhs != rhs) r.add("M2", {{"s", sname(s)}}, src.fiber(s)[lhs], src.fiber(s)[rhs]);
  }
  for (Index s = 0; s < src.shape_count(); ++s) {
    const Index ts = t[s];
    for (Index p = 0; p < dst.fiber_size(ts); ++p) {
      const Index qp = q[s][p];
      const Index sub = src.down[s][qp];
      const Index dsub = dst.down[ts][p];
      if (t[sub] != dsub) continue;
      for (Index p2 = 0; p2 < dst.fiber_size(dsub); ++p2) {
        const Index lhs = src.plus[s][qp][q[sub][p2]];
        const Index rhs = q[s][dst.plus[ts][p][p2]];
        if (lhs != rhs)
          r.add("M3",
                {{"s", sname(s)}, {"p", dst.fiber(ts)[p]}, {"p'", dst.fiber(dsub)[p2]}},
                src.fiber(s)[lhs], src.fiber(s)[rhs]);
      }
    }
  }
  return r;
}

inline LawReport check_dcont_morphism(const DContMorphism& m) {
  return check_dcont_morphism(m.underlying, *m.source, *m.target);
}

inline DContMorphism make_dcont_morphism(ContMorphism m, const DirectedContainer& src,
                                         const DirectedContainer& dst) {
  return {std::move(m), std::make_shared<const DirectedContainer>(src),
          std::make_shared<const DirectedContainer>(dst)};
}

inline DContMorphism identity_dcont_morphism(const DirectedContainer& dc) {
  auto shared = std::make_shared<const DirectedContainer>(dc);
  return {identity_cont_morphism(dc.base), shared, shared};
}

/// f ; g.  Shape maps compose forwards, position maps backwards.
inline DContMorphism compose_dcont_morphisms(const DContMorphism& f, const DContMorphism& g) {
  if (!f.target || !g.source || !(*f.target == *g.source))
    throw Error("domain-mismatch", "codomain of the first morphism differs from the domain of the second");
  return {compose_cont_morphisms(f.underlying, g.underlying), f.source, g.target};
}

}  // namespace dcont
