#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finset.hpp"
#include "law_report.hpp"

namespace dcont {

/// Shapes plus a position set for every shape.  A missing fiber is
/// representable (nullopt) so that validation can report it.
struct Container {
  FinSet shapes;
  std::vector<std::optional<FinSet>> positions;

  std::size_t shape_count() const noexcept { return shapes.size(); }

  const FinSet& fiber(Index s) const {
    if (s >= positions.size() || !positions[s])
      throw Error("table-incomplete",
                  "no positions declared for shape " +
                      (s < shapes.size() ? shapes[s] : std::to_string(s)));
    return *positions[s];
  }

  std::size_t fiber_size(Index s) const { return fiber(s).size(); }

  std::size_t max_fiber_size() const {
    std::size_t m = 0;
    for (Index s = 0; s < shapes.size(); ++s) m = std::max(m, fiber_size(s));
    return m;
  }

  std::size_t total_positions() const {
    std::size_t n = 0;
    for (Index s = 0; s < shapes.size(); ++s) n += fiber_size(s);
    return n;
  }

  /// Offset of shape s in the flattened Σ s. P s enumeration.
  std::vector<Index> fiber_offsets() const {
    std::vector<Index> off(shapes.size() + 1, 0);
    for (Index s = 0; s < shapes.size(); ++s) off[s + 1] = off[s] + fiber_size(s);
    return off;
  }

  friend bool operator==(const Container&, const Container&) = default;
};

inline std::string fiber_name(std::string_view shape) {
  return "P(" + std::string(shape) + ")";
}

/// Builds a container with the conventional set names used throughout the
/// library ("S" and "P(<shape>)").
inline Container make_container(std::vector<std::string> shapes,
                                std::vector<std::vector<std::string>> positions) {
  Container c{FinSet{"S", std::move(shapes)}, {}};
  c.positions.reserve(positions.size());
  for (std::size_t s = 0; s < positions.size(); ++s)
    c.positions.emplace_back(FinSet{
        fiber_name(s < c.shapes.size() ? c.shapes[s] : std::to_string(s)),
        std::move(positions[s])});
  return c;
}

/// Structural well-formedness: distinct names and a fiber for every shape.
inline LawReport validate_container(const Container& c) {
  LawReport r;
  if (auto d = c.shapes.first_duplicate()) r.add("finset-distinct", {{"set", c.shapes.name}, {"element", *d}});
  for (Index s = 0; s < c.shapes.size(); ++s) {
    if (s >= c.positions.size() || !c.positions[s]) {
      r.add("positions-total", {{"s", c.shapes[s]}});
      continue;
    }
    if (auto d = c.positions[s]->first_duplicate())
      r.add("finset-distinct", {{"set", c.positions[s]->name}, {"element", *d}});
  }
  for (Index s = c.shapes.size(); s < c.positions.size(); ++s)
    r.add("positions-extra", {{"index", std::to_string(s)}});
  return r;
}

/// Container morphism (t, q): t maps shapes forward, q s maps positions of
/// the target shape t s back to positions of s.
struct ContMorphism {
  std::vector<Index> shape_map;
  std::vector<std::vector<Index>> position_map;

  friend bool operator==(const ContMorphism&, const ContMorphism&) = default;
};

inline LawReport check_cont_morphism(const ContMorphism& m, const Container& src,
                                     const Container& dst) {
  LawReport r;
  const auto& S = src.shapes;
  for (Index s = 0; s < S.size(); ++s) {
    if (s >= m.shape_map.size() || m.shape_map[s] == kNone) {
      r.add("t-total", {{"s", S[s]}});
      continue;
    }
    const Index ts = m.shape_map[s];
    if (ts >= dst.shapes.size()) {
      r.add("t-typing", {{"s", S[s]}}, std::to_string(ts), "a shape of the target");
      continue;
    }
    const FinSet& target_fiber = dst.fiber(ts);
    const FinSet& source_fiber = src.fiber(s);
    const std::vector<Index> empty;
    const auto& row = s < m.position_map.size() ? m.position_map[s] : empty;
    for (Index p = 0; p < target_fiber.size(); ++p) {
      if (p >= row.size() || row[p] == kNone) {
        r.add("q-total", {{"s", S[s]}, {"p", target_fiber[p]}});
      } else if (row[p] >= source_fiber.size()) {
        r.add("q-typing", {{"s", S[s]}, {"p", target_fiber[p]}}, std::to_string(row[p]),
              "a position of " + source_fiber.name);
      }
    }
    if (row.size() > target_fiber.size())
      r.add("q-domain", {{"s", S[s]}}, std::to_string(row.size()),
            std::to_string(target_fiber.size()));
  }
  if (m.shape_map.size() > S.size())
    r.add("t-domain", {}, std::to_string(m.shape_map.size()), std::to_string(S.size()));
  return r;
}

inline ContMorphism identity_cont_morphism(const Container& c) {
  ContMorphism m;
  m.shape_map.resize(c.shape_count());
  m.position_map.resize(c.shape_count());
  for (Index s = 0; s < c.shape_count(); ++s) {
    m.shape_map[s] = s;
    m.position_map[s].resize(c.fiber_size(s));
    for (Index p = 0; p < c.fiber_size(s); ++p) m.position_map[s][p] = p;
  }
  return m;
}

/// Diagrammatic composite: first f, then g.
inline ContMorphism compose_cont_morphisms(const ContMorphism& f, const ContMorphism& g) {
  ContMorphism h;
  h.shape_map.resize(f.shape_map.size());
  h.position_map.resize(f.shape_map.size());
  for (Index s = 0; s < f.shape_map.size(); ++s) {
    const Index mid = f.shape_map[s];
    h.shape_map[s] = g.shape_map.at(mid);
    const auto& g_row = g.position_map.at(mid);
    auto& row = h.position_map[s];
    row.resize(g_row.size());
    for (Index p = 0; p < g_row.size(); ++p) row[p] = f.position_map.at(s).at(g_row[p]);
  }
  return h;
}

/// Shape bijection plus per-shape position bijections, a ↦ b.
struct Isomorphism {
  std::vector<Index> shape_map;
  std::vector<std::vector<Index>> position_maps;

  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

/// Isomorphism of plain containers: fibers matched by size, positions in
/// order.  First match in canonical order.
inline std::optional<Isomorphism> find_container_isomorphism(const Container& a,
                                                             const Container& b) {
  if (a.shape_count() != b.shape_count()) return std::nullopt;
  Isomorphism iso;
  std::vector<bool> used(b.shape_count(), false);
  for (Index s = 0; s < a.shape_count(); ++s) {
    Index pick = kNone;
    for (Index t = 0; t < b.shape_count() && pick == kNone; ++t)
      if (!used[t] && b.fiber_size(t) == a.fiber_size(s)) pick = t;
    if (pick == kNone) return std::nullopt;
    used[pick] = true;
    iso.shape_map.push_back(pick);
    std::vector<Index> pm(a.fiber_size(s));
    for (Index p = 0; p < pm.size(); ++p) pm[p] = p;
    iso.position_maps.push_back(std::move(pm));
  }
  return iso;
}

}  // namespace dcont
