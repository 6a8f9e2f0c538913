#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace dcont::examples {

/// A family member, with its ⊖ map where the family has one.
struct Example {
  DirectedContainer dc;
  std::optional<OminusMap> ominus;
};

namespace detail {

/// Shapes 0..n, each shape s with positions 0..s (the nonempty-list container).
inline Container nonempty_lists(std::size_t n) {
  std::vector<std::string> shapes;
  std::vector<std::vector<std::string>> fibers;
  for (std::size_t s = 0; s <= n; ++s) {
    shapes.push_back(std::to_string(s));
    fibers.push_back(range_set("", s + 1).elements);
  }
  return make_container(std::move(shapes), std::move(fibers));
}

}  // namespace detail

inline Container nonempty_list_container(std::size_t n) { return detail::nonempty_lists(n); }

/// s ↓ p = s − p, o = 0, p ⊕ p' = p + p'.
inline DirectedContainer suffixes(std::size_t n) {
  DirectedContainer dc = blank_dcont(detail::nonempty_lists(n));
  for (Index s = 0; s <= n; ++s) {
    dc.root[s] = 0;
    for (Index p = 0; p <= s; ++p) {
      dc.down[s][p] = s - p;
      for (Index q = 0; q <= s - p; ++q) dc.plus[s][p].push_back(p + q);
    }
  }
  return dc;
}

/// s ↓ p = s, o = 0, p ⊕ p' = (p + p') mod (s + 1).
inline DirectedContainer cyclic(std::size_t n) {
  DirectedContainer dc = blank_dcont(detail::nonempty_lists(n));
  for (Index s = 0; s <= n; ++s) {
    dc.root[s] = 0;
    for (Index p = 0; p <= s; ++p) {
      dc.down[s][p] = s;
      for (Index q = 0; q <= s; ++q) dc.plus[s][p].push_back((p + q) % (s + 1));
    }
  }
  return dc;
}

/// ⊖⟨s⟩ p = −p mod (s + 1).
inline OminusMap cyclic_ominus(std::size_t n) {
  OminusMap om;
  for (Index s = 0; s <= n; ++s) {
    auto& row = om.table.emplace_back();
    for (Index p = 0; p <= s; ++p) row.push_back((s + 1 - p) % (s + 1));
  }
  return om;
}

/// One position "*" per shape.
inline DirectedContainer reader(const std::vector<std::string>& shapes) {
  DirectedContainer dc =
      blank_dcont(make_container(shapes, std::vector<std::vector<std::string>>(shapes.size(), {"*"})));
  for (Index s = 0; s < shapes.size(); ++s) {
    dc.root[s] = 0;
    dc.down[s][0] = s;
    dc.plus[s][0] = {0};
  }
  return dc;
}

/// ⊖⟨s⟩ * = *.
inline OminusMap reader_ominus(std::size_t shapes) {
  return {std::vector<std::vector<Index>>(shapes, {0})};
}

/// P s = S, s ↓ s' = s', o⟨s⟩ = s, s' ⊕ s'' = s''.
inline DirectedContainer array(const std::vector<std::string>& shapes) {
  const auto n = shapes.size();
  DirectedContainer dc =
      blank_dcont(make_container(shapes, std::vector<std::vector<std::string>>(n, shapes)));
  for (Index s = 0; s < n; ++s) {
    dc.root[s] = s;
    for (Index p = 0; p < n; ++p) {
      dc.down[s][p] = p;
      for (Index q = 0; q < n; ++q) dc.plus[s][p].push_back(q);
    }
  }
  return dc;
}

/// ⊖⟨s⟩ s' = s.
inline OminusMap array_ominus(std::size_t shapes) {
  OminusMap om;
  for (Index s = 0; s < shapes; ++s) om.table.emplace_back(shapes, s);
  return om;
}

/// Finite stand-in for streams: one shape "*", positions 0..n,
/// p ⊕ p' = min(p + p', n).
inline DirectedContainer saturating_nat(std::size_t n) {
  DirectedContainer dc = blank_dcont(make_container({"*"}, {range_set("", n + 1).elements}));
  dc.root[0] = 0;
  for (Index p = 0; p <= n; ++p) {
    dc.down[0][p] = 0;
    for (Index q = 0; q <= n; ++q) dc.plus[0][p].push_back(std::min(p + q, n));
  }
  return dc;
}

/// Context-labelled trees over nonempty lists, truncated at n: shapes 0..n,
/// P s = 0..n−s, s ↓ p = s + p, o = 0, p ⊕ p' = p' + p.
inline DirectedContainer context_trees(std::size_t n) {
  std::vector<std::string> shapes;
  std::vector<std::vector<std::string>> fibers;
  for (std::size_t s = 0; s <= n; ++s) {
    shapes.push_back(std::to_string(s));
    fibers.push_back(range_set("", n - s + 1).elements);
  }
  DirectedContainer dc = blank_dcont(make_container(std::move(shapes), std::move(fibers)));
  for (Index s = 0; s <= n; ++s) {
    dc.root[s] = 0;
    for (Index p = 0; p <= n - s; ++p) {
      dc.down[s][p] = s + p;
      for (Index q = 0; q <= n - s - p; ++q) dc.plus[s][p].push_back(q + p);
    }
  }
  return dc;
}

/// opposite_dcont(suffixes(n)) → context_trees(n): shapes fixed, the
/// position (s + p, p) of Pop s goes to p.
inline Isomorphism suffixes_opposite_iso(std::size_t n) {
  Isomorphism iso;
  for (Index s = 0; s <= n; ++s) {
    iso.shape_map.push_back(s);
    auto& pm = iso.position_maps.emplace_back();
    for (Index p = 0; p <= n - s; ++p) pm.push_back(p);
  }
  return iso;
}

/// q s p = min(p, s) from suffixes(n) to saturating_nat(n).
inline DContMorphism take_morphism(std::size_t n) {
  ContMorphism m;
  for (Index s = 0; s <= n; ++s) {
    m.shape_map.push_back(0);
    auto& row = m.position_map.emplace_back();
    for (Index p = 0; p <= n; ++p) row.push_back(std::min(p, s));
  }
  return make_dcont_morphism(std::move(m), suffixes(n), saturating_nat(n));
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"suffixes", "cyclic",         "reader",
                                              "array",    "saturating-nat", "context-trees"};
  return names;
}

namespace detail {

inline std::size_t parse_bound(const std::string& family, const std::string& param) {
  std::size_t n = 0;
  const char* first = param.data();
  const char* last = first + param.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (param.empty() || ec != std::errc{} || ptr != last || n > 64)
    throw Error("bad-params", family + " expects a bound 0..64, got '" + param + "'");
  return n;
}

/// "a,b,c" or a count k meaning "0".."k-1".
inline std::vector<std::string> parse_set(const std::string& family, const std::string& param) {
  if (!param.empty() && std::all_of(param.begin(), param.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return range_set("", parse_bound(family, param)).elements;
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= param.size()) {
    const auto comma = param.find(',', start);
    const auto end = comma == std::string::npos ? param.size() : comma;
    std::string item = param.substr(start, end - start);
    if (item.empty() || item.find('|') != std::string::npos)
      throw Error("bad-params", family + " expects a comma-separated list of names, got '" + param + "'");
    out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  FinSet check{"S", out};
  if (auto d = check.first_duplicate()) throw Error("bad-params", "duplicate element '" + *d + "'");
  return out;
}

}  // namespace detail

/// Family member by name.  Bound families (suffixes, cyclic,
/// saturating-nat, context-trees) take an integer; reader and array take a
/// comma-separated list of shape names or a count.
inline Example make_example(const std::string& name, const std::string& param) {
  if (name == "suffixes") return {suffixes(detail::parse_bound(name, param)), std::nullopt};
  if (name == "cyclic") {
    const auto n = detail::parse_bound(name, param);
    return {cyclic(n), cyclic_ominus(n)};
  }
  if (name == "saturating-nat") return {saturating_nat(detail::parse_bound(name, param)), std::nullopt};
  if (name == "context-trees") return {context_trees(detail::parse_bound(name, param)), std::nullopt};
  if (name == "reader") {
    auto s = detail::parse_set(name, param);
    return {reader(s), reader_ominus(s.size())};
  }
  if (name == "array") {
    auto s = detail::parse_set(name, param);
    return {array(s), array_ominus(s.size())};
  }
  throw Error("unknown-family", "'" + name + "'");
}

}  // namespace dcont::examples
