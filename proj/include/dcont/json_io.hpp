#pragma once

// Canonical JSON interchange.  Tables are flat objects keyed by compound
// names "s|p|p'"; '|' is therefore forbidden inside element names.

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "constructions.hpp"

namespace dcont::io {

using json = nlohmann::json;

/// A morphism file before its names are resolved against endpoints.
struct MorphismDoc {
  std::map<std::string, std::string> t;
  std::map<std::string, std::string> q;
};

struct PreOpDoc {
  std::map<std::string, std::string> t;
  std::map<std::string, std::string> qbar;
};

struct OminusDoc {
  DirectedContainer dc;
  OminusMap ominus;

  friend bool operator==(const OminusDoc&, const OminusDoc&) = default;
};

using Document = std::variant<Container, DirectedContainer, SmallCat, MorphismDoc, PreOpDoc, OminusDoc>;

inline const char* kind_name(const Document& doc) {
  static constexpr const char* names[] = {"container", "dcont", "cat", "morphism", "preop", "ominus"};
  return names[doc.index()];
}

namespace detail {

inline std::string key(std::initializer_list<std::string_view> parts) {
  std::string out;
  bool first = true;
  for (auto part : parts) {
    if (part.find('|') != std::string_view::npos)
      throw Error("ill-typed", "element name '" + std::string(part) + "' contains the reserved '|'");
    if (!first) out += '|';
    out += part;
    first = false;
  }
  return out;
}

inline std::vector<std::string> split_key(const std::string& k, std::size_t arity) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto bar = k.find('|', start);
    parts.push_back(k.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (parts.size() != arity)
    throw Error("parse-error", "table key '" + k + "' should have " + std::to_string(arity) + " part(s)");
  return parts;
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error("parse-error", "unknown key '" + k + "'");
  }
}

inline const json& field(const json& j, const char* name, json::value_t type) {
  if (!j.contains(name)) throw Error("parse-error", std::string("missing key '") + name + "'");
  const json& v = j.at(name);
  if (v.type() != type) throw Error("parse-error", std::string("key '") + name + "' has the wrong type");
  return v;
}

inline const json* optional_object(const json& j, const char* name) {
  if (!j.contains(name)) return nullptr;
  const json& v = j.at(name);
  if (!v.is_object()) throw Error("parse-error", std::string("key '") + name + "' must be an object");
  return &v;
}

inline std::string as_name(const json& v, const std::string& where) {
  if (!v.is_string()) throw Error("parse-error", where + " must be a string");
  auto s = v.get<std::string>();
  if (s.find('|') != std::string::npos)
    throw Error("parse-error", where + ": name '" + s + "' contains the reserved '|'");
  return s;
}

inline std::vector<std::string> name_array(const json& j, const char* name) {
  std::vector<std::string> out;
  for (const auto& v : field(j, name, json::value_t::array)) out.push_back(as_name(v, std::string(name) + " entry"));
  return out;
}

inline std::map<std::string, std::string> string_table(const json& j, const char* name) {
  std::map<std::string, std::string> out;
  if (const json* t = optional_object(j, name))
    for (const auto& [k, v] : t->items()) out[k] = as_name(v, std::string(name) + "[" + k + "]");
  return out;
}

inline Index lookup(const FinSet& set, const std::string& name, const std::string& what) {
  if (auto i = set.find(name)) return *i;
  throw Error("unknown-reference", what + " '" + name + "' is not declared in " + set.name);
}

inline Container parse_container_body(const json& j, bool require_total) {
  Container c{FinSet{"S", name_array(j, "shapes")}, {}};
  c.positions.resize(c.shapes.size());
  const json& pos = field(j, "positions", json::value_t::object);
  for (const auto& [k, v] : pos.items()) {
    const Index s = lookup(c.shapes, k, "shape");
    if (!v.is_array()) throw Error("parse-error", "positions[" + k + "] must be an array");
    FinSet fiber{fiber_name(k), {}};
    for (const auto& e : v) fiber.elements.push_back(as_name(e, "positions[" + k + "] entry"));
    c.positions[s] = std::move(fiber);
  }
  if (require_total)
    for (Index s = 0; s < c.shapes.size(); ++s)
      if (!c.positions[s]) throw Error("parse-error", "no positions declared for shape '" + c.shapes[s] + "'");
  return c;
}

inline DirectedContainer parse_dcont_body(const json& j) {
  DirectedContainer dc = blank_dcont(parse_container_body(j, true));
  const auto& S = dc.shapes();
  for (const auto& [k, v] : string_table(j, "root")) {
    const Index s = lookup(S, k, "shape");
    dc.root[s] = lookup(dc.fiber(s), v, "position");
  }
  for (const auto& [k, v] : string_table(j, "down")) {
    auto parts = split_key(k, 2);
    const Index s = lookup(S, parts[0], "shape");
    const Index p = lookup(dc.fiber(s), parts[1], "position");
    dc.down[s][p] = lookup(S, v, "shape");
  }
  for (const auto& [k, v] : string_table(j, "plus")) {
    auto parts = split_key(k, 3);
    const Index s = lookup(S, parts[0], "shape");
    const Index p = lookup(dc.fiber(s), parts[1], "position");
    const Index d = dc.down[s][p];
    if (d == kNone) throw Error("parse-error", "plus entry '" + k + "' needs down(" + parts[0] + "|" + parts[1] + ")");
    const Index q = lookup(dc.fiber(d), parts[2], "position");
    auto& row = dc.plus[s][p];
    if (row.size() < dc.fiber_size(d)) row.resize(dc.fiber_size(d), kNone);
    row[q] = lookup(dc.fiber(s), v, "position");
  }
  return dc;
}

inline SmallCat parse_cat_body(const json& j) {
  SmallCat cat = blank_cat(FinSet{"S", name_array(j, "objects")}, FinSet{"P", name_array(j, "arrows")});
  const auto& O = cat.objects;
  const auto& A = cat.arrows;
  for (const auto& [k, v] : string_table(j, "src")) cat.src[lookup(A, k, "arrow")] = lookup(O, v, "object");
  for (const auto& [k, v] : string_table(j, "tgt")) cat.tgt[lookup(A, k, "arrow")] = lookup(O, v, "object");
  for (const auto& [k, v] : string_table(j, "ident")) cat.ident[lookup(O, k, "object")] = lookup(A, v, "arrow");
  for (const auto& [k, v] : string_table(j, "comp")) {
    auto parts = split_key(k, 2);
    cat.comp[lookup(A, parts[0], "arrow")][lookup(A, parts[1], "arrow")] = lookup(A, v, "arrow");
  }
  return cat;
}

inline OminusMap parse_ominus_table(const json& j, const DirectedContainer& dc) {
  OminusMap om;
  for (Index s = 0; s < dc.shape_count(); ++s) om.table.emplace_back(dc.fiber_size(s), kNone);
  for (const auto& [k, v] : string_table(j, "ominus")) {
    auto parts = split_key(k, 2);
    const Index s = lookup(dc.shapes(), parts[0], "shape");
    const Index p = lookup(dc.fiber(s), parts[1], "position");
    const Index d = dc.down[s][p];
    if (d == kNone || d >= dc.shape_count())
      throw Error("parse-error", "ominus entry '" + k + "' needs a valid down(" + parts[0] + "|" + parts[1] + ")");
    om.table[s][p] = lookup(dc.fiber(d), v, "position");
  }
  return om;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Parses one structure file.  Throws parse-error (with line/column for
/// malformed JSON) or unknown-reference.
inline Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw Error("parse-error", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw Error("parse-error", "top level must be an object");
  const std::string kind = detail::field(j, "kind", json::value_t::string).get<std::string>();
  using detail::check_keys;
  if (kind == "container") {
    check_keys(j, {"kind", "shapes", "positions"});
    return detail::parse_container_body(j, false);
  }
  if (kind == "dcont") {
    check_keys(j, {"kind", "shapes", "positions", "down", "root", "plus"});
    return detail::parse_dcont_body(j);
  }
  if (kind == "cat") {
    check_keys(j, {"kind", "objects", "arrows", "src", "tgt", "ident", "comp"});
    return detail::parse_cat_body(j);
  }
  if (kind == "morphism") {
    check_keys(j, {"kind", "t", "q"});
    return MorphismDoc{detail::string_table(j, "t"), detail::string_table(j, "q")};
  }
  if (kind == "preop") {
    check_keys(j, {"kind", "t", "qbar"});
    return PreOpDoc{detail::string_table(j, "t"), detail::string_table(j, "qbar")};
  }
  if (kind == "ominus") {
    check_keys(j, {"kind", "structure", "ominus"});
    const json& inner = detail::field(j, "structure", json::value_t::object);
    check_keys(inner, {"kind", "shapes", "positions", "down", "root", "plus"});
    if (inner.value("kind", "") != "dcont") throw Error("parse-error", "ominus structure must have kind dcont");
    DirectedContainer dc = detail::parse_dcont_body(inner);
    OminusMap om = detail::parse_ominus_table(j, dc);
    return OminusDoc{std::move(dc), std::move(om)};
  }
  throw Error("parse-error", "unknown kind '" + kind + "'");
}

/// Resolves a morphism file against its endpoints.  Missing entries stay
/// kNone so that check_cont_morphism can report them.
inline ContMorphism resolve_morphism(const MorphismDoc& doc, const Container& src, const Container& dst) {
  using detail::lookup;
  ContMorphism m{std::vector<Index>(src.shape_count(), kNone), std::vector<std::vector<Index>>(src.shape_count())};
  for (const auto& [k, v] : doc.t) m.shape_map[lookup(src.shapes, k, "shape")] = lookup(dst.shapes, v, "shape");
  for (Index s = 0; s < src.shape_count(); ++s)
    if (m.shape_map[s] != kNone) m.position_map[s].assign(dst.fiber_size(m.shape_map[s]), kNone);
  for (const auto& [k, v] : doc.q) {
    auto parts = detail::split_key(k, 2);
    const Index s = lookup(src.shapes, parts[0], "shape");
    if (m.shape_map[s] == kNone) throw Error("parse-error", "q entry '" + k + "' needs t(" + parts[0] + ")");
    const Index p = lookup(dst.fiber(m.shape_map[s]), parts[1], "position");
    m.position_map[s][p] = lookup(src.fiber(s), v, "position");
  }
  return m;
}

inline PreOpMorphism resolve_preop(const PreOpDoc& doc, const SmallCat& src, const SmallCat& dst) {
  using detail::lookup;
  PreOpMorphism m{std::vector<Index>(src.object_count(), kNone),
                  std::vector<std::vector<Index>>(src.object_count(), std::vector<Index>(dst.arrow_count(), kNone))};
  for (const auto& [k, v] : doc.t) m.shape_map[lookup(src.objects, k, "object")] = lookup(dst.objects, v, "object");
  for (const auto& [k, v] : doc.qbar) {
    auto parts = detail::split_key(k, 2);
    m.qbar[lookup(src.objects, parts[0], "object")][lookup(dst.arrows, parts[1], "arrow")] =
        lookup(src.arrows, v, "arrow");
  }
  for (Index s = 0; s < src.object_count(); ++s)
    if (m.shape_map[s] == kNone) throw Error("ill-typed", "t(" + src.objects[s] + ") is missing");
  return m;
}

// ---------------------------------------------------------------------------
// Emission.  nlohmann::json objects keep keys sorted, which makes the
// output canonical.

inline json to_json(const Container& c) {
  json j = {{"kind", "container"}, {"shapes", c.shapes.elements}, {"positions", json::object()}};
  for (Index s = 0; s < c.shape_count(); ++s)
    if (s < c.positions.size() && c.positions[s]) j["positions"][c.shapes[s]] = c.positions[s]->elements;
  return j;
}

inline json to_json(const DirectedContainer& dc) {
  using detail::key;
  json j = to_json(dc.base);
  j["kind"] = "dcont";
  j["root"] = json::object();
  j["down"] = json::object();
  j["plus"] = json::object();
  const auto& S = dc.shapes();
  for (Index s = 0; s < dc.shape_count(); ++s) {
    const auto& P = dc.fiber(s);
    if (s < dc.root.size() && dc.root[s] < P.size()) j["root"][key({S[s]})] = P[dc.root[s]];
    for (Index p = 0; p < P.size(); ++p) {
      const Index d = s < dc.down.size() && p < dc.down[s].size() ? dc.down[s][p] : kNone;
      if (d >= dc.shape_count()) continue;
      j["down"][key({S[s], P[p]})] = S[d];
      const auto& row = dc.plus[s][p];
      for (Index q = 0; q < row.size() && q < dc.fiber_size(d); ++q)
        if (row[q] < P.size()) j["plus"][key({S[s], P[p], dc.fiber(d)[q]})] = P[row[q]];
    }
  }
  return j;
}

inline json to_json(const SmallCat& cat) {
  using detail::key;
  json j = {{"kind", "cat"},           {"objects", cat.objects.elements}, {"arrows", cat.arrows.elements},
            {"src", json::object()},   {"tgt", json::object()},           {"ident", json::object()},
            {"comp", json::object()}};
  const auto& O = cat.objects;
  const auto& A = cat.arrows;
  for (Index f = 0; f < cat.arrow_count(); ++f) {
    if (cat.src[f] < O.size()) j["src"][key({A[f]})] = O[cat.src[f]];
    if (cat.tgt[f] < O.size()) j["tgt"][key({A[f]})] = O[cat.tgt[f]];
    for (Index g = 0; g < cat.arrow_count(); ++g)
      if (cat.comp[f][g] < A.size()) j["comp"][key({A[f], A[g]})] = A[cat.comp[f][g]];
  }
  for (Index s = 0; s < cat.object_count(); ++s)
    if (cat.ident[s] < A.size()) j["ident"][key({O[s]})] = A[cat.ident[s]];
  return j;
}

inline json to_json(const ContMorphism& m, const Container& src, const Container& dst) {
  using detail::key;
  json j = {{"kind", "morphism"}, {"t", json::object()}, {"q", json::object()}};
  for (Index s = 0; s < m.shape_map.size(); ++s) {
    const Index ts = m.shape_map[s];
    if (ts >= dst.shape_count()) continue;
    j["t"][key({src.shapes[s]})] = dst.shapes[ts];
    const auto& row = m.position_map[s];
    for (Index p = 0; p < row.size() && p < dst.fiber_size(ts); ++p)
      if (row[p] < src.fiber_size(s)) j["q"][key({src.shapes[s], dst.fiber(ts)[p]})] = src.fiber(s)[row[p]];
  }
  return j;
}

inline json to_json(const PreOpMorphism& m, const SmallCat& src, const SmallCat& dst) {
  using detail::key;
  json j = {{"kind", "preop"}, {"t", json::object()}, {"qbar", json::object()}};
  for (Index s = 0; s < m.shape_map.size(); ++s) {
    if (m.shape_map[s] < dst.object_count()) j["t"][key({src.objects[s]})] = dst.objects[m.shape_map[s]];
    for (Index p = 0; p < m.qbar[s].size(); ++p)
      if (m.qbar[s][p] < src.arrow_count())
        j["qbar"][key({src.objects[s], dst.arrows[p]})] = src.arrows[m.qbar[s][p]];
  }
  return j;
}

inline json to_json(const DirectedContainer& dc, const OminusMap& om) {
  using detail::key;
  json j = {{"kind", "ominus"}, {"structure", to_json(dc)}, {"ominus", json::object()}};
  for (Index s = 0; s < om.table.size() && s < dc.shape_count(); ++s)
    for (Index p = 0; p < om.table[s].size() && p < dc.fiber_size(s); ++p) {
      const Index d = dc.down[s][p];
      if (d < dc.shape_count() && om.table[s][p] < dc.fiber_size(d))
        j["ominus"][key({dc.shapes()[s], dc.fiber(s)[p]})] = dc.fiber(d)[om.table[s][p]];
    }
  return j;
}

/// Pretty-printed canonical text with a trailing newline.
inline std::string emit(const json& j) { return j.dump(2) + "\n"; }

template <class... Args>
std::string emit_file(const Args&... args) {
  return emit(to_json(args...));
}

}  // namespace dcont::io
