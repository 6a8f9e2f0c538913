#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "directed.hpp"

namespace dcont {

namespace detail {

/// Backtracking search for a structure-preserving bijection a → b.
/// Variables are σ(s) followed by π_s(p) for each shape in order; every
/// constraint is attached to all variables it mentions and evaluated as
/// soon as the last of them is assigned.
class IsoSearch {
 public:
  IsoSearch(const DirectedContainer& a, const DirectedContainer& b) : a_(a), b_(b) {}

  std::optional<Isomorphism> run() {
    const auto n = a_.shape_count();
    if (n != b_.shape_count()) return std::nullopt;
    offsets_ = a_.base.fiber_offsets();
    vars_ = n + offsets_[n];
    if (vars_ != n + b_.base.total_positions()) return std::nullopt;

    shape_sig_a_ = shape_signatures(a_);
    shape_sig_b_ = shape_signatures(b_);
    {
      auto x = shape_sig_a_, y = shape_sig_b_;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return std::nullopt;
    }

    order_.clear();
    for (Index s = 0; s < n; ++s) {
      order_.push_back(s);
      // root first: it is forced once σ(s) is known
      order_.push_back(pos_var(s, a_.root[s]));
      for (Index p = 0; p < a_.fiber_size(s); ++p)
        if (p != a_.root[s]) order_.push_back(pos_var(s, p));
    }

    attached_.assign(vars_, {});
    constraints_.clear();
    for (Index s = 0; s < n; ++s)
      for (Index p = 0; p < a_.fiber_size(s); ++p) {
        const Index d = a_.down[s][p];
        add_constraint({Kind::Down, s, p, 0, {}}, {s, d, pos_var(s, p)});
        for (Index q = 0; q < a_.fiber_size(d); ++q)
          add_constraint({Kind::Plus, s, p, q, {}},
                         {s, d, pos_var(s, p), pos_var(d, q), pos_var(s, a_.plus[s][p][q])});
      }

    value_.assign(vars_, kNone);
    used_shape_.assign(n, false);
    used_pos_.assign(n, {});
    for (Index t = 0; t < n; ++t) used_pos_[t].assign(b_.fiber_size(t), false);

    if (!assign_from(0)) return std::nullopt;
    Isomorphism iso;
    iso.shape_map.assign(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(n));
    iso.position_maps.resize(n);
    for (Index s = 0; s < n; ++s)
      for (Index p = 0; p < a_.fiber_size(s); ++p)
        iso.position_maps[s].push_back(value_[pos_var(s, p)]);
    return iso;
  }

 private:
  enum class Kind { Down, Plus };
  struct Constraint {
    Kind kind;
    Index s, p, q;
    std::vector<Index> vars;
  };
  using Signature = std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>;

  static std::vector<Signature> shape_signatures(const DirectedContainer& dc) {
    std::vector<Signature> sig;
    for (Index s = 0; s < dc.shape_count(); ++s) {
      std::size_t loops = 0;
      std::vector<std::size_t> subs;
      for (Index p = 0; p < dc.fiber_size(s); ++p) {
        loops += dc.down[s][p] == s;
        subs.push_back(dc.fiber_size(dc.down[s][p]));
      }
      std::sort(subs.begin(), subs.end());
      sig.emplace_back(dc.fiber_size(s), loops, std::move(subs));
    }
    return sig;
  }

  Index pos_var(Index s, Index p) const { return a_.shape_count() + offsets_[s] + p; }

  void add_constraint(Constraint c, std::vector<Index> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    c.vars = vars;
    const Index id = constraints_.size();
    constraints_.push_back(std::move(c));
    for (Index v : vars) attached_[v].push_back(id);
  }

  bool holds(const Constraint& c) const {
    const Index sigma_s = value_[c.s];
    const Index d = a_.down[c.s][c.p];
    const Index pi_p = value_[pos_var(c.s, c.p)];
    if (c.kind == Kind::Down) return value_[d] == b_.down[sigma_s][pi_p];
    if (value_[d] != b_.down[sigma_s][pi_p]) return true;  // reported by the Down constraint
    const Index lhs = value_[pos_var(c.s, a_.plus[c.s][c.p][c.q])];
    const Index rhs = b_.plus[sigma_s][pi_p][value_[pos_var(d, c.q)]];
    return lhs == rhs;
  }

  bool consistent_after(Index var) const {
    for (Index id : attached_[var]) {
      const auto& c = constraints_[id];
      bool ready = true;
      for (Index v : c.vars) ready = ready && value_[v] != kNone;
      if (ready && !holds(c)) return false;
    }
    return true;
  }

  bool assign_from(std::size_t k) {
    if (k == order_.size()) return true;
    const Index var = order_[k];
    const auto n = a_.shape_count();
    if (var < n) {
      for (Index t = 0; t < n; ++t) {
        if (used_shape_[t] || shape_sig_b_[t] != shape_sig_a_[var]) continue;
        value_[var] = t;
        used_shape_[t] = true;
        if (consistent_after(var) && assign_from(k + 1)) return true;
        used_shape_[t] = false;
      }
      value_[var] = kNone;
      return false;
    }
    const Index s = locate_shape(var);
    const Index p = var - n - offsets_[s];
    const Index t = value_[s];
    const bool is_root = p == a_.root[s];
    for (Index c = 0; c < b_.fiber_size(t); ++c) {
      if (used_pos_[t][c]) continue;
      if (is_root != (c == b_.root[t])) continue;
      if (b_.fiber_size(b_.down[t][c]) != a_.fiber_size(a_.down[s][p])) continue;
      value_[var] = c;
      used_pos_[t][c] = true;
      if (consistent_after(var) && assign_from(k + 1)) return true;
      used_pos_[t][c] = false;
    }
    value_[var] = kNone;
    return false;
  }

  Index locate_shape(Index var) const {
    const Index flat = var - a_.shape_count();
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
    return static_cast<Index>(it - offsets_.begin()) - 1;
  }

  const DirectedContainer& a_;
  const DirectedContainer& b_;
  std::vector<Index> offsets_;
  std::size_t vars_ = 0;
  std::vector<Signature> shape_sig_a_, shape_sig_b_;
  std::vector<Index> order_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<Index>> attached_;
  std::vector<Index> value_;
  std::vector<bool> used_shape_;
  std::vector<std::vector<bool>> used_pos_;
};

}  // namespace detail

/// Bijections σ : S → S', π_s : P s → P'(σ s) commuting with ↓, o and ⊕,
/// or nullopt.  Exhaustive and deterministic (first match in canonical
/// order).  Both arguments must have well-typed tables.
inline std::optional<Isomorphism> find_isomorphism(const DirectedContainer& a,
                                                   const DirectedContainer& b) {
  if (!dcont_tables_well_typed(a) || !dcont_tables_well_typed(b))
    throw Error("ill-typed", "find_isomorphism needs complete, well-typed tables");
  return detail::IsoSearch(a, b).run();
}

inline bool isomorphic(const DirectedContainer& a, const DirectedContainer& b) {
  return find_isomorphism(a, b).has_value();
}

/// True iff `iso` is a bijection a → b commuting with ↓, o, ⊕.
inline bool is_isomorphism(const Isomorphism& iso, const DirectedContainer& a,
                           const DirectedContainer& b) {
  const auto n = a.shape_count();
  if (n != b.shape_count() || iso.shape_map.size() != n || iso.position_maps.size() != n)
    return false;
  std::vector<bool> hit(n, false);
  for (Index s = 0; s < n; ++s) {
    const Index t = iso.shape_map[s];
    if (t >= n || hit[t]) return false;
    hit[t] = true;
    const auto& pm = iso.position_maps[s];
    if (pm.size() != a.fiber_size(s) || b.fiber_size(t) != pm.size()) return false;
    std::vector<bool> seen(pm.size(), false);
    for (Index c : pm) {
      if (c >= pm.size() || seen[c]) return false;
      seen[c] = true;
    }
  }
  for (Index s = 0; s < n; ++s) {
    const Index t = iso.shape_map[s];
    const auto& pm = iso.position_maps[s];
    if (pm[a.root[s]] != b.root[t]) return false;
    for (Index p = 0; p < a.fiber_size(s); ++p) {
      const Index d = a.down[s][p];
      if (iso.shape_map[d] != b.down[t][pm[p]]) return false;
      for (Index q = 0; q < a.fiber_size(d); ++q)
        if (pm[a.plus[s][p][q]] != b.plus[t][pm[p]][iso.position_maps[d][q]]) return false;
    }
  }
  return true;
}

}  // namespace dcont
