#pragma once

#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "directed.hpp"

namespace dcont {

/// An element (s, v) of ⟦S, P⟧ X: a shape and one label per position.
template <class Label>
struct Value {
  Index shape = 0;
  std::vector<Label> labels;

  friend bool operator==(const Value&, const Value&) = default;
};

/// Labels are indices into a caller-supplied FinSet.
using ContainerValue = Value<Index>;
/// An element of D (D X).
using NestedValue = Value<ContainerValue>;

/// ⟦S, P⟧ f (s, v) = (s, λp. f (v p)).
template <class Label, class F>
auto fmap(const Value<Label>& v, F&& f) -> Value<std::invoke_result_t<F&, const Label&>> {
  Value<std::invoke_result_t<F&, const Label&>> out{v.shape, {}};
  out.labels.reserve(v.labels.size());
  for (const auto& l : v.labels) out.labels.push_back(f(l));
  return out;
}

/// map_value with f given as a label table X → Y.
inline ContainerValue map_value(const Container& c, std::span<const Index> f, const ContainerValue& val) {
  if (val.shape >= c.shape_count() || val.labels.size() != c.fiber_size(val.shape))
    throw Error("ill-typed", "value does not label exactly the positions of its shape");
  for (Index l : val.labels)
    if (l >= f.size())
      throw Error("label-out-of-domain", "label " + std::to_string(l) + " outside a domain of size " +
                                             std::to_string(f.size()));
  return fmap(val, [&](Index l) { return f[l]; });
}

/// ⟦t, q⟧ (s, v) = (t s, λp. v (q s p)).
template <class Label>
Value<Label> interp_morphism(const ContMorphism& m, const Value<Label>& v) {
  const auto& row = m.position_map.at(v.shape);
  Value<Label> out{m.shape_map.at(v.shape), {}};
  out.labels.reserve(row.size());
  for (Index p : row) out.labels.push_back(v.labels.at(p));
  return out;
}

/// ε (s, v) = v (o⟨s⟩).
template <class Label>
const Label& counit(const DirectedContainer& dc, const Value<Label>& v) {
  return v.labels.at(dc.root.at(v.shape));
}

/// δ (s, v) = (s, λp. (s ↓ p, λp'. v (p ⊕⟨s⟩ p'))).
template <class Label>
Value<Value<Label>> comult(const DirectedContainer& dc, const Value<Label>& v) {
  const Index s = v.shape;
  Value<Value<Label>> out{s, {}};
  out.labels.reserve(dc.fiber_size(s));
  for (Index p = 0; p < dc.fiber_size(s); ++p) {
    Value<Label> inner{dc.down[s][p], {}};
    for (Index q : dc.plus[s][p]) inner.labels.push_back(v.labels.at(q));
    out.labels.push_back(std::move(inner));
  }
  return out;
}

/// Number of values over a label set of size k: Σ s. k^|P s|.
inline std::size_t value_count(const Container& c, std::size_t k) {
  std::size_t n = 0;
  for (Index s = 0; s < c.shape_count(); ++s) n = saturating_add(n, saturating_pow(k, c.fiber_size(s)));
  return n;
}

/// Every value over a label set of size k, in canonical order: by shape,
/// then labelings as a mixed-radix counter with the last position fastest.
inline std::vector<ContainerValue> enumerate_values(const Container& c, std::size_t k) {
  std::vector<ContainerValue> out;
  for (Index s = 0; s < c.shape_count(); ++s) {
    const auto width = c.fiber_size(s);
    if (width > 0 && k == 0) continue;
    ContainerValue v{s, std::vector<Index>(width, 0)};
    while (true) {
      out.push_back(v);
      std::size_t i = width;
      while (i > 0 && ++v.labels[i - 1] == k) v.labels[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

/// Position of `v` in enumerate_values(c, k).
inline Index value_index(const Container& c, std::size_t k, const ContainerValue& v) {
  Index idx = 0;
  for (Index s = 0; s < v.shape; ++s) idx += saturating_pow(k, c.fiber_size(s));
  Index local = 0;
  for (Index l : v.labels) local = local * k + l;
  return idx + local;
}

/// "(shape,[l0,l1,...])", recursively for nested values.
template <class Label, class LabelFmt>
std::string format_value(const Container& c, const Value<Label>& v, LabelFmt&& fmt) {
  std::string out = "(" + c.shapes[v.shape] + ",[";
  for (std::size_t i = 0; i < v.labels.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<Label, Index>)
      out += fmt(v.labels[i]);
    else
      out += format_value(c, v.labels[i], fmt);
  }
  return out + "])";
}

template <class Label>
std::string format_value(const Container& c, const FinSet& labels, const Value<Label>& v) {
  return format_value(c, v, [&](Index l) { return labels[l]; });
}

/// Label set {x0, ..., x(k-1)}.
inline FinSet label_set(std::size_t k) {
  FinSet x{"X", {}};
  for (std::size_t i = 0; i < k; ++i) x.elements.push_back("x" + std::to_string(i));
  return x;
}

/// Default sweep size: largest fiber + 1, capped at 3.
inline std::size_t default_label_count(const Container& c) {
  return std::min<std::size_t>(3, c.max_fiber_size() + 1);
}

/// For every value over x:
///   counit-outer  ε (δ v) = v
///   counit-inner  D ε (δ v) = v
///   coassoc       δ (δ v) = D δ (δ v)
/// Needs complete, well-typed tables (not lawfulness).
inline LawReport check_comonad_laws(const DirectedContainer& dc, const FinSet& x) {
  if (!dcont_tables_well_typed(dc)) throw Error("ill-typed", "directed container tables are not well-typed");
  LawReport r;
  const auto& c = dc.base;
  for (const auto& v : enumerate_values(c, x.size())) {
    const auto dv = comult(dc, v);
    auto witness = [&] { return std::vector<Binding>{{"v", format_value(c, x, v)}}; };
    if (const auto& e = counit(dc, dv); !(e == v))
      r.add("counit-outer", witness(), format_value(c, x, e), format_value(c, x, v));
    if (auto e = fmap(dv, [&](const ContainerValue& w) { return counit(dc, w); }); !(e == v))
      r.add("counit-inner", witness(), format_value(c, x, e), format_value(c, x, v));
    auto lhs = comult(dc, dv);
    auto rhs = fmap(dv, [&](const ContainerValue& w) { return comult(dc, w); });
    if (!(lhs == rhs)) r.add("coassoc", witness(), format_value(c, x, lhs), format_value(c, x, rhs));
  }
  return r;
}

/// For every value v over x, with m̂ = ⟦t, q⟧:
///   counit  ε' (m̂ v) = ε v
///   comult  δ' (m̂ v) = m̂ (D m̂ (δ v))
/// Needs m to be a well-typed container morphism; it need not satisfy the
/// directed-container morphism laws.
inline LawReport check_comonad_morphism(const ContMorphism& m, const DirectedContainer& src,
                                        const DirectedContainer& dst, const FinSet& x) {
  if (!dcont_tables_well_typed(src) || !dcont_tables_well_typed(dst))
    throw Error("ill-typed", "directed container tables are not well-typed");
  if (auto t = check_cont_morphism(m, src.base, dst.base); !t.passed())
    throw Error("ill-typed", "not a container morphism: " + t.violations.front().line());
  LawReport r;
  for (const auto& v : enumerate_values(src.base, x.size())) {
    const auto mv = interp_morphism(m, v);
    auto witness = [&] { return std::vector<Binding>{{"v", format_value(src.base, x, v)}}; };
    if (counit(dst, mv) != counit(src, v))
      r.add("counit", witness(), x[counit(dst, mv)], x[counit(src, v)]);
    auto lhs = comult(dst, mv);
    auto rhs = interp_morphism(
        m, fmap(comult(src, v), [&](const ContainerValue& w) { return interp_morphism(m, w); }));
    if (!(lhs == rhs))
      r.add("comult", witness(), format_value(dst.base, x, lhs), format_value(dst.base, x, rhs));
  }
  return r;
}

inline LawReport check_comonad_morphism(const DContMorphism& m, const FinSet& x) {
  return check_comonad_morphism(m.underlying, *m.source, *m.target, x);
}

/// Every (t, q) from c to d, in canonical order (t as a counter, then the
/// q rows as one counter).  By full faithfulness of ⟦−⟧ these are exactly
/// the natural transformations ⟦c⟧ → ⟦d⟧.
inline std::vector<ContMorphism> enum_nat_trans(const Container& c, const Container& d,
                                                std::size_t budget = 100'000'000) {
  std::size_t space = 1;
  for (Index s = 0; s < c.shape_count(); ++s) {
    std::size_t per_shape = 0;
    for (Index t = 0; t < d.shape_count(); ++t)
      per_shape = saturating_add(per_shape, saturating_pow(c.fiber_size(s), d.fiber_size(t)));
    space = saturating_mul(space, per_shape);
  }
  if (space > budget) throw Error("budget-exceeded", std::to_string(space) + " candidate morphisms");

  std::vector<ContMorphism> out;
  const auto n = c.shape_count();
  const auto m = d.shape_count();
  if (n > 0 && m == 0) return out;
  std::vector<Index> t(n, 0);
  while (true) {
    // q rows as one counter over Π s. P s ^ P'(t s)
    std::vector<std::vector<Index>> q(n);
    bool empty_codomain = false;
    for (Index s = 0; s < n; ++s) {
      q[s].assign(d.fiber_size(t[s]), 0);
      if (!q[s].empty() && c.fiber_size(s) == 0) empty_codomain = true;
    }
    if (!empty_codomain) {
      while (true) {
        out.push_back({t, q});
        // increment, last row / last entry fastest
        bool carried = true;
        for (Index s = n; s-- > 0 && carried;) {
          for (Index p = q[s].size(); p-- > 0 && carried;) {
            if (++q[s][p] == c.fiber_size(s)) q[s][p] = 0;
            else carried = false;
          }
        }
        if (carried) break;
      }
    }
    Index i = n;
    while (i > 0 && ++t[i - 1] == m) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

namespace detail {

/// Counts families (α_k : ⟦c⟧[k] → ⟦d⟧[k]) for k = 0..K, K the largest
/// fiber of c, natural with respect to every function [k] → [j].  Works on
/// values only; never looks at (t, q) tables.
class NaturalityOracle {
 public:
  NaturalityOracle(const Container& c, const Container& d, std::size_t budget) {
    K_ = c.max_fiber_size();
    for (std::size_t k = 0; k <= K_; ++k)
      for (std::size_t j = 0; j <= K_; ++j) {
        Fn f{k, j, std::vector<Index>(k, 0)};
        if (k > 0 && j == 0) continue;
        while (true) {
          fns_.push_back(f);
          std::size_t i = k;
          while (i > 0 && ++f.table[i - 1] == j) f.table[--i] = 0;
          if (i == 0) break;
        }
      }
    std::size_t work = 0;
    for (std::size_t k = 0; k <= K_; ++k)
      work = saturating_add(work, saturating_mul(value_count(c, k) + value_count(d, k), fns_.size()));
    if (work > budget) throw Error("budget-exceeded", std::to_string(work) + " naturality table entries");

    cv_.resize(K_ + 1);
    dv_.resize(K_ + 1);
    img_c_.resize(K_ + 1);
    img_d_.resize(K_ + 1);
    for (std::size_t k = 0; k <= K_; ++k) {
      cv_[k] = enumerate_values(c, k);
      dv_[k] = enumerate_values(d, k);
      img_c_[k] = images(c, cv_[k], k);
      img_d_[k] = images(d, dv_[k], k);
    }
  }

  std::size_t count() {
    std::vector<std::vector<Index>> a(K_ + 1);
    for (std::size_t k = 0; k <= K_; ++k) a[k].assign(cv_[k].size(), kNone);
    return search(a);
  }

 private:
  struct Fn {
    std::size_t from, to;
    std::vector<Index> table;
  };
  // images[u][f] = index of f·u at size f.to (kNone if f does not start at k)
  using ImageTable = std::vector<std::vector<Index>>;

  ImageTable images(const Container& cont, const std::vector<ContainerValue>& vals, std::size_t k) const {
    ImageTable out(vals.size(), std::vector<Index>(fns_.size(), kNone));
    for (Index u = 0; u < vals.size(); ++u)
      for (Index f = 0; f < fns_.size(); ++f) {
        if (fns_[f].from != k) continue;
        auto moved = fmap(vals[u], [&](Index l) { return fns_[f].table[l]; });
        out[u][f] = value_index(cont, fns_[f].to, moved);
      }
    return out;
  }

  bool propagate(std::vector<std::vector<Index>>& a, std::size_t k, Index u, Index w) const {
    std::vector<std::tuple<std::size_t, Index, Index>> stack{{k, u, w}};
    a[k][u] = w;
    while (!stack.empty()) {
      auto [k0, u0, w0] = stack.back();
      stack.pop_back();
      for (Index f = 0; f < fns_.size(); ++f) {
        if (fns_[f].from != k0) continue;
        const auto j = fns_[f].to;
        const Index v = img_c_[k0][u0][f];
        const Index wv = img_d_[k0][w0][f];
        if (a[j][v] == kNone) {
          a[j][v] = wv;
          stack.emplace_back(j, v, wv);
        } else if (a[j][v] != wv) {
          return false;
        }
      }
    }
    return true;
  }

  std::size_t search(const std::vector<std::vector<Index>>& a) const {
    for (std::size_t k = K_ + 1; k-- > 0;)
      for (Index u = 0; u < a[k].size(); ++u) {
        if (a[k][u] != kNone) continue;
        std::size_t total = 0;
        for (Index w = 0; w < dv_[k].size(); ++w) {
          auto next = a;
          if (propagate(next, k, u, w)) total += search(next);
        }
        return total;
      }
    return 1;
  }

  std::size_t K_ = 0;
  std::vector<Fn> fns_;
  std::vector<std::vector<ContainerValue>> cv_, dv_;
  std::vector<ImageTable> img_c_, img_d_;
};

}  // namespace detail

/// Independent count of natural transformations ⟦c⟧ → ⟦d⟧, by search over
/// component functions on label sets of size 0..max |P s|.
inline std::size_t count_natural_families(const Container& c, const Container& d,
                                          std::size_t budget = 10'000'000) {
  return detail::NaturalityOracle(c, d, budget).count();
}

}  // namespace dcont
