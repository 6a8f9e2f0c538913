#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dcont {

/// Index of an element inside a FinSet. Tables store indices, not names.
using Index = std::size_t;

/// Marks an absent table entry.
inline constexpr Index kNone = std::numeric_limits<Index>::max();

/// Thrown for contract violations. `code()` is one of the stable
/// identifiers: table-incomplete, ill-typed, domain-mismatch, not-lawful,
/// budget-exceeded, unknown-family, bad-params, parse-error,
/// unknown-reference, label-out-of-domain, usage.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A named finite set with a canonical iteration order.
struct FinSet {
  std::string name;
  std::vector<std::string> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
  const std::string& operator[](Index i) const { return elements[i]; }

  std::optional<Index> find(std::string_view element) const {
    auto it = std::find(elements.begin(), elements.end(), element);
    if (it == elements.end()) return std::nullopt;
    return static_cast<Index>(it - elements.begin());
  }

  Index index_of(std::string_view element) const {
    if (auto i = find(element)) return *i;
    throw Error("unknown-reference",
                "'" + std::string(element) + "' is not an element of " + name);
  }

  /// First element that occurs twice, if any.
  std::optional<std::string> first_duplicate() const {
    std::unordered_set<std::string_view> seen;
    for (const auto& e : elements)
      if (!seen.insert(e).second) return e;
    return std::nullopt;
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
};

/// {"0", ..., "n-1"}
inline FinSet range_set(std::string name, std::size_t n) {
  FinSet set{std::move(name), {}};
  set.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) set.elements.push_back(std::to_string(i));
  return set;
}

inline std::string pair_name(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

/// Saturating product, used for search-space estimates.
inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::size_t>::max() / b)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

inline std::size_t saturating_add(std::size_t a, std::size_t b) {
  if (a > std::numeric_limits<std::size_t>::max() - b)
    return std::numeric_limits<std::size_t>::max();
  return a + b;
}

inline std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace dcont
