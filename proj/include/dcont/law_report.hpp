#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dcont {

struct Binding {
  std::string var;
  std::string value;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// One failing instantiation of a law.
struct Violation {
  std::string law;
  std::vector<Binding> witness;
  std::string lhs;
  std::string rhs;

  /// "LAW s=... p=... lhs=... rhs=..."; lhs/rhs omitted when both empty.
  std::string line() const {
    std::string out = law;
    for (const auto& b : witness) out += " " + b.var + "=" + b.value;
    if (!lhs.empty() || !rhs.empty()) out += " lhs=" + lhs + " rhs=" + rhs;
    return out;
  }

  /// Value bound to `var` in the witness, or "" when unbound.
  const std::string& at(const std::string& var) const {
    static const std::string none;
    for (const auto& b : witness)
      if (b.var == var) return b.value;
    return none;
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of an exhaustive law check. Violations are listed in canonical
/// enumeration order; `passed()` iff there are none.
struct LawReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }

  void add(std::string law, std::vector<Binding> witness, std::string lhs = {},
           std::string rhs = {}) {
    violations.push_back(
        {std::move(law), std::move(witness), std::move(lhs), std::move(rhs)});
  }

  void append(const LawReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }

  std::size_t count(const std::string& law) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.law == law;
    return n;
  }

  const Violation* first(const std::string& law) const {
    for (const auto& v : violations)
      if (v.law == law) return &v;
    return nullptr;
  }

  void print(std::ostream& os) const {
    for (const auto& v : violations) os << v.line() << '\n';
  }
};

}  // namespace dcont
