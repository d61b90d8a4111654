#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ordflow::logic {

// Interned variable name. Comparison and hashing use the intern id; use
// by_name for orderings that must not depend on interning order.
class Var {
 public:
  Var() = default;
  explicit Var(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  // A variable named like `base` plus primes, distinct from everything in `avoid`.
  static Var fresh(const Var& base, const std::vector<Var>& avoid);

  friend bool operator==(Var a, Var b) { return a.id_ == b.id_; }
  friend auto operator<=>(Var a, Var b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

inline bool by_name(const Var& a, const Var& b) { return a.name() < b.name(); }

// Sorted, duplicate-free list of variables (sorted by id).
using VarSet = std::vector<Var>;
VarSet var_union(const VarSet& a, const VarSet& b);
VarSet var_minus(const VarSet& a, const VarSet& b);
bool var_contains(const VarSet& s, Var v);

}  // namespace ordflow::logic

template <>
struct std::hash<ordflow::logic::Var> {
  std::size_t operator()(ordflow::logic::Var v) const noexcept { return v.id(); }
};
