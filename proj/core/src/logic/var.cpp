#include "ordflow/logic/var.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace ordflow::logic {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names{""};
  std::unordered_map<std::string, std::uint32_t> ids;

  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }
};

}  // namespace

Var::Var(std::string_view name) {
  SymbolTable& t = SymbolTable::instance();
  std::lock_guard lock(t.mutex);
  auto [it, inserted] = t.ids.try_emplace(std::string(name), static_cast<std::uint32_t>(t.names.size()));
  if (inserted) t.names.emplace_back(name);
  id_ = it->second;
}

const std::string& Var::name() const {
  SymbolTable& t = SymbolTable::instance();
  std::lock_guard lock(t.mutex);
  return t.names[id_];
}

Var Var::fresh(const Var& base, const std::vector<Var>& avoid) {
  std::string name = base.name();
  while (true) {
    name += '\'';
    Var v(name);
    if (std::find(avoid.begin(), avoid.end(), v) == avoid.end()) return v;
  }
}

VarSet var_union(const VarSet& a, const VarSet& b) {
  VarSet r;
  r.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

VarSet var_minus(const VarSet& a, const VarSet& b) {
  VarSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool var_contains(const VarSet& s, Var v) { return std::binary_search(s.begin(), s.end(), v); }

}  // namespace ordflow::logic
