#include "small_ordinal.hpp"

#include <algorithm>

namespace oracle {

std::strong_ordering oracle_cmp(SmallOrdinal x, SmallOrdinal y) { return x <=> y; }

// Adding y on the right swallows every part of x below y's leading power.
SmallOrdinal oracle_add(SmallOrdinal x, SmallOrdinal y) {
  if (y.a > 0) return {x.a + y.a, y.b, y.c};
  if (y.b > 0) return {x.a, x.b + y.b, y.c};
  return {x.a, x.b, x.c + y.c};
}

namespace {

int degree(SmallOrdinal x) { return x.a > 0 ? 2 : x.b > 0 ? 1 : 0; }

unsigned long long leading(SmallOrdinal x) { return x.a > 0 ? x.a : x.b > 0 ? x.b : x.c; }

// x * omega^k for k >= 1 is omega^(degree(x) + k) when x > 0.
std::optional<SmallOrdinal> times_omega_power(SmallOrdinal x, int k) {
  if (x == SmallOrdinal{}) return SmallOrdinal{};
  int d = degree(x) + k;
  if (d > 2) return std::nullopt;
  return d == 2 ? SmallOrdinal{1, 0, 0} : SmallOrdinal{0, 1, 0};
}

// x * n for finite n >= 1: only the leading coefficient is multiplied.
SmallOrdinal times_finite(SmallOrdinal x, unsigned long long n) {
  if (n == 0) return {};
  switch (degree(x)) {
    case 2: return {x.a * n, x.b, x.c};
    case 1: return {0, x.b * n, x.c};
    default: return {0, 0, x.c * n};
  }
}

}  // namespace

// Left distributivity over y = omega^2*a + omega*b + c.
std::optional<SmallOrdinal> oracle_mul(SmallOrdinal x, SmallOrdinal y) {
  SmallOrdinal r{};
  if (y.a > 0) {
    auto p = times_omega_power(x, 2);
    if (!p) return std::nullopt;
    r = oracle_add(r, times_finite(*p, y.a));
  }
  if (y.b > 0) {
    auto p = times_omega_power(x, 1);
    if (!p) return std::nullopt;
    r = oracle_add(r, times_finite(*p, y.b));
  }
  if (y.c > 0) r = oracle_add(r, times_finite(x, y.c));
  return r;
}

SmallOrdinal oracle_monus(SmallOrdinal x, SmallOrdinal y) {
  if (x < y) return {};
  if (x.a > y.a) return {x.a - y.a, x.b, x.c};
  if (x.b > y.b) return {0, x.b - y.b, x.c};
  return {0, 0, x.c - y.c};
}

// Largest q with y*q <= x, chosen coordinate by coordinate from the top; the
// set of such q is downward closed, so the greedy choice is the maximum.
SmallOrdinal oracle_div(SmallOrdinal x, SmallOrdinal y) {
  if (y == SmallOrdinal{}) throw DivisionByZero("division by zero");
  const unsigned long long cap = std::max({x.a, x.b, x.c}) + 1;
  auto fits = [&](SmallOrdinal q) {
    auto p = oracle_mul(y, q);
    return p && *p <= x;
  };
  SmallOrdinal q{};
  for (unsigned long long* coord : {&q.a, &q.b, &q.c}) {
    unsigned long long best = 0;
    for (unsigned long long v = 1; v <= cap; ++v) {
      *coord = v;
      if (fits(q)) best = v;
    }
    *coord = best;
  }
  return q;
}

// Builds the normal form directly so the embedding does not lean on the
// arithmetic under test.
ordflow::Ordinal embed(SmallOrdinal s) {
  using ordflow::CnfTerm;
  using ordflow::Ordinal;
  std::vector<CnfTerm> t;
  if (s.a > 0) t.push_back(CnfTerm{Ordinal::from_terms({CnfTerm{Ordinal{}, 2}}), s.a});
  if (s.b > 0) t.push_back(CnfTerm{Ordinal::one(), s.b});
  if (s.c > 0) t.push_back(CnfTerm{Ordinal{}, s.c});
  return Ordinal::from_terms(std::move(t));
}

SmallOrdinal restrict(const ordflow::Ordinal& a) {
  SmallOrdinal s;
  for (const auto& t : a.terms()) {
    if (!t.exponent.is_finite() || t.exponent > ordflow::from_nat(2))
      throw TooLarge(ordflow::print(a) + " is not below omega^3");
    auto e = ordflow::to_nat(t.exponent);
    auto c = t.coefficient.convert_to<unsigned long long>();
    (e == 2 ? s.a : e == 1 ? s.b : s.c) = c;
  }
  return s;
}

}  // namespace oracle
