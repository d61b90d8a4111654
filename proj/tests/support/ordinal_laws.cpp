#include "ordinal_laws.hpp"

namespace laws {

using namespace ordflow;

namespace {

struct Collector {
  std::vector<std::string>& out;
  const Ordinal &a, &b, &c;
  void expect(bool ok, const char* law) {
    if (!ok) out.push_back(std::string(law) + " fails at a=" + print(a) + ", b=" + print(b) + ", c=" + print(c));
  }
};

}  // namespace

std::vector<std::string> check_triple(const Ordinal& a, const Ordinal& b, const Ordinal& c) {
  std::vector<std::string> failures;
  Collector k{failures, a, b, c};
  const Ordinal zero, one = Ordinal::one();

  k.expect(add(add(a, b), c) == add(a, add(b, c)), "additive associativity");
  k.expect(mul(mul(a, b), c) == mul(a, mul(b, c)), "multiplicative associativity");
  k.expect(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "left distributivity");

  k.expect(add(a, zero) == a && add(zero, a) == a, "zero is additive identity");
  k.expect(mul(a, one) == a && mul(one, a) == a, "one is multiplicative identity");
  k.expect(mul(a, zero).is_zero() && mul(zero, a).is_zero(), "zero annihilates");
  k.expect(compare(zero, a) != Ordering::greater, "zero is minimum");

  // left-strict, right-weak monotonicity, with (b, c) as the compared pair
  if (b < c) {
    k.expect(add(a, b) < add(a, c), "left-strict additive monotonicity");
    if (!a.is_zero()) k.expect(mul(a, b) < mul(a, c), "left-strict multiplicative monotonicity");
  }
  if (b <= c) {
    k.expect(add(b, a) <= add(c, a), "right-weak additive monotonicity");
    k.expect(mul(b, a) <= mul(c, a), "right-weak multiplicative monotonicity");
  }
  // discreteness: g < b + 1 implies g <= b
  if (a < add(b, one)) k.expect(a <= b, "discreteness at successors");

  if (a < b) k.expect(monus(a, b).is_zero(), "monus below");
  if (b <= a) k.expect(add(b, monus(a, b)) == a, "monus inverse");

  if (!b.is_zero()) {
    Ordinal q = div_left(a, b);
    Ordinal bq = mul(b, q);
    k.expect(bq <= a, "quotient fits");
    k.expect(monus(a, bq) < b, "remainder below divisor");
    k.expect(div_left(mul(b, c), b) == c, "division cancels multiplication");
  }

  k.expect(omega_pow(add(a, b)) == mul(omega_pow(a), omega_pow(b)), "omega power homomorphism");
  if (a < b) k.expect(omega_pow(a) < omega_pow(b), "omega power monotone");

  k.expect(is_limit(a) != is_successor(a) || a.is_zero(), "limit/successor dichotomy");
  if (is_successor(a)) k.expect(add(pred(a), one) == a, "predecessor");
  return failures;
}

std::vector<std::string> check_naturals(unsigned limit) {
  std::vector<std::string> failures;
  std::vector<Ordinal> o;
  for (unsigned n = 0; n <= limit; ++n) {
    o.push_back(from_nat(n));
    if (to_nat(o.back()) != n) failures.push_back("to_nat(from_nat(" + std::to_string(n) + "))");
  }
  for (unsigned m = 0; m <= limit; ++m)
    for (unsigned n = 0; n <= limit; ++n)
      if ((m < n) != (compare(o[m], o[n]) == Ordering::less))
        failures.push_back("order isomorphism at " + std::to_string(m) + ", " + std::to_string(n));
  if (from_nat(0) != Ordinal{} || from_nat(1) != Ordinal::one()) failures.push_back("o(0), o(1)");
  return failures;
}

}  // namespace laws
