#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ordflow {

// Arbitrary-precision natural number. Values are never negative by convention;
// every operation that could go below zero uses monus().
using Natural = boost::multiprecision::cpp_int;

inline Natural monus(const Natural& a, const Natural& b) { return a > b ? Natural(a - b) : Natural(0); }

// Number of binary digits; bitlen(0) = 0.
std::uint64_t bitlen(const Natural& n);

Natural pow2(std::uint64_t e);

std::string to_string(const Natural& n);
// Decimal digits only; throws ParseError otherwise.
Natural parse_natural(std::string_view text);

// Narrowing for loop bounds and shift amounts. Throws if n does not fit.
std::uint64_t to_u64(const Natural& n);

}  // namespace ordflow
