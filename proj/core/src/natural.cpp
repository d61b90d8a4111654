#include "ordflow/natural.hpp"

#include "ordflow/error.hpp"

#include <limits>

namespace ordflow {

std::uint64_t bitlen(const Natural& n) {
  if (n.is_zero()) return 0;
  return boost::multiprecision::msb(n) + 1;
}

Natural pow2(std::uint64_t e) {
  Natural r = 1;
  r <<= e;
  return r;
}

std::string to_string(const Natural& n) { return n.str(); }

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw ParseError("expected a natural number", 0);
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') throw ParseError("expected a decimal digit", i);
  return Natural(std::string(text));
}

std::uint64_t to_u64(const Natural& n) {
  if (n > std::numeric_limits<std::uint64_t>::max()) throw EvalLimit("value " + n.str() + " exceeds 64 bits");
  return n.convert_to<std::uint64_t>();
}

}  // namespace ordflow
