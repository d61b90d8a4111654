#pragma once

#include "ordflow/natural.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace ordflow {

class Ordinal;

// One Cantor-normal-form summand omega^exponent * coefficient.
struct CnfTerm;

// An ordinal below epsilon_0 in Cantor normal form. The empty term list is zero.
// Exponents are strictly decreasing and coefficients are at least one, so
// structural equality coincides with ordinal equality.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal zero() { return {}; }
  static Ordinal one();
  static Ordinal omega();
  // Builds from already-canonical terms; throws InvalidCode if they are not.
  static Ordinal from_terms(std::vector<CnfTerm> terms);

  const std::vector<CnfTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<CnfTerm> terms_;
  friend struct OrdinalBuilder;
};

struct CnfTerm {
  Ordinal exponent;
  Natural coefficient;
  friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

enum class Ordering { less, equal, greater };

Ordering compare(const Ordinal& a, const Ordinal& b);

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
// Left subtraction: zero when a < b, else the unique g with b + g = a.
Ordinal monus(const Ordinal& a, const Ordinal& b);
// Left division: the g with b*g <= a and a - b*g < b. Throws DivisionByZeroOrdinal.
Ordinal div_left(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& a);

Ordinal from_nat(const Natural& n);
Natural to_nat(const Ordinal& a);  // throws NotFinite

bool is_limit(const Ordinal& a);
bool is_successor(const Ordinal& a);
Ordinal pred(const Ordinal& a);  // throws NotSuccessor

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

// Natural-number coding. Valid codes and ordinals are in bijection and the
// bit-length of a code is linear in the printed size of the ordinal.
Natural encode(const Ordinal& a);
Ordinal decode(const Natural& code);  // throws InvalidCode
bool is_valid_code(const Natural& code);

// Text form: "0" | term ("+" term)*, terms "n", "w", "w*n", "w^(a)", "w^(a)*n".
Ordinal parse_ordinal(std::string_view text);  // throws ParseError
std::string print(const Ordinal& a);

// Arithmetic over ordinal literals: + * - (left monus) / (left division),
// w^(e) and parentheses, left-associative, e.g. "w*2 + 3 + w". Throws
// ParseError, or DivisionByZeroOrdinal for "/ 0".
Ordinal eval_ordinal_expression(std::string_view text);

// Number of non-blank characters in print(a).
std::size_t symbol_count(const Ordinal& a);

std::string to_string(Ordering o);

}  // namespace ordflow
