#include "ordflow/ordinal.hpp"

#include "ordflow/error.hpp"

#include <cctype>
#include <utility>

namespace ordflow {

struct OrdinalBuilder {
  static Ordinal make(std::vector<CnfTerm> terms) {
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
  }
};

namespace {

using Terms = std::vector<CnfTerm>;

Ordinal make(Terms t) { return OrdinalBuilder::make(std::move(t)); }

Terms slice(const Terms& t, std::size_t from, std::size_t to) {
  return Terms(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(to));
}

void append(Terms& dst, const Terms& src, std::size_t from = 0) {
  dst.insert(dst.end(), src.begin() + static_cast<std::ptrdiff_t>(from), src.end());
}

bool canonical(const Terms& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].coefficient < 1) return false;
    if (i > 0 && !(t[i].exponent < t[i - 1].exponent)) return false;
  }
  return true;
}

}  // namespace

Ordinal Ordinal::one() { return make({CnfTerm{Ordinal{}, 1}}); }
Ordinal Ordinal::omega() { return make({CnfTerm{one(), 1}}); }

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  if (!canonical(terms)) throw InvalidCode("terms are not in Cantor normal form");
  return make(std::move(terms));
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  switch (compare(a, b)) {
    case Ordering::less: return std::strong_ordering::less;
    case Ordering::equal: return std::strong_ordering::equal;
    default: return std::strong_ordering::greater;
  }
}

// Lexicographic on the summand lists: the first differing exponent decides,
// then the coefficient at that position; a proper prefix is smaller.
Ordering compare(const Ordinal& a, const Ordinal& b) {
  const Terms& x = a.terms();
  const Terms& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    Ordering e = compare(x[i].exponent, y[i].exponent);
    if (e != Ordering::equal) return e;
    if (x[i].coefficient != y[i].coefficient)
      return x[i].coefficient < y[i].coefficient ? Ordering::less : Ordering::greater;
  }
  if (x.size() == y.size()) return Ordering::equal;
  return x.size() < y.size() ? Ordering::less : Ordering::greater;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Terms& x = a.terms();
  const Terms& y = b.terms();
  const Ordinal& lead = y[0].exponent;
  // k = number of leading summands of a with exponent above b's leading exponent
  std::size_t k = 0;
  while (k < x.size() && compare(x[k].exponent, lead) == Ordering::greater) ++k;
  Terms r = slice(x, 0, k);
  if (k < x.size() && x[k].exponent == lead) {
    r.push_back(CnfTerm{lead, x[k].coefficient + y[0].coefficient});
    append(r, y, 1);
  } else {
    append(r, y);
  }
  return make(std::move(r));
}

Ordinal monus(const Ordinal& a, const Ordinal& b) {
  const Terms& x = a.terms();
  const Terms& y = b.terms();
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  if (k == y.size()) return make(slice(x, k, x.size()));
  if (k == x.size()) return {};
  switch (compare(x[k].exponent, y[k].exponent)) {
    case Ordering::less: return {};
    case Ordering::greater: return make(slice(x, k, x.size()));
    case Ordering::equal: break;
  }
  if (x[k].coefficient < y[k].coefficient) return {};
  Terms r{CnfTerm{x[k].exponent, x[k].coefficient - y[k].coefficient}};
  append(r, x, k + 1);
  return make(std::move(r));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Terms& x = a.terms();
  const Terms& y = b.terms();
  const Ordinal& lead = x[0].exponent;
  Terms r;
  const bool finite_tail = y.back().exponent.is_zero();
  const std::size_t infinite_part = finite_tail ? y.size() - 1 : y.size();
  for (std::size_t j = 0; j < infinite_part; ++j) r.push_back(CnfTerm{add(lead, y[j].exponent), y[j].coefficient});
  if (finite_tail) {
    r.push_back(CnfTerm{lead, x[0].coefficient * y.back().coefficient});
    append(r, x, 1);
  }
  return make(std::move(r));
}

Ordinal div_left(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) throw DivisionByZeroOrdinal("left division by zero ordinal");
  if (a.is_zero()) return {};
  const Terms& x = a.terms();
  const Terms& y = b.terms();
  const Ordinal& lead = y[0].exponent;
  if (compare(x[0].exponent, lead) == Ordering::less) return {};
  // k = index one past the last summand of a whose exponent is >= lead
  std::size_t k = 0;
  while (k < x.size() && compare(x[k].exponent, lead) != Ordering::less) ++k;
  const std::size_t last = k - 1;
  Terms r;
  if (x[last].exponent != lead) {
    for (std::size_t i = 0; i < k; ++i) r.push_back(CnfTerm{monus(x[i].exponent, lead), x[i].coefficient});
    return make(std::move(r));
  }
  for (std::size_t i = 0; i < last; ++i) r.push_back(CnfTerm{monus(x[i].exponent, lead), x[i].coefficient});
  Natural q = x[last].coefficient / y[0].coefficient;
  // Decide whether b's lower summands still fit below the remainder of a.
  Ordinal tail = make(slice(x, last, x.size()));
  Terms needed_terms;
  if (q > 0) needed_terms.push_back(CnfTerm{lead, y[0].coefficient * q});
  append(needed_terms, y, 1);
  Ordinal needed = make(std::move(needed_terms));
  if (compare(tail, needed) == Ordering::less) q -= 1;
  if (q > 0) r.push_back(CnfTerm{Ordinal{}, q});
  return make(std::move(r));
}

Ordinal omega_pow(const Ordinal& a) { return make({CnfTerm{a, 1}}); }

Ordinal from_nat(const Natural& n) {
  if (n.is_zero()) return {};
  return make({CnfTerm{Ordinal{}, n}});
}

Natural to_nat(const Ordinal& a) {
  if (!a.is_finite()) throw NotFinite(print(a) + " is not finite");
  return a.is_zero() ? Natural(0) : a.terms()[0].coefficient;
}

bool is_successor(const Ordinal& a) { return !a.is_zero() && a.terms().back().exponent.is_zero(); }
bool is_limit(const Ordinal& a) { return !a.is_zero() && !a.terms().back().exponent.is_zero(); }

Ordinal pred(const Ordinal& a) {
  if (!is_successor(a)) throw NotSuccessor(print(a) + " has no predecessor");
  Terms t = a.terms();
  if (t.back().coefficient == 1)
    t.pop_back();
  else
    t.back().coefficient -= 1;
  return make(std::move(t));
}

// ---------------------------------------------------------------------------
// Coding.
//
// Bit strings are built from three pieces:
//   body(a)  = for each summand: "1" body(exponent) "0" coef(c)      (nested)
//   coef(c)  = (L-1) ones, a zero, then the L-1 bits of c after its leading 1
// The top-level ordinal omits its closing "0", and code(a) = int("1" body) - 1,
// so zero gets code 0 and the scheme is a bijection onto the parsable strings.

namespace {

void put_coef(std::string& out, const Natural& c) {
  const std::uint64_t len = bitlen(c);
  out.append(len - 1, '1');
  out.push_back('0');
  for (std::uint64_t i = len - 1; i-- > 0;) out.push_back(boost::multiprecision::bit_test(c, i) ? '1' : '0');
}

void put_summands(std::string& out, const Ordinal& a) {
  for (const CnfTerm& t : a.terms()) {
    out.push_back('1');
    put_summands(out, t.exponent);
    out.push_back('0');
    put_coef(out, t.coefficient);
  }
}

struct BitReader {
  const std::string& bits;
  std::size_t pos = 0;
  bool done() const { return pos >= bits.size(); }
  char next() {
    if (done()) throw InvalidCode("truncated ordinal code");
    return bits[pos++];
  }
};

Natural read_coef(BitReader& r) {
  std::size_t extra = 0;
  while (r.next() == '1') ++extra;
  Natural c = 1;
  for (std::size_t i = 0; i < extra; ++i) {
    c <<= 1;
    if (r.next() == '1') c |= 1;
  }
  return c;
}

Ordinal read_summands(BitReader& r, bool top_level) {
  Terms t;
  while (true) {
    if (top_level && r.done()) break;
    if (r.next() == '0') {
      if (top_level) throw InvalidCode("stray terminator in ordinal code");
      break;
    }
    Ordinal e = read_summands(r, false);
    Natural c = read_coef(r);
    if (!t.empty() && !(e < t.back().exponent)) throw InvalidCode("exponents not strictly decreasing");
    t.push_back(CnfTerm{std::move(e), std::move(c)});
  }
  return make(std::move(t));
}

}  // namespace

Natural encode(const Ordinal& a) {
  std::string bits = "1";
  put_summands(bits, a);
  Natural n = 0;
  for (char b : bits) {
    n <<= 1;
    if (b == '1') n |= 1;
  }
  return n - 1;
}

Ordinal decode(const Natural& code) {
  const Natural n = code + 1;
  const std::uint64_t len = bitlen(n);
  std::string bits;
  bits.reserve(len);
  for (std::uint64_t i = len - 1; i-- > 0;) bits.push_back(boost::multiprecision::bit_test(n, i) ? '1' : '0');
  BitReader r{bits};
  return read_summands(r, true);
}

bool is_valid_code(const Natural& code) {
  try {
    decode(code);
    return true;
  } catch (const InvalidCode&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal a = ordinal();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return a;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Natural nat() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 1 && s_[start] == '0') {
      pos_ = start;
      fail("leading zero in number");
    }
    return Natural(std::string(s_.substr(start, pos_ - start)));
  }

  Ordinal ordinal() {
    skip();
    if (peek('0')) {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        pos_ = save;
        fail("leading zero in number");
      }
      return {};
    }
    Terms t;
    while (true) {
      std::size_t start = (skip(), pos_);
      CnfTerm term = summand();
      if (!t.empty() && !(term.exponent < t.back().exponent)) {
        pos_ = start;
        fail("exponents must be strictly decreasing");
      }
      t.push_back(std::move(term));
      if (!peek('+')) break;
      ++pos_;
    }
    return make(std::move(t));
  }

  CnfTerm summand() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      Natural n = nat();
      if (n.is_zero()) {
        pos_ = start;
        fail("zero coefficient");
      }
      return CnfTerm{Ordinal{}, n};
    }
    expect('w');
    Ordinal exponent = Ordinal::one();
    if (peek('^')) {
      ++pos_;
      expect('(');
      exponent = ordinal();
      expect(')');
    }
    Natural coef = 1;
    if (peek('*')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      coef = nat();
      if (coef.is_zero()) {
        pos_ = start;
        fail("zero coefficient");
      }
    }
    return CnfTerm{std::move(exponent), std::move(coef)};
  }
};

void print_to(std::string& out, const Ordinal& a) {
  if (a.is_zero()) {
    out += '0';
    return;
  }
  bool first = true;
  for (const CnfTerm& t : a.terms()) {
    if (!first) out += " + ";
    first = false;
    if (t.exponent.is_zero()) {
      out += t.coefficient.str();
      continue;
    }
    out += 'w';
    if (t.exponent != Ordinal::one()) {
      out += "^(";
      print_to(out, t.exponent);
      out += ')';
    }
    if (t.coefficient != 1) {
      out += '*';
      out += t.coefficient.str();
    }
  }
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse_all(); }

std::string print(const Ordinal& a) {
  std::string out;
  print_to(out, a);
  return out;
}

std::size_t symbol_count(const Ordinal& a) {
  std::size_t n = 0;
  for (char c : print(a))
    if (c != ' ') ++n;
  return n;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    default: return "greater";
  }
}

}  // namespace ordflow
