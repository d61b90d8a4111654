#include "ordflow/error.hpp"
#include "ordflow/ordinal.hpp"

#include <cctype>

namespace ordflow {

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  Ordinal parse() {
    Ordinal a = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Ordinal sum() {
    Ordinal a = product();
    while (true) {
      if (eat('+'))
        a = add(a, product());
      else if (eat('-'))
        a = monus(a, product());
      else
        return a;
    }
  }

  Ordinal product() {
    Ordinal a = power();
    while (true) {
      if (eat('*'))
        a = mul(a, power());
      else if (eat('/'))
        a = div_left(a, power());
      else
        return a;
    }
  }

  Ordinal power() {
    skip();
    const std::size_t at = i_;
    bool is_omega = i_ < s_.size() && s_[i_] == 'w';
    Ordinal base = atom();
    if (!eat('^')) return base;
    if (!is_omega) {
      i_ = at;
      fail("only w can be raised to a power");
    }
    return omega_pow(atom());
  }

  Ordinal atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      Ordinal a = sum();
      if (!eat(')')) fail("expected ')'");
      return a;
    }
    if (c == 'w') {
      ++i_;
      return Ordinal::omega();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Natural n = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) n = n * 10 + (s_[i_++] - '0');
      return from_nat(n);
    }
    fail("expected a number, w or '('");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Ordinal eval_ordinal_expression(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace ordflow
