#include "ordflow/logic/syntax.hpp"

#include "ordflow/error.hpp"
#include "ordflow/ordinal.hpp"

#include <cctype>
#include <map>

namespace ordflow::logic {

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::monus: return 1;
    case Op::mul:
    case Op::div: return 2;
    default: return 3;
  }
}

const char* infix(Op op) {
  switch (op) {
    case Op::add: return " + ";
    case Op::monus: return " - ";
    case Op::mul: return " * ";
    default: return " / ";
  }
}

bool is_ordinal_op(Op op) {
  return op == Op::olt || op == Op::oadd || op == Op::omul || op == Op::omonus || op == Op::odiv;
}

void print_term(std::string& out, const Term& t, bool ordinal_context) {
  switch (t.op()) {
    case Op::var: out += t.variable().name(); return;
    case Op::constant:
      if (ordinal_context && is_valid_code(t.value())) {
        out += "ord[" + print(decode(t.value())) + "]";
      } else {
        out += t.value().str();
      }
      return;
    default: break;
  }
  const int p = precedence(t.op());
  if (p < 3) {
    auto side = [&](const Term& a, bool right) {
      const int q = precedence(a.op());
      const bool wrap = right ? q <= p : q < p;
      if (wrap) out += '(';
      print_term(out, a, false);
      if (wrap) out += ')';
    };
    side(t.arg(0), false);
    out += infix(t.op());
    side(t.arg(1), true);
    return;
  }
  out += t.op() == Op::call ? t.function().name : std::string(op_name(t.op()));
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    print_term(out, t.arg(i), is_ordinal_op(t.op()));
  }
  out += ')';
}

void print_formula(std::string& out, const Formula& f) {
  auto part = [&](const Formula& p) {
    const bool wrap = p.kind() == FKind::conj || p.kind() == FKind::disj || p.is_quantifier();
    if (wrap) out += '(';
    print_formula(out, p);
    if (wrap) out += ')';
  };
  switch (f.kind()) {
    case FKind::top: out += "true"; return;
    case FKind::bottom: out += "false"; return;
    case FKind::eq:
    case FKind::le: {
      print_term(out, f.lhs(), false);
      if (f.kind() == FKind::eq)
        out += f.negated() ? " != " : " = ";
      else
        out += f.negated() ? " > " : " <= ";
      print_term(out, f.rhs(), false);
      return;
    }
    case FKind::conj:
    case FKind::disj:
      for (std::size_t i = 0; i < f.parts().size(); ++i) {
        if (i) out += f.kind() == FKind::conj ? " and " : " or ";
        part(f.parts()[i]);
      }
      return;
    default: break;
  }
  const bool universal = f.kind() == FKind::forall || f.kind() == FKind::bforall;
  out += universal ? "forall " : "exists ";
  out += f.bound_var().name();
  if (f.kind() == FKind::bforall || f.kind() == FKind::bexists) {
    out += " <= ";
    print_term(out, f.bound(), false);
  }
  out += ". ";
  print_formula(out, f.body());
}

}  // namespace

std::string to_text(const Term& t) {
  std::string out;
  print_term(out, t, false);
  return out;
}

std::string to_text(const Formula& f) {
  std::string out;
  print_formula(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const std::map<std::string, Op, std::less<>>& builtin_functions() {
  static const std::map<std::string, Op, std::less<>> table = {
      {"succ", Op::succ},     {"half", Op::half}, {"len", Op::bitlen},   {"exp2", Op::exp2},
      {"shr", Op::shr},       {"pair", Op::pair}, {"fst", Op::proj1},    {"snd", Op::proj2},
      {"ifz", Op::cond},      {"olt", Op::olt},   {"oadd", Op::oadd},    {"omul", Op::omul},
      {"omonus", Op::omonus}, {"odiv", Op::odiv}, {"o", Op::oembed},     {"ovalid", Op::ovalid},
  };
  return table;
}

bool is_keyword(std::string_view w) {
  return w == "forall" || w == "exists" || w == "and" || w == "or" || w == "not" || w == "true" ||
         w == "false";
}

class Parser {
 public:
  Parser(std::string_view s, const FunctionRegistry* fns) : s_(s), fns_(fns) {}

  Term whole_term() {
    Term t = term();
    finish();
    return t;
  }
  Formula whole_formula() {
    Formula f = formula();
    finish();
    return f;
  }

 private:
  std::string_view s_;
  const FunctionRegistry* fns_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }
  bool at(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!at(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string_view peek_word() {
    skip();
    std::size_t e = pos_;
    while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_' || s_[e] == '\''))
      ++e;
    if (e == pos_ || std::isdigit(static_cast<unsigned char>(s_[pos_]))) return {};
    return s_.substr(pos_, e - pos_);
  }
  bool accept_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }
  std::string identifier() {
    std::string_view w = peek_word();
    if (w.empty() || is_keyword(w)) fail("expected an identifier");
    pos_ += w.size();
    return std::string(w);
  }

  // formula := disjunction ['->' formula]
  Formula formula() {
    Formula lhs = disjunction();
    if (accept("->")) return implies(lhs, formula());
    return lhs;
  }
  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept_word("or")) parts.push_back(conjunction());
    return Formula::disj(std::move(parts));
  }
  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept_word("and")) parts.push_back(unary());
    return Formula::conj(std::move(parts));
  }
  Formula unary() {
    if (accept_word("not")) return negate(unary());
    if (accept_word("true")) return Formula::top();
    if (accept_word("false")) return Formula::bottom();
    const bool universal = peek_word() == "forall";
    if (universal || peek_word() == "exists") {
      pos_ += 6;  // "forall" and "exists" have the same length
      Var x(identifier());
      std::optional<Term> bound;
      if (accept("<=")) bound = term();
      expect(".");
      Formula body = formula();
      if (bound) return universal ? Formula::forall_le(x, *bound, body) : Formula::exists_le(x, *bound, body);
      return universal ? Formula::forall(x, body) : Formula::exists(x, body);
    }
    if (at("(")) {
      std::size_t save = pos_;
      try {
        ++pos_;
        Formula f = formula();
        expect(")");
        return f;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return comparison();
  }
  Formula comparison() {
    Term a = term();
    if (accept("!=")) return Formula::neq(a, term());
    if (accept("<=")) return Formula::le(a, term());
    if (accept(">=")) return Formula::le(term(), a);
    if (accept("<")) return Formula::nle(term(), a);
    if (accept(">")) return Formula::nle(a, term());
    if (accept("=")) return Formula::eq(a, term());
    fail("expected a comparison");
  }

  Term term() {
    Term t = product();
    while (true) {
      if (at("->")) return t;
      if (accept("+"))
        t = t + product();
      else if (accept("-"))
        t = t - product();
      else
        return t;
    }
  }
  Term product() {
    Term t = primary();
    while (true) {
      if (accept("*"))
        t = t * primary();
      else if (accept("/"))
        t = t / primary();
      else
        return t;
    }
  }
  Term primary() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Natural(std::string(s_.substr(start, pos_ - start))));
    }
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    std::size_t start = (skip(), pos_);
    std::string name = identifier();
    if (name == "ord" && accept("[")) {
      std::size_t close = s_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated ord[");
      std::string_view body = s_.substr(pos_, close - pos_);
      try {
        Ordinal a = parse_ordinal(body);
        pos_ = close + 1;
        return constant(encode(a));
      } catch (const ParseError& e) {
        throw ParseError("bad ordinal literal", pos_ + e.position());
      }
    }
    if (!accept("(")) return Term::var(Var(name));
    std::vector<Term> args;
    if (!accept(")")) {
      do args.push_back(term());
      while (accept(","));
      expect(")");
    }
    auto it = builtin_functions().find(name);
    try {
      if (it != builtin_functions().end()) return Term::make(it->second, std::move(args));
      FunctionPtr f = fns_ ? fns_->find(name) : nullptr;
      if (!f) {
        pos_ = start;
        fail("unknown function '" + name + "'");
      }
      return Term::call(f, std::move(args));
    } catch (const ArityError& e) {
      pos_ = start;
      fail(e.what());
    }
  }
};

}  // namespace

Term parse_term(std::string_view text, const FunctionRegistry* functions) {
  return Parser(text, functions).whole_term();
}

Formula parse_formula(std::string_view text, const FunctionRegistry* functions) {
  return Parser(text, functions).whole_formula();
}

}  // namespace ordflow::logic
