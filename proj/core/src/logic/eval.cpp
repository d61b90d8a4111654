#include "ordflow/logic/eval.hpp"

#include "ordflow/error.hpp"

#include <boost/multiprecision/integer.hpp>

namespace ordflow::logic {

Env::Env(std::initializer_list<std::pair<Var, Natural>> bindings) : slots_(bindings) {}

void Env::set(Var v, Natural value) {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
    if (it->first == v) {
      it->second = std::move(value);
      return;
    }
  push(v, std::move(value));
}

const Natural* Env::find(Var v) const {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
    if (it->first == v) return &it->second;
  return nullptr;
}

const Natural& Env::at(Var v) const {
  if (const Natural* n = find(v)) return *n;
  throw UnboundVariable("variable " + v.name() + " is not bound");
}

Ordinal decode_or_zero(const Natural& code) {
  try {
    return decode(code);
  } catch (const InvalidCode&) {
    return {};
  }
}

namespace {

constexpr std::uint64_t kMaxExponent = 1u << 22;

// Cantor pairing and its inverse.
Natural cantor_pair(const Natural& a, const Natural& b) {
  Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  Natural t = w * (w + 1) / 2;
  Natural b = z - t;
  return {w - b, b};
}

Natural ordinal_op(Op op, const Natural& a, const Natural& b) {
  Ordinal x = decode_or_zero(a);
  Ordinal y = decode_or_zero(b);
  switch (op) {
    case Op::oadd: return encode(add(x, y));
    case Op::omul: return encode(mul(x, y));
    case Op::omonus: return encode(monus(x, y));
    case Op::odiv: return y.is_zero() ? encode(Ordinal{}) : encode(div_left(x, y));
    default: return compare(x, y) == Ordering::less ? 1 : 0;
  }
}

}  // namespace

Natural apply_function(const DefinedFunction& f, const std::vector<Natural>& args) {
  Env env;
  std::size_t i = 0;
  Natural w;
  if (f.rec_var) w = args.at(i++);
  for (const Var& p : f.params) env.push(p, args.at(i++));
  Natural value = eval_term(f.base, env);
  if (!f.rec_var || w.is_zero()) return value;
  // Walk the binary prefixes of w from the top bit down.
  const std::uint64_t len = ordflow::bitlen(w);
  env.push(*f.rec_var, 0);
  env.push(f.prev_var, 0);
  for (std::uint64_t j = 1; j <= len; ++j) {
    env.set(*f.rec_var, Natural(w >> (len - j)));
    env.set(f.prev_var, value);
    value = eval_term(f.step, env);
  }
  return value;
}

Natural eval_term(const Term& t, const Env& env) {
  auto arg = [&](std::size_t i) { return eval_term(t.arg(i), env); };
  switch (t.op()) {
    case Op::var: return env.at(t.variable());
    case Op::constant: return t.value();
    case Op::succ: return arg(0) + 1;
    case Op::add: return arg(0) + arg(1);
    case Op::mul: return arg(0) * arg(1);
    case Op::monus: return monus(arg(0), arg(1));
    case Op::half: return arg(0) >> 1;
    case Op::bitlen: return ordflow::bitlen(arg(0));
    case Op::exp2: {
      Natural e = arg(0);
      if (e > kMaxExponent) throw EvalLimit("exp2 argument " + e.str() + " is too large to evaluate");
      return pow2(e.convert_to<std::uint64_t>());
    }
    case Op::shr: {
      Natural a = arg(0), n = arg(1);
      if (n >= ordflow::bitlen(a)) return 0;
      return a >> n.convert_to<std::uint64_t>();
    }
    case Op::div: {
      Natural a = arg(0), b = arg(1);
      return b.is_zero() ? Natural(0) : Natural(a / b);
    }
    case Op::pair: return cantor_pair(arg(0), arg(1));
    case Op::proj1: return cantor_unpair(arg(0)).first;
    case Op::proj2: return cantor_unpair(arg(0)).second;
    case Op::cond: return arg(0).is_zero() ? arg(1) : arg(2);
    case Op::call: {
      std::vector<Natural> args;
      for (std::size_t i = 0; i < t.args().size(); ++i) args.push_back(arg(i));
      return apply_function(t.function(), args);
    }
    case Op::olt:
    case Op::oadd:
    case Op::omul:
    case Op::omonus:
    case Op::odiv: return ordinal_op(t.op(), arg(0), arg(1));
    case Op::oembed: return encode(from_nat(arg(0)));
    case Op::ovalid: return is_valid_code(arg(0)) ? 1 : 0;
  }
  return 0;
}

namespace {

class Evaluator {
 public:
  Evaluator(Env env, const Natural& domain) : env_(std::move(env)), domain_(domain) {}

  Verdict run(const Formula& f) {
    switch (f.kind()) {
      case FKind::top: return {true, true};
      case FKind::bottom: return {false, true};
      case FKind::eq:
      case FKind::le: {
        Natural a = eval_term(f.lhs(), env_), b = eval_term(f.rhs(), env_);
        bool v = f.kind() == FKind::eq ? a == b : a <= b;
        return {v != f.negated(), true};
      }
      case FKind::conj: return junction(f.parts(), false);
      case FKind::disj: return junction(f.parts(), true);
      case FKind::bforall:
      case FKind::bexists: {
        Natural limit = eval_term(f.bound(), env_);
        return quantify(f, limit, f.kind() == FKind::bexists, false);
      }
      case FKind::forall:
      case FKind::exists: return quantify(f, domain_, f.kind() == FKind::exists, true);
    }
    return {false, true};
  }

 private:
  Env env_;
  const Natural& domain_;

  // `decisive` is the truth value that settles the junction (true for or).
  // Settling is exact if some part reaches it exactly; otherwise the result
  // is exact only if every part was.
  Verdict junction(const std::vector<Formula>& parts, bool decisive) {
    bool settled = false, all_exact = true;
    for (const Formula& p : parts) {
      Verdict v = run(p);
      if (v.value == decisive) {
        if (v.exact) return {decisive, true};
        settled = true;
      }
      all_exact = all_exact && v.exact;
    }
    if (settled) return {decisive, false};
    return {!decisive, all_exact};
  }

  Verdict quantify(const Formula& f, const Natural& limit, bool decisive, bool truncated) {
    bool settled = false, all_exact = true;
    env_.push(f.bound_var(), 0);
    for (Natural i = 0; i <= limit; ++i) {
      env_.set(f.bound_var(), i);
      Verdict v = run(f.body());
      if (v.value == decisive && v.exact) {
        env_.pop();
        return {decisive, true};
      }
      settled = settled || v.value == decisive;
      all_exact = all_exact && v.exact;
    }
    env_.pop();
    if (settled) return {decisive, false};
    return {!decisive, all_exact && !truncated};
  }
};

}  // namespace

Verdict eval(const Formula& f, const Env& env, const Natural& domain_bound) {
  return Evaluator(env, domain_bound).run(f);
}

}  // namespace ordflow::logic
