#include "ordflow/io/documents.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/analysis.hpp"
#include "ordflow/logic/syntax.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ordflow::io {

using json = nlohmann::json;
using namespace logic;

namespace {

class Reader {
 public:
  Reader(std::string_view text, std::string_view kind) {
    try {
      j_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("malformed document: ") + e.what());
    }
    if (!j_.is_object()) throw FormatError("a document must be a JSON object");
    if (!kind.empty() && str("kind") != kind)
      throw FormatError("expected a document of kind " + std::string(kind) + ", got " + str("kind"));
    if (j_.contains("functions")) define_functions(j_.at("functions"));
  }

  explicit Reader(json j, const FunctionRegistry* parent_functions = nullptr) : j_(std::move(j)) {
    if (!j_.is_object()) throw FormatError("expected a JSON object");
    if (parent_functions)
      for (const FunctionPtr& f : parent_functions->all()) reg_.define(*f);
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& at(const char* key) const {
    if (!j_.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    return j_.at(key);
  }

  std::string str(const char* key) const {
    const json& v = at(key);
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (!v.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
  }

  std::string str_or(const char* key, const std::string& fallback) const { return has(key) ? str(key) : fallback; }

  unsigned uint_or(const char* key, unsigned fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number_unsigned()) throw FormatError(std::string("field \"") + key + "\" must be a natural number");
    return v.get<unsigned>();
  }

  Formula formula(const char* key) const { return parse_formula(str(key), &reg_); }
  Term term(const char* key) const { return parse_term(str(key), &reg_); }
  Var var(const char* key, const char* fallback) const { return Var(str_or(key, fallback)); }
  Ordinal ordinal(const char* key) const { return parse_ordinal(str(key)); }

  std::vector<std::string> strings(const char* key) const {
    const json& v = at(key);
    if (!v.is_array()) throw FormatError(std::string("field \"") + key + "\" must be a list");
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) throw FormatError(std::string("field \"") + key + "\" must list strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  std::vector<Var> vars(const char* key) const {
    std::vector<Var> out;
    for (const std::string& s : strings(key)) out.emplace_back(s);
    return out;
  }

  std::vector<Term> terms(const char* key) const {
    std::vector<Term> out;
    for (const std::string& s : strings(key)) out.push_back(parse_term(s, &reg_));
    return out;
  }

  Reader child(const char* key) const { return Reader(at(key), &reg_); }

  games::Game game() const { return {formula("phi"), term("bound"), vars("moves")}; }

  games::Reduction2 reduction2() const {
    games::Reduction2 r;
    r.y = var("y", "y");
    r.w = vars("w");
    r.f = terms("f");
    r.g = term("g");
    return r;
  }

  const json& raw() const { return j_; }

 private:
  void define_functions(const json& list) {
    if (!list.is_array()) throw FormatError("\"functions\" must be a list");
    for (const json& entry : list) {
      Reader r(entry, &reg_);
      DefinedFunction f;
      f.name = r.str("name");
      f.params = r.vars("params");
      if (r.has("rec")) f.rec_var = Var(r.str("rec"));
      f.prev_var = r.var("prev", "prev");
      f.base = parse_term(r.str("base"), &reg_);
      f.step = r.has("step") ? parse_term(r.str("step"), &reg_) : constant(0);
      f.bound = parse_term(r.str("bound"), &reg_);
      reg_.define(std::move(f));
    }
  }

  json j_;
  FunctionRegistry reg_;
};

json names(const std::vector<Var>& vs) {
  json out = json::array();
  for (Var v : vs) out.push_back(v.name());
  return out;
}

json texts(const std::vector<Term>& ts) {
  json out = json::array();
  for (const Term& t : ts) out.push_back(to_text(t));
  return out;
}

// Defined functions reachable from the given terms, callees first.
void collect_functions(const Term& t, std::vector<FunctionPtr>& out) {
  for (const Term& a : t.args()) collect_functions(a, out);
  if (t.op() != Op::call) return;
  const FunctionPtr& f = t.function_ptr();
  for (const FunctionPtr& g : out)
    if (g->name == f->name) return;
  collect_functions(f->base, out);
  if (f->rec_var) collect_functions(f->step, out);
  collect_functions(f->bound, out);
  out.push_back(f);
}

void collect_functions(const Formula& f, std::vector<FunctionPtr>& out) {
  std::vector<Term> subterms;
  logic::collect_subterms(f, subterms);
  for (const Term& t : subterms) collect_functions(t, out);
}

json function_json(const DefinedFunction& f) {
  json j{{"name", f.name}, {"params", names(f.params)}, {"base", to_text(f.base)}, {"bound", to_text(f.bound)}};
  if (f.rec_var) {
    j["rec"] = f.rec_var->name();
    j["prev"] = f.prev_var.name();
    j["step"] = to_text(f.step);
  }
  return j;
}

std::string dump(json j, const std::vector<FunctionPtr>& functions) {
  if (!functions.empty()) {
    json fs = json::array();
    for (const FunctionPtr& f : functions) fs.push_back(function_json(*f));
    j["functions"] = fs;
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string document_kind(std::string_view text) { return Reader(text, "").str("kind"); }

Grid document_grid(std::string_view text, Grid base) {
  Reader r(text, "");
  if (!r.has("grid")) return base;
  Reader g = r.child("grid");
  if (g.has("max")) base.max = g.uint_or("max", 0);
  if (g.has("domain_bound")) base.domain_bound = g.uint_or("domain_bound", 0);
  if (g.has("code_bound")) base.code_bound = g.uint_or("code_bound", 0);
  if (g.has("ranges")) {
    const json& ranges = g.at("ranges");
    if (!ranges.is_object()) throw FormatError("\"ranges\" must map variables to bounds");
    for (const auto& [name, value] : ranges.items()) {
      if (!value.is_number_unsigned()) throw FormatError("range of " + name + " must be a natural number");
      base.ranges[name] = value.get<unsigned long long>();
    }
  }
  return base;
}

flow::OrdinalFlow read_ordinal_flow(std::string_view text) {
  Reader r(text, "ordinal-flow");
  flow::OrdinalFlow f;
  f.var = r.var("var", "gamma");
  f.H = r.formula("H");
  f.beta = r.ordinal("beta");
  f.source = r.formula("source");
  f.target = r.formula("target");
  return f;
}

flow::KFlow read_kflow(std::string_view text) {
  Reader r(text, "kflow");
  return flow::make_kflow(r.var("var", "u"), r.formula("H"), r.term("length"), r.uint_or("k", 1), r.formula("source"),
                          r.formula("target"));
}

search::LSProgram read_ls(std::string_view text) {
  Reader r(text, "ls");
  search::LSProgram p;
  p.inputs = r.vars("inputs");
  p.outputs = r.vars("outputs");
  p.state = r.vars("state");
  p.level = r.var("level", "gamma");
  p.A = r.formula("A");
  p.init = r.terms("init");
  p.G = r.formula("G");
  p.step = r.terms("step");
  p.clock = r.term("clock");
  p.project = r.terms("project");
  p.beta = r.ordinal("beta");
  return p;
}

search::PLS1Program read_pls1(std::string_view text) {
  Reader r(text, "pls1");
  search::PLS1Program p;
  p.inputs = r.vars("inputs");
  p.output = r.var("output", "y");
  p.level = r.var("level", "u");
  p.state = r.var("state", "z");
  p.A = r.formula("A");
  p.bound = r.term("bound");
  p.init = r.term("init");
  p.G = r.formula("G");
  p.step = r.term("step");
  p.project = r.term("project");
  p.length = r.term("length");
  p.out_bound = r.term("out_bound");
  p.k = r.uint_or("k", 1);
  return p;
}

search::PLS2Program read_pls2(std::string_view text) {
  Reader r(text, "pls2");
  search::PLS2Program p;
  p.inputs = r.vars("inputs");
  p.level = r.var("level", "u");
  p.first = r.var("first", "v");
  p.second = r.var("second", "w");
  p.G = r.formula("G");
  p.bound = r.term("bound");
  p.init = r.child("init").reduction2();
  p.step = r.child("step").reduction2();
  p.final = r.child("final").reduction2();
  p.length = r.term("length");
  p.answer = r.var("answer", "y");
  p.challenge = r.var("challenge", "z");
  p.A = r.formula("A");
  p.out_bound = r.term("out_bound");
  p.k = r.uint_or("k", 2);
  return p;
}

games::Game read_game(std::string_view text) { return Reader(text, "game").game(); }

Reduction1Document read_reduction1(std::string_view text) {
  Reader r(text, "reduction1");
  return {{r.var("y", "y"), r.term("f")}, r.child("target").game(), r.child("source").game()};
}

Reduction2Document read_reduction2(std::string_view text) {
  Reader r(text, "reduction2");
  return {r.reduction2(), r.child("target").game(), r.child("source").game()};
}

std::string write_ordinal_flow(const flow::OrdinalFlow& f) {
  std::vector<FunctionPtr> fs;
  for (const Formula* g : {&f.H, &f.source, &f.target}) collect_functions(*g, fs);
  return dump({{"kind", "ordinal-flow"},
               {"var", f.var.name()},
               {"H", to_text(f.H)},
               {"beta", print(f.beta)},
               {"source", to_text(f.source)},
               {"target", to_text(f.target)}},
              fs);
}

std::string write_kflow(const flow::KFlow& f) {
  std::vector<FunctionPtr> fs;
  for (const Formula* g : {&f.H, &f.source, &f.target}) collect_functions(*g, fs);
  collect_functions(f.length, fs);
  return dump({{"kind", "kflow"},
               {"var", f.var.name()},
               {"H", to_text(f.H)},
               {"length", to_text(f.length)},
               {"k", f.k},
               {"source", to_text(f.source)},
               {"target", to_text(f.target)}},
              fs);
}

std::string write_ls(const search::LSProgram& p) {
  std::vector<FunctionPtr> fs;
  collect_functions(p.A, fs);
  collect_functions(p.G, fs);
  for (const auto* ts : {&p.init, &p.step, &p.project})
    for (const Term& t : *ts) collect_functions(t, fs);
  collect_functions(p.clock, fs);
  return dump({{"kind", "ls"},
               {"inputs", names(p.inputs)},
               {"outputs", names(p.outputs)},
               {"state", names(p.state)},
               {"level", p.level.name()},
               {"A", to_text(p.A)},
               {"init", texts(p.init)},
               {"G", to_text(p.G)},
               {"step", texts(p.step)},
               {"clock", to_text(p.clock)},
               {"project", texts(p.project)},
               {"beta", print(p.beta)}},
              fs);
}

std::string write_function(const DefinedFunction& f) { return function_json(f).dump(2) + "\n"; }

}  // namespace ordflow::io
