// ordflow: ordinal calculator and checker front end.
//
// Exit codes: 0 valid or success, 1 counterexample or violation (reported on
// stdout), 2 usage, parse or input errors (reported on stderr).

#include "ordflow/error.hpp"
#include "ordflow/flow/kflow.hpp"
#include "ordflow/flow/ordinal_flow.hpp"
#include "ordflow/games/games.hpp"
#include "ordflow/io/documents.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"
#include "ordflow/ordinal.hpp"
#include "ordflow/search/ls.hpp"
#include "ordflow/search/pls.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace ordflow;
using json = nlohmann::json;

namespace {

struct Options {
  std::optional<std::uint64_t> grid_max;
  std::optional<std::uint64_t> domain_bound;
  std::optional<std::uint64_t> code_bound;
  std::uint64_t seed = 0;
  bool trace = false;
  std::string format = "text";

  bool machine() const { return format == "machine"; }
};

json number(const Natural& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return to_u64(n);
  return to_string(n);
}

json numbers(const std::vector<Natural>& ns) {
  json out = json::array();
  for (const Natural& n : ns) out.push_back(number(n));
  return out;
}

std::string joined(const std::vector<Natural>& ns) {
  std::string s;
  for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? ", " : "") + to_string(ns[i]);
  return s;
}

// Command-line bounds win over the document's grid block, which wins over
// the defaults.
Grid grid_for(const Options& opt, const std::string& text) {
  Grid g = io::document_grid(text, Grid{});
  if (opt.grid_max) g.max = *opt.grid_max;
  if (opt.domain_bound) g.domain_bound = *opt.domain_bound;
  if (opt.code_bound) g.code_bound = *opt.code_bound;
  return g;
}

std::string grid_header(const Options& opt, const Grid& g) {
  std::string s = "grid max=" + to_string(g.max) + " domain-bound=" + to_string(g.domain_bound) +
                  " code-bound=" + to_string(g.code_bound);
  for (const auto& [name, bound] : g.ranges) s += " " + name + "<=" + to_string(bound);
  return s + " seed=" + std::to_string(opt.seed);
}

json counterexample_json(const Counterexample& c) {
  json j{{"condition", c.condition}};
  json env = json::object();
  for (const auto& [name, value] : c.env) env[name] = number(value);
  j["env"] = env;
  if (c.ordinal) j["stage"] = print(*c.ordinal);
  if (c.step) j["step"] = number(*c.step);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

int report(const Options& opt, const std::string& command, const Grid& grid, const FlowVerdict& v) {
  if (opt.machine()) {
    json j{{"command", command}, {"seed", opt.seed}, {"valid", v.valid}, {"exact", v.exact}, {"points", v.points}};
    if (v.counterexample) j["counterexample"] = counterexample_json(*v.counterexample);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << grid_header(opt, grid) << "\n";
    if (v.valid)
      std::cout << "valid (" << (v.exact ? "exact" : "inexact") << ", " << v.points << " points)\n";
    else
      std::cout << "counterexample: " << v.counterexample->describe() << "\n";
  }
  return v.valid ? 0 : 1;
}

int report_counterexample(const Options& opt, const std::string& command, const CounterexampleError& e) {
  if (opt.machine())
    std::cout << json{{"command", command}, {"valid", false}, {"counterexample", counterexample_json(e.counterexample())}}
                     .dump()
              << "\n";
  else
    std::cout << e.what() << "\n";
  return 1;
}

// Values are either all positional, in the order of `order`, or all name=value.
std::vector<Natural> input_values(const std::vector<std::string>& args, const std::vector<logic::Var>& order) {
  if (args.size() != order.size())
    throw ArityError("expected " + std::to_string(order.size()) + " input values, got " + std::to_string(args.size()));
  std::vector<Natural> out(order.size());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const auto eq = a.find('=');
    if (eq == std::string::npos) {
      out[i] = parse_natural(a);
      seen[i] = true;
      continue;
    }
    const std::string name = a.substr(0, eq);
    std::size_t k = 0;
    while (k < order.size() && order[k].name() != name) ++k;
    if (k == order.size()) throw ArityError("unknown input " + name);
    if (seen[k]) throw ArityError("input " + name + " given twice");
    out[k] = parse_natural(std::string_view(a).substr(eq + 1));
    seen[k] = true;
  }
  return out;
}

logic::Env bind_inputs(const std::vector<logic::Var>& vars, const std::vector<Natural>& values) {
  logic::Env env;
  for (std::size_t i = 0; i < vars.size(); ++i) env.set(vars[i], values[i]);
  return env;
}

// --- ord ---------------------------------------------------------------------

int ord_eval(const Options& opt, const std::string& expr) {
  const Ordinal a = eval_ordinal_expression(expr);
  if (opt.machine()) {
    std::cout << json{{"command", "ord eval"}, {"value", print(a)}, {"code", number(encode(a))}}.dump() << "\n";
    return 0;
  }
  std::cout << print(a) << "\n";
  if (opt.trace) std::cout << "code " << encode(a) << "\n";
  return 0;
}

int ord_cmp(const Options& opt, const std::string& lhs, const std::string& rhs) {
  const Ordering o = compare(eval_ordinal_expression(lhs), eval_ordinal_expression(rhs));
  if (opt.machine())
    std::cout << json{{"command", "ord cmp"}, {"result", to_string(o)}}.dump() << "\n";
  else
    std::cout << to_string(o) << "\n";
  return 0;
}

// --- flow --------------------------------------------------------------------

int flow_check(const Options& opt, const std::string& path) {
  const std::string text = io::read_file(path);
  const Grid grid = grid_for(opt, text);
  const std::string kind = io::document_kind(text);
  if (kind == "ordinal-flow") return report(opt, "flow check", grid, flow::check_ordinal_flow(io::read_ordinal_flow(text), grid));
  if (kind == "kflow") return report(opt, "flow check", grid, flow::check_kflow(io::read_kflow(text), grid));
  if (kind == "ls") return report(opt, "flow check", grid, flow::check_ordinal_flow(search::ls_to_flow(io::read_ls(text)), grid));
  throw FormatError("flow check expects an ordinal-flow, kflow or ls document, got " + kind);
}

int flow_glue(const Options& opt, const std::string& first, const std::string& second) {
  const std::string a = io::read_file(first);
  const std::string b = io::read_file(second);
  const Grid grid = grid_for(opt, a);
  const std::string kind = io::document_kind(a);
  if (io::document_kind(b) != kind) throw FormatError("cannot glue a " + kind + " to a " + io::document_kind(b));
  std::string out;
  try {
    if (kind == "ordinal-flow")
      out = io::write_ordinal_flow(flow::glue_seq_ordinal(io::read_ordinal_flow(a), io::read_ordinal_flow(b), grid));
    else if (kind == "kflow")
      out = io::write_kflow(flow::glue_seq_k(io::read_kflow(a), io::read_kflow(b), grid));
    else
      throw FormatError("flow glue expects ordinal-flow or kflow documents, got " + kind);
  } catch (const EndpointMismatch& e) {
    return report_counterexample(opt, "flow glue", e);
  }
  if (opt.machine())
    std::cout << json{{"command", "flow glue"}, {"flow", json::parse(out)}}.dump() << "\n";
  else
    std::cout << out;
  return 0;
}

// --- ls ----------------------------------------------------------------------

int ls_run(const Options& opt, const std::string& path, const std::vector<std::string>& args) {
  const search::LSProgram p = io::read_ls(io::read_file(path));
  const std::vector<Natural> inputs = input_values(args, p.inputs);
  const search::DescentTrace t = search::run_ls(p, inputs);
  if (opt.machine()) {
    json j{{"command", "ls run"}, {"success", t.success}, {"steps", t.steps.size()}};
    if (opt.trace) {
      json steps = json::array();
      for (const search::DescentStep& s : t.steps) steps.push_back({{"level", print(s.level)}, {"state", numbers(s.state)}});
      j["trace"] = steps;
    }
    if (t.success)
      j["output"] = numbers(t.output);
    else
      j["violation"] = {{"condition", t.violation}, {"step", t.at}, {"detail", t.detail}};
    std::cout << j.dump() << "\n";
    return t.success ? 0 : 1;
  }
  if (opt.trace)
    for (std::size_t i = 0; i < t.steps.size(); ++i)
      std::cout << "step " << i << ": level " << print(t.steps[i].level) << ", state (" << joined(t.steps[i].state)
                << ")\n";
  if (t.success) {
    std::cout << "output (" << joined(t.output) << ") after " << t.steps.size() << " steps\n";
    return 0;
  }
  std::cout << "violation: " << t.violation << " at step " << t.at;
  if (!t.detail.empty()) std::cout << " (" << t.detail << ")";
  std::cout << "\n";
  return 1;
}

int ls_validate(const Options& opt, const std::string& path) {
  const std::string text = io::read_file(path);
  const Grid grid = grid_for(opt, text);
  const search::LSProgram p = io::read_ls(text);
  search::require_well_formed(p);
  return report(opt, "ls validate", grid, search::validate_ls(p, grid));
}

// --- pls ---------------------------------------------------------------------

int pls1_run(const Options& opt, const search::PLS1Program& p, const std::vector<Natural>& inputs) {
  const search::PLS1Trace t = search::run_pls1(p, inputs);
  if (opt.machine()) {
    json j{{"command", "pls run"}, {"success", t.success}, {"levels", t.states.size()}};
    if (opt.trace) j["trace"] = numbers(t.states);
    if (t.success)
      j["output"] = number(t.output);
    else
      j["violation"] = {{"condition", t.violation}, {"level", number(t.at)}, {"detail", t.detail}};
    std::cout << j.dump() << "\n";
    return t.success ? 0 : 1;
  }
  if (opt.trace)
    for (std::size_t i = 0; i < t.states.size(); ++i) std::cout << "level " << i << ": state " << t.states[i] << "\n";
  if (t.success) {
    std::cout << "output " << t.output << "\n";
    return 0;
  }
  std::cout << "violation: " << t.violation << " at level " << t.at;
  if (!t.detail.empty()) std::cout << " (" << t.detail << ")";
  std::cout << "\n";
  return 1;
}

int pls2_run(const Options& opt, const search::PLS2Program& p, const std::vector<Natural>& inputs) {
  const search::PLS2Trace t = search::run_pls2(p, inputs);
  if (opt.machine()) {
    json j{{"command", "pls run"}, {"success", t.success}, {"rounds", t.rounds.size()}};
    if (opt.trace) {
      json rounds = json::array();
      for (const search::PLS2Round& r : t.rounds) {
        json rj{{"stage", r.stage}, {"proposals", numbers(r.proposals)}, {"answers", numbers(r.answers)}};
        if (r.accepted) rj["accepted"] = number(*r.accepted);
        rounds.push_back(rj);
      }
      j["trace"] = rounds;
    }
    if (t.success)
      j["output"] = number(t.output);
    else
      j["violation"] = {{"condition", t.violation}, {"detail", t.detail}};
    std::cout << j.dump() << "\n";
    return t.success ? 0 : 1;
  }
  if (opt.trace)
    for (const search::PLS2Round& r : t.rounds) {
      std::cout << r.stage << ": proposals (" << joined(r.proposals) << "), answers (" << joined(r.answers) << ")";
      if (r.accepted) std::cout << ", accepted " << *r.accepted;
      std::cout << "\n";
    }
  if (t.success) {
    std::cout << "output " << t.output << "\n";
    return 0;
  }
  std::cout << "violation: " << t.violation;
  if (!t.rounds.empty()) std::cout << " at " << t.rounds.back().stage;
  if (!t.detail.empty()) std::cout << " (" << t.detail << ")";
  std::cout << "\n";
  return 1;
}

int pls_run(const Options& opt, const std::string& path, const std::vector<std::string>& args) {
  const std::string text = io::read_file(path);
  const std::string kind = io::document_kind(text);
  if (kind == "pls1") {
    const search::PLS1Program p = io::read_pls1(text);
    return pls1_run(opt, p, input_values(args, p.inputs));
  }
  if (kind == "pls2") {
    const search::PLS2Program p = io::read_pls2(text);
    return pls2_run(opt, p, input_values(args, p.inputs));
  }
  throw FormatError("pls run expects a pls1 or pls2 document, got " + kind);
}

int pls_validate(const Options& opt, const std::string& path) {
  const std::string text = io::read_file(path);
  const Grid grid = grid_for(opt, text);
  const std::string kind = io::document_kind(text);
  if (kind == "pls1") {
    const search::PLS1Program p = io::read_pls1(text);
    search::require_well_formed(p);
    return report(opt, "pls validate", grid, search::validate_pls1(p, grid));
  }
  if (kind == "pls2") {
    const search::PLS2Program p = io::read_pls2(text);
    search::require_well_formed(p);
    return report(opt, "pls validate", grid, search::validate_pls2(p, grid));
  }
  throw FormatError("pls validate expects a pls1 or pls2 document, got " + kind);
}

int pls_compile(const Options& opt, const std::string& path, const std::string& name,
                std::optional<std::uint64_t> check_upto) {
  const search::PLS1Program p = io::read_pls1(io::read_file(path));
  const search::CompiledPLS1 c = search::compile_pls1(p, name);

  // Compare the compiled function with the program run on every input tuple
  // with entries <= check_upto.
  std::optional<std::vector<Natural>> mismatch;
  std::uint64_t checked = 0;
  if (check_upto) {
    std::vector<Natural> xs(p.inputs.size(), 0);
    for (bool more = true; more && !mismatch;) {
      const search::PLS1Trace t = search::run_pls1(p, xs);
      ++checked;
      if (!t.success || logic::apply_function(*c.f, xs) != t.output) mismatch = xs;
      more = false;
      for (std::size_t i = 0; i < xs.size() && !more; ++i) {
        if (xs[i] < *check_upto) {
          ++xs[i];
          more = true;
        } else {
          xs[i] = 0;
        }
      }
    }
  }

  if (opt.machine()) {
    json j{{"command", "pls compile"},
           {"functions", json::array({json::parse(io::write_function(*c.walk)), json::parse(io::write_function(*c.f))})}};
    if (check_upto) {
      j["checked"] = checked;
      j["agrees"] = !mismatch;
      if (mismatch) j["mismatch"] = numbers(*mismatch);
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << io::write_function(*c.walk) << io::write_function(*c.f);
    if (check_upto) {
      if (mismatch)
        std::cout << "disagrees with the program at (" << joined(*mismatch) << ")\n";
      else
        std::cout << "agrees with the program on " << checked << " inputs\n";
    }
  }
  return mismatch ? 1 : 0;
}

// --- game --------------------------------------------------------------------

int game_strategy(const Options& opt, const std::string& path, const std::vector<std::string>& args) {
  const games::Game g = io::read_game(io::read_file(path));
  games::require_well_formed(g);
  const std::vector<logic::Var> params = canonical_order(g.params());
  const std::vector<Natural> values = input_values(args, params);
  const bool wins = games::has_winning_strategy(g, bind_inputs(params, values));
  if (opt.machine())
    std::cout << json{{"command", "game strategy"}, {"first_player_wins", wins}}.dump() << "\n";
  else
    std::cout << (wins ? "first player wins" : "first player has no winning strategy") << "\n";
  return 0;
}

int game_check_reduction(const Options& opt, const std::string& path) {
  const std::string text = io::read_file(path);
  const Grid grid = grid_for(opt, text);
  const std::string kind = io::document_kind(text);
  if (kind == "reduction1") {
    const io::Reduction1Document d = io::read_reduction1(text);
    games::require_well_formed(d.target);
    games::require_well_formed(d.source);
    return report(opt, "game check-reduction", grid, games::check_reduction1(d.reduction, d.target, d.source, grid));
  }
  if (kind == "reduction2") {
    const io::Reduction2Document d = io::read_reduction2(text);
    games::require_well_formed(d.target);
    games::require_well_formed(d.source);
    return report(opt, "game check-reduction", grid, games::check_reduction2(d.reduction, d.target, d.source, grid));
  }
  throw FormatError("game check-reduction expects a reduction1 or reduction2 document, got " + kind);
}

// --- demo --------------------------------------------------------------------

struct SeparatorArgs {
  std::string b = "y = 0 and x = 2 * half(x)";
  std::string c = "z = 0 and not x = 2 * half(x)";
  std::string s = "1";
  std::string f = "1 - (x - 2 * half(x))";
  std::uint64_t from = 0;
  std::uint64_t to = 512;
};

int demo_separator(const Options& opt, const SeparatorArgs& a) {
  games::SeparatorReport r;
  try {
    r = games::separator_demo(logic::parse_formula(a.b), logic::parse_formula(a.c), logic::parse_term(a.s),
                              logic::parse_term(a.f), a.from, a.to);
  } catch (const NotDisjoint& e) {
    return report_counterexample(opt, "demo separator", e);
  }
  if (opt.machine()) {
    json j{{"command", "demo separator"},
           {"from", number(r.from)},
           {"to", number(r.to)},
           {"separates", r.separates},
           {"extraction_holds", r.extraction_holds}};
    if (r.witness) j["witness"] = number(*r.witness);
    if (!r.detail.empty()) j["detail"] = r.detail;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "range [" << r.from << ", " << r.to << "]\n";
    if (r.separates)
      std::cout << "separates\n";
    else
      std::cout << "does not separate at x=" << *r.witness << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    std::cout << "extraction " << (r.extraction_holds ? "holds" : "fails") << "\n";
  }
  return r.separates ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinal arithmetic, flows, local search programs and game reductions"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  app.add_option("--grid-max", opt.grid_max, "range of each free parameter on the check grid");
  app.add_option("--domain-bound", opt.domain_bound, "cut-off for unbounded quantifiers (default 16)")
      ->check(CLI::PositiveNumber);
  app.add_option("--code-bound", opt.code_bound, "largest ordinal code enumerated (default 200)");
  app.add_option("--seed", opt.seed, "seed recorded in the report header");
  app.add_flag("--trace", opt.trace, "print intermediate states");
  app.add_option("--format", opt.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  std::string file, file2, expr, expr2, fname = "f";
  std::vector<std::string> args;
  std::optional<std::uint64_t> check_upto;
  SeparatorArgs sep;
  std::function<int()> action;

  auto* ord = app.add_subcommand("ord", "ordinal calculator")->require_subcommand(1);
  auto* ord_e = ord->add_subcommand("eval", "normal form of an ordinal expression");
  ord_e->add_option("expr", expr)->required();
  ord_e->callback([&] { action = [&] { return ord_eval(opt, expr); }; });
  auto* ord_c = ord->add_subcommand("cmp", "compare two ordinal expressions");
  ord_c->add_option("lhs", expr)->required();
  ord_c->add_option("rhs", expr2)->required();
  ord_c->callback([&] { action = [&] { return ord_cmp(opt, expr, expr2); }; });

  auto* flow = app.add_subcommand("flow", "ordinal flows and k-flows")->require_subcommand(1);
  auto* flow_c = flow->add_subcommand("check", "check a flow on the grid");
  flow_c->add_option("file", file)->required();
  flow_c->callback([&] { action = [&] { return flow_check(opt, file); }; });
  auto* flow_g = flow->add_subcommand("glue", "glue two flows end to end");
  flow_g->add_option("first", file)->required();
  flow_g->add_option("second", file2)->required();
  flow_g->callback([&] { action = [&] { return flow_glue(opt, file, file2); }; });

  auto* ls = app.add_subcommand("ls", "ordinal local search programs")->require_subcommand(1);
  auto* ls_r = ls->add_subcommand("run", "run a program on inputs");
  ls_r->add_option("file", file)->required();
  ls_r->add_option("inputs", args, "values in input order, or name=value");
  ls_r->callback([&] { action = [&] { return ls_run(opt, file, args); }; });
  auto* ls_v = ls->add_subcommand("validate", "check the program conditions on the grid");
  ls_v->add_option("file", file)->required();
  ls_v->callback([&] { action = [&] { return ls_validate(opt, file); }; });

  auto* pls = app.add_subcommand("pls", "polynomial local search programs")->require_subcommand(1);
  auto* pls_r = pls->add_subcommand("run", "run a program on inputs");
  pls_r->add_option("file", file)->required();
  pls_r->add_option("inputs", args, "values in input order, or name=value");
  pls_r->callback([&] { action = [&] { return pls_run(opt, file, args); }; });
  auto* pls_v = pls->add_subcommand("validate", "check the program conditions on the grid");
  pls_v->add_option("file", file)->required();
  pls_v->callback([&] { action = [&] { return pls_validate(opt, file); }; });
  auto* pls_c = pls->add_subcommand("compile", "compile a one-output program to defined functions");
  pls_c->add_option("file", file)->required();
  pls_c->add_option("--name", fname, "name of the compiled function");
  pls_c->add_option("--check-upto", check_upto, "compare with the program on inputs up to N");
  pls_c->callback([&] { action = [&] { return pls_compile(opt, file, fname, check_upto); }; });

  auto* game = app.add_subcommand("game", "games and reductions")->require_subcommand(1);
  auto* game_s = game->add_subcommand("strategy", "decide whether the first player wins");
  game_s->add_option("file", file)->required();
  game_s->add_option("params", args, "parameter values by name order, or name=value");
  game_s->callback([&] { action = [&] { return game_strategy(opt, file, args); }; });
  auto* game_r = game->add_subcommand("check-reduction", "check a reduction on the grid");
  game_r->add_option("file", file)->required();
  game_r->callback([&] { action = [&] { return game_check_reduction(opt, file); }; });

  auto* demo = app.add_subcommand("demo", "demonstrations")->require_subcommand(1);
  auto* demo_s = demo->add_subcommand("separator", "separator extracted from a deterministic reduction");
  demo_s->add_option("--b", sep.b, "formula B(x, y)");
  demo_s->add_option("--c", sep.c, "formula C(x, z)");
  demo_s->add_option("--s", sep.s, "move bound s(x)");
  demo_s->add_option("--f", sep.f, "first move f(x, w0, w1)");
  demo_s->add_option("--from", sep.from);
  demo_s->add_option("--to", sep.to);
  demo_s->callback([&] { action = [&] { return demo_separator(opt, sep); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    return action();
  } catch (const CounterexampleError& e) {
    std::cout << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
