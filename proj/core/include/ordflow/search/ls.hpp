#pragma once

#include "ordflow/flow/ordinal_flow.hpp"
#include "ordflow/grid.hpp"
#include "ordflow/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ordflow::search {

using logic::Env;
using logic::Formula;
using logic::Term;
using logic::Var;

// Ordinal local search: start at level beta with state init(x), keep the
// invariant G(level, x, z) while stepping to level clock(level, x, z) with
// state step(level, x, z), and at level 0 output project(x, z) satisfying A.
struct LSProgram {
  std::vector<Var> inputs;
  std::vector<Var> outputs;  // the y of A(x, y)
  std::vector<Var> state;
  Var level{"gamma"};
  Formula A;
  std::vector<Term> init;
  Formula G;
  std::vector<Term> step;
  Term clock;
  std::vector<Term> project;
  Ordinal beta;
};

// Throws InvalidProgram on arity mismatches, quantified A or G, or variables
// out of scope.
void require_well_formed(const LSProgram& p);

struct DescentStep {
  Ordinal level;
  std::vector<Natural> state;
};

struct DescentTrace {
  std::vector<DescentStep> steps;
  bool success = false;
  std::vector<Natural> output;  // on success
  // On failure: "init", "invariant", "non_descent" or "output", and the
  // index of the step where it happened.
  std::string violation;
  std::size_t at = 0;
  std::string detail;
};

DescentTrace run_ls(const LSProgram& p, const std::vector<Natural>& inputs, std::size_t max_steps = 1000000);

// The four conditions, checked in this order with these names:
//   "init"     G(beta, x, init(x))
//   "descent"  level != 0 -> clock < level
//   "step"     level != 0 and G(level, x, z) -> G(clock, x, step)
//   "output"   G(0, x, z) -> A(x, project(x, z))
// Levels range over the valid codes <= grid.code_bound whose ordinal is at
// most beta (plus beta); inputs and states over the grid. Inexact when a level
// up to beta was skipped.
FlowVerdict validate_ls(const LSProgram& p, const Grid& grid);

// 1-based position of a validation condition in the list above, 0 if unknown.
int ls_condition_index(const std::string& condition);

// The flow H(level, x) = (forall z. not G) and (forall y. not A) of length
// beta, from forall y. not A to false.
flow::OrdinalFlow ls_to_flow(const LSProgram& p);

// Witness terms for flow_to_ls. With I the quantifier-free matrix of the
// flow's step formula over the prenex variables zs:
//   not A(x, Y(x, zs)) -> I(0, x, zs)
//   not I(beta, x, W(x))
//   not I(d, x, zs) -> Delta < d and not I(Delta, x, Z)   for 1 <= d <= beta
struct LSWitnesses {
  std::vector<Term> Y;
  std::vector<Term> W;
  Term Delta;
  std::vector<Term> Z;
};

struct FlowToLS {
  LSProgram program;
  LSWitnesses witnesses;
  std::vector<Var> matrix_vars;  // zs
  Formula matrix;                // I
};

// Reads the flow as a local search program. The source must be
// forall ys. not A with A quantifier-free, and the target false on the grid
// (ShapeViolation otherwise). Missing witnesses are searched among small
// candidate terms and verified on the grid; WitnessSearchFailed names the
// one that could not be found.
FlowToLS flow_to_ls(const flow::OrdinalFlow& f, const Grid& grid, const std::optional<LSWitnesses>& given = {});

}  // namespace ordflow::search
