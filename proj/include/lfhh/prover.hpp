#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfhh/hh.hpp"

namespace lfhh {

// Depth-bounded uniform proof search. Right rules decompose the goal (And
// splits, Implies extends the program, Forall introduces an eigenvariable);
// atomic goals backchain on clauses in program order with full chronological
// backtracking. Unification is higher-order pattern unification modulo βη.
// The depth bound counts backchain nesting: a backchain consumes one unit and
// proves its premises at depth - 1; intro steps are free.

struct NonPatternProblem {
  STerm lhs;
  STerm rhs;
  std::string note;
};

// Idempotent map from metavariable names to β-normal terms; the range never
// mentions a mapped metavariable.
using MetaSubstitution = std::map<Name, STerm>;

struct ProofTrace {
  enum class Step { kTrue, kAndSplit, kImpliesIntro, kForallIntro, kBackchain };
  Step step = Step::kTrue;

  std::optional<HHClause> added_clause;  // kImpliesIntro
  Name eigen;                            // kForallIntro
  std::optional<SimpleType> eigen_type;  // kForallIntro

  int clause_index = -1;                          // kBackchain
  std::vector<std::pair<Name, STerm>> unifier;    // per stripped quantifier
  std::vector<HHGoal> residual;                   // instantiated premises

  std::vector<ProofTrace> children;
};

struct SolveResult {
  enum class Status { kProved, kExhausted, kFailedNoProof, kIncomplete };
  Status status = Status::kFailedNoProof;
  std::optional<ProofTrace> trace;               // kProved
  int depth = 0;                                 // bound the search ran under
  std::optional<NonPatternProblem> non_pattern;  // kIncomplete

  bool proved() const { return status == Status::kProved; }
};

const char* solve_status_name(SolveResult::Status s);

// Depth-first search for the goal under the program at the given bound.
// kFailedNoProof is returned only when the search space was exhausted without
// the bound ever blocking a backchain and without any non-pattern problem.
SolveResult solve(const HHProgram& program, const HHGoal& goal, int depth);

// Depths 1..max_depth; stops early on kProved and on kFailedNoProof.
SolveResult solve_iterative(const HHProgram& program, const HHGoal& goal, int max_depth);

struct UnifyOutcome {
  enum class Status { kUnifier, kClash, kNonPattern };
  Status status = Status::kClash;
  MetaSubstitution unifier;
  std::optional<NonPatternProblem> problem;
};

// Most general unifier of two β-normal terms of the same simple type within
// the higher-order pattern fragment modulo βη. Eigenvariables are listed
// outermost first; metavariables occurring in the inputs are treated as
// created after all of them.
UnifyOutcome pattern_unify(const STerm& a, const STerm& b,
                           const std::vector<std::pair<Name, SimpleType>>& eigenvars);

// Independent check of a Proved trace: re-walks goal and trace, verifying
// clause lookups, instantiation types and eigenvariable scoping, and
// normal-form equality of clause head and goal atom at every backchain. No
// unification is involved.
bool replay_trace(const HHProgram& program, const HHGoal& goal, const ProofTrace& trace);

}  // namespace lfhh
