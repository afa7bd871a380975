#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "lfhh/simple.hpp"

namespace lfhh {

// Hereditary Harrop goals and program clauses over `istype`/`hastype` atoms.
// Goal fragment: atoms, conjunction, implication (clause premise), universal
// quantification, truth. Clause fragment: atoms, implication (goal premise),
// universal quantification. Quantifiers bind simply typed term variables; the
// de Bruijn indices inside atom terms count both λ-binders and quantifiers.

struct HastypeAtom {
  STerm subject;  // type tm or a function type ending in tm
  STerm type;     // type ty
};
struct IstypeAtom {
  STerm type;  // type ty
};

struct Atom {
  std::variant<HastypeAtom, IstypeAtom> v;

  bool is_hastype() const { return std::holds_alternative<HastypeAtom>(v); }
  const HastypeAtom& hastype() const { return std::get<HastypeAtom>(v); }
  const IstypeAtom& istype() const { return std::get<IstypeAtom>(v); }
};

bool alpha_equal(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return alpha_equal(a, b); }

class HHGoal;
class HHClause;
struct HHGoalNode;
struct HHClauseNode;

class HHGoal {
 public:
  static HHGoal atom(Atom a);
  static HHGoal truth();
  static HHGoal conj(HHGoal left, HHGoal right);
  static HHGoal implies(HHClause hypothesis, HHGoal conclusion);
  // forall binder:type. body, abstracting the free term variable `binder`.
  static HHGoal forall(const Name& binder, SimpleType type, HHGoal body);
  static HHGoal forall_raw(Name hint, SimpleType type, HHGoal body);

  const HHGoalNode& node() const { return *node_; }

 private:
  explicit HHGoal(std::shared_ptr<const HHGoalNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const HHGoalNode> node_;
};

class HHClause {
 public:
  static HHClause atom(Atom a);
  static HHClause implies(HHGoal premise, HHClause head);
  static HHClause forall(const Name& binder, SimpleType type, HHClause body);
  static HHClause forall_raw(Name hint, SimpleType type, HHClause body);

  const HHClauseNode& node() const { return *node_; }

 private:
  explicit HHClause(std::shared_ptr<const HHClauseNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const HHClauseNode> node_;
};

struct GoalAtom {
  Atom atom;
};
struct GoalTrue {};
struct GoalAnd {
  HHGoal left, right;
};
struct GoalImplies {
  HHClause hypothesis;
  HHGoal conclusion;
};
struct GoalForall {
  Name hint;
  SimpleType type;
  HHGoal body;
};
struct HHGoalNode {
  std::variant<GoalAtom, GoalTrue, GoalAnd, GoalImplies, GoalForall> v;
};

struct ClauseAtom {
  Atom atom;
};
struct ClauseImplies {
  HHGoal premise;
  HHClause head;
};
struct ClauseForall {
  Name hint;
  SimpleType type;
  HHClause body;
};
struct HHClauseNode {
  std::variant<ClauseAtom, ClauseImplies, ClauseForall> v;
};

struct HHProgram {
  std::vector<HHClause> clauses;
};

bool alpha_equal(const HHGoal& a, const HHGoal& b);
bool alpha_equal(const HHClause& a, const HHClause& b);
inline bool operator==(const HHGoal& a, const HHGoal& b) { return alpha_equal(a, b); }
inline bool operator==(const HHClause& a, const HHClause& b) { return alpha_equal(a, b); }

// Replace the outermost quantifier's variable with a locally closed term.
HHGoal open_goal(const HHGoal& body, const STerm& replacement);
HHClause open_clause(const HHClause& body, const STerm& replacement);
HHGoal close_goal(const HHGoal& g, const Name& var);
HHClause close_clause(const HHClause& c, const Name& var);

// Substitution of metavariables throughout atoms.
Atom atom_subst_metas(const Atom& a, const std::map<Name, STerm>& values);
HHGoal goal_subst_metas(const HHGoal& g, const std::map<Name, STerm>& values);
HHClause clause_subst_metas(const HHClause& c, const std::map<Name, STerm>& values);

NameSet goal_meta_names(const HHGoal& g);

// The clause head reached by stripping quantifiers and premises.
const Atom& clause_head(const HHClause& c);

}  // namespace lfhh
