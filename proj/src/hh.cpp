#include "lfhh/hh.hpp"

#include "lfhh/util.hpp"

namespace lfhh {

namespace {

template <class Node, class V>
std::shared_ptr<const Node> mk(V v) {
  return std::make_shared<const Node>(Node{std::move(v)});
}

}  // namespace

HHGoal HHGoal::atom(Atom a) { return HHGoal(mk<HHGoalNode>(GoalAtom{std::move(a)})); }
HHGoal HHGoal::truth() { return HHGoal(mk<HHGoalNode>(GoalTrue{})); }
HHGoal HHGoal::conj(HHGoal left, HHGoal right) {
  return HHGoal(mk<HHGoalNode>(GoalAnd{std::move(left), std::move(right)}));
}
HHGoal HHGoal::implies(HHClause hypothesis, HHGoal conclusion) {
  return HHGoal(mk<HHGoalNode>(GoalImplies{std::move(hypothesis), std::move(conclusion)}));
}
HHGoal HHGoal::forall_raw(Name hint, SimpleType type, HHGoal body) {
  return HHGoal(mk<HHGoalNode>(GoalForall{std::move(hint), std::move(type), std::move(body)}));
}
HHGoal HHGoal::forall(const Name& binder, SimpleType type, HHGoal body) {
  return forall_raw(binder, std::move(type), close_goal(body, binder));
}

HHClause HHClause::atom(Atom a) { return HHClause(mk<HHClauseNode>(ClauseAtom{std::move(a)})); }
HHClause HHClause::implies(HHGoal premise, HHClause head) {
  return HHClause(mk<HHClauseNode>(ClauseImplies{std::move(premise), std::move(head)}));
}
HHClause HHClause::forall_raw(Name hint, SimpleType type, HHClause body) {
  return HHClause(
      mk<HHClauseNode>(ClauseForall{std::move(hint), std::move(type), std::move(body)}));
}
HHClause HHClause::forall(const Name& binder, SimpleType type, HHClause body) {
  return forall_raw(binder, std::move(type), close_clause(body, binder));
}

bool alpha_equal(const Atom& a, const Atom& b) {
  if (a.is_hastype() != b.is_hastype()) return false;
  if (a.is_hastype()) {
    return alpha_equal(a.hastype().subject, b.hastype().subject) &&
           alpha_equal(a.hastype().type, b.hastype().type);
  }
  return alpha_equal(a.istype().type, b.istype().type);
}

bool alpha_equal(const HHGoal& a, const HHGoal& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const GoalAtom& x) {
            const auto* y = std::get_if<GoalAtom>(&b.node().v);
            return y && alpha_equal(x.atom, y->atom);
          },
          [&](const GoalTrue&) { return std::holds_alternative<GoalTrue>(b.node().v); },
          [&](const GoalAnd& x) {
            const auto* y = std::get_if<GoalAnd>(&b.node().v);
            return y && alpha_equal(x.left, y->left) && alpha_equal(x.right, y->right);
          },
          [&](const GoalImplies& x) {
            const auto* y = std::get_if<GoalImplies>(&b.node().v);
            return y && alpha_equal(x.hypothesis, y->hypothesis) &&
                   alpha_equal(x.conclusion, y->conclusion);
          },
          [&](const GoalForall& x) {
            const auto* y = std::get_if<GoalForall>(&b.node().v);
            return y && x.type == y->type && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

bool alpha_equal(const HHClause& a, const HHClause& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const ClauseAtom& x) {
            const auto* y = std::get_if<ClauseAtom>(&b.node().v);
            return y && alpha_equal(x.atom, y->atom);
          },
          [&](const ClauseImplies& x) {
            const auto* y = std::get_if<ClauseImplies>(&b.node().v);
            return y && alpha_equal(x.premise, y->premise) && alpha_equal(x.head, y->head);
          },
          [&](const ClauseForall& x) {
            const auto* y = std::get_if<ClauseForall>(&b.node().v);
            return y && x.type == y->type && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

// ---------------------------------------------------------------------------
// Bound-variable plumbing across the formula/term boundary

namespace {

// Substitute `r` for term-level Bound(depth) inside an STerm, where `depth`
// counts formula quantifiers already crossed.
STerm term_subst_bound(const STerm& t, int depth, const STerm& r) {
  return std::visit(
      Overloaded{
          [&](const StBound& n) { return n.index == depth ? r : t; },
          [&](const StApp& n) {
            return STerm::app_raw(term_subst_bound(n.fun, depth, r),
                                  term_subst_bound(n.arg, depth, r));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, term_subst_bound(n.body, depth + 1, r));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

Atom atom_subst_bound(const Atom& a, int depth, const STerm& r) {
  if (a.is_hastype()) {
    return Atom{HastypeAtom{term_subst_bound(a.hastype().subject, depth, r),
                            term_subst_bound(a.hastype().type, depth, r)}};
  }
  return Atom{IstypeAtom{term_subst_bound(a.istype().type, depth, r)}};
}

STerm term_close(const STerm& t, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const StVar& n) { return n.name == var ? STerm::bound(depth) : t; },
          [&](const StApp& n) {
            return STerm::app_raw(term_close(n.fun, var, depth), term_close(n.arg, var, depth));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, term_close(n.body, var, depth + 1));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

Atom atom_close(const Atom& a, const Name& var, int depth) {
  if (a.is_hastype()) {
    return Atom{HastypeAtom{term_close(a.hastype().subject, var, depth),
                            term_close(a.hastype().type, var, depth)}};
  }
  return Atom{IstypeAtom{term_close(a.istype().type, var, depth)}};
}

HHGoal goal_subst_bound(const HHGoal& g, int depth, const STerm& r);
HHClause clause_subst_bound(const HHClause& c, int depth, const STerm& r);

HHGoal goal_subst_bound(const HHGoal& g, int depth, const STerm& r) {
  return std::visit(
      Overloaded{
          [&](const GoalAtom& n) { return HHGoal::atom(atom_subst_bound(n.atom, depth, r)); },
          [&](const GoalTrue&) { return g; },
          [&](const GoalAnd& n) {
            return HHGoal::conj(goal_subst_bound(n.left, depth, r),
                                goal_subst_bound(n.right, depth, r));
          },
          [&](const GoalImplies& n) {
            return HHGoal::implies(clause_subst_bound(n.hypothesis, depth, r),
                                   goal_subst_bound(n.conclusion, depth, r));
          },
          [&](const GoalForall& n) {
            return HHGoal::forall_raw(n.hint, n.type, goal_subst_bound(n.body, depth + 1, r));
          },
      },
      g.node().v);
}

HHClause clause_subst_bound(const HHClause& c, int depth, const STerm& r) {
  return std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { return HHClause::atom(atom_subst_bound(n.atom, depth, r)); },
          [&](const ClauseImplies& n) {
            return HHClause::implies(goal_subst_bound(n.premise, depth, r),
                                     clause_subst_bound(n.head, depth, r));
          },
          [&](const ClauseForall& n) {
            return HHClause::forall_raw(n.hint, n.type,
                                        clause_subst_bound(n.body, depth + 1, r));
          },
      },
      c.node().v);
}

HHGoal goal_close_rec(const HHGoal& g, const Name& var, int depth);
HHClause clause_close_rec(const HHClause& c, const Name& var, int depth);

HHGoal goal_close_rec(const HHGoal& g, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const GoalAtom& n) { return HHGoal::atom(atom_close(n.atom, var, depth)); },
          [&](const GoalTrue&) { return g; },
          [&](const GoalAnd& n) {
            return HHGoal::conj(goal_close_rec(n.left, var, depth),
                                goal_close_rec(n.right, var, depth));
          },
          [&](const GoalImplies& n) {
            return HHGoal::implies(clause_close_rec(n.hypothesis, var, depth),
                                   goal_close_rec(n.conclusion, var, depth));
          },
          [&](const GoalForall& n) {
            return HHGoal::forall_raw(n.hint, n.type, goal_close_rec(n.body, var, depth + 1));
          },
      },
      g.node().v);
}

HHClause clause_close_rec(const HHClause& c, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { return HHClause::atom(atom_close(n.atom, var, depth)); },
          [&](const ClauseImplies& n) {
            return HHClause::implies(goal_close_rec(n.premise, var, depth),
                                     clause_close_rec(n.head, var, depth));
          },
          [&](const ClauseForall& n) {
            return HHClause::forall_raw(n.hint, n.type,
                                        clause_close_rec(n.body, var, depth + 1));
          },
      },
      c.node().v);
}

}  // namespace

HHGoal open_goal(const HHGoal& body, const STerm& replacement) {
  return goal_subst_bound(body, 0, replacement);
}
HHClause open_clause(const HHClause& body, const STerm& replacement) {
  return clause_subst_bound(body, 0, replacement);
}
HHGoal close_goal(const HHGoal& g, const Name& var) { return goal_close_rec(g, var, 0); }
HHClause close_clause(const HHClause& c, const Name& var) { return clause_close_rec(c, var, 0); }

Atom atom_subst_metas(const Atom& a, const std::map<Name, STerm>& values) {
  if (a.is_hastype()) {
    return Atom{HastypeAtom{st_subst_metas(a.hastype().subject, values),
                            st_subst_metas(a.hastype().type, values)}};
  }
  return Atom{IstypeAtom{st_subst_metas(a.istype().type, values)}};
}

HHGoal goal_subst_metas(const HHGoal& g, const std::map<Name, STerm>& values) {
  return std::visit(
      Overloaded{
          [&](const GoalAtom& n) { return HHGoal::atom(atom_subst_metas(n.atom, values)); },
          [&](const GoalTrue&) { return g; },
          [&](const GoalAnd& n) {
            return HHGoal::conj(goal_subst_metas(n.left, values),
                                goal_subst_metas(n.right, values));
          },
          [&](const GoalImplies& n) {
            return HHGoal::implies(clause_subst_metas(n.hypothesis, values),
                                   goal_subst_metas(n.conclusion, values));
          },
          [&](const GoalForall& n) {
            return HHGoal::forall_raw(n.hint, n.type, goal_subst_metas(n.body, values));
          },
      },
      g.node().v);
}

HHClause clause_subst_metas(const HHClause& c, const std::map<Name, STerm>& values) {
  return std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { return HHClause::atom(atom_subst_metas(n.atom, values)); },
          [&](const ClauseImplies& n) {
            return HHClause::implies(goal_subst_metas(n.premise, values),
                                     clause_subst_metas(n.head, values));
          },
          [&](const ClauseForall& n) {
            return HHClause::forall_raw(n.hint, n.type, clause_subst_metas(n.body, values));
          },
      },
      c.node().v);
}

namespace {

void atom_metas(const Atom& a, NameSet& out) {
  if (a.is_hastype()) {
    for (const auto& m : st_meta_names(a.hastype().subject)) out.insert(m);
    for (const auto& m : st_meta_names(a.hastype().type)) out.insert(m);
  } else {
    for (const auto& m : st_meta_names(a.istype().type)) out.insert(m);
  }
}

void goal_metas(const HHGoal& g, NameSet& out);
void clause_metas(const HHClause& c, NameSet& out);

void goal_metas(const HHGoal& g, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const GoalAtom& n) { atom_metas(n.atom, out); },
          [&](const GoalTrue&) {},
          [&](const GoalAnd& n) {
            goal_metas(n.left, out);
            goal_metas(n.right, out);
          },
          [&](const GoalImplies& n) {
            clause_metas(n.hypothesis, out);
            goal_metas(n.conclusion, out);
          },
          [&](const GoalForall& n) { goal_metas(n.body, out); },
      },
      g.node().v);
}

void clause_metas(const HHClause& c, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { atom_metas(n.atom, out); },
          [&](const ClauseImplies& n) {
            goal_metas(n.premise, out);
            clause_metas(n.head, out);
          },
          [&](const ClauseForall& n) { clause_metas(n.body, out); },
      },
      c.node().v);
}

}  // namespace

NameSet goal_meta_names(const HHGoal& g) {
  NameSet out;
  goal_metas(g, out);
  return out;
}

const Atom& clause_head(const HHClause& c) {
  const HHClause* cur = &c;
  for (;;) {
    if (const auto* f = std::get_if<ClauseForall>(&cur->node().v)) {
      cur = &f->body;
    } else if (const auto* i = std::get_if<ClauseImplies>(&cur->node().v)) {
      cur = &i->head;
    } else {
      return std::get<ClauseAtom>(cur->node().v).atom;
    }
  }
}

}  // namespace lfhh
