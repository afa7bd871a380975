#include "lfhh/printer.hpp"

#include <sstream>

#include "lfhh/util.hpp"

namespace lfhh {

// ---------------------------------------------------------------------------
// Simple types

namespace {

void put_simple_type(std::ostream& os, const SimpleType& t, bool dom_position) {
  if (t.is_ty()) {
    os << "ty";
  } else if (t.is_tm()) {
    os << "tm";
  } else {
    if (dom_position) os << '(';
    put_simple_type(os, t.dom(), true);
    os << " -> ";
    put_simple_type(os, t.cod(), false);
    if (dom_position) os << ')';
  }
}

}  // namespace

std::string print_simple_type(const SimpleType& t) {
  std::ostringstream os;
  put_simple_type(os, t, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// Simply typed terms

namespace {

void st_collect_names(const STerm& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const StConst& n) { out.insert(n.name); },
          [&](const StVar& n) { out.insert(n.name); },
          [&](const StMeta& n) { out.insert(n.name); },
          [&](const StApp& n) {
            st_collect_names(n.fun, out);
            st_collect_names(n.arg, out);
          },
          [&](const StLam& n) { st_collect_names(n.body, out); },
          [&](const auto&) {},
      },
      t.node().v);
}

void put_sterm(std::ostream& os, const STerm& t, NameSet& used, bool atom_position) {
  std::visit(
      Overloaded{
          [&](const StConst& n) { os << n.name; },
          [&](const StVar& n) { os << n.name; },
          [&](const StMeta& n) { os << n.name; },
          [&](const StBound& n) { os << "#" << n.index; },  // dangling index; debug only
          [&](const StApp&) {
            if (atom_position) os << '(';
            STerm head = st_spine_head(t);
            put_sterm(os, head, used, true);
            for (const STerm& a : st_spine_args(t)) {
              os << ' ';
              put_sterm(os, a, used, true);
            }
            if (atom_position) os << ')';
          },
          [&](const StLam& n) {
            if (atom_position) os << '(';
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << '[' << x << ':';
            put_simple_type(os, n.annot, false);
            os << "] ";
            put_sterm(os, st_open(n.body, STerm::var(x, n.annot)), used, false);
            if (atom_position) os << ')';
          },
      },
      t.node().v);
}

}  // namespace

std::string print_sterm(const STerm& t) {
  std::ostringstream os;
  NameSet used;
  st_collect_names(t, used);
  put_sterm(os, t, used, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// LF expressions

namespace {

void lf_collect_names_obj(const LfObject& t, NameSet& out);
void lf_collect_names_fam(const LfFamily& t, NameSet& out);
void lf_collect_names_kind(const LfKind& t, NameSet& out);

void lf_collect_names_obj(const LfObject& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const ObjConst& n) { out.insert(n.name); },
          [&](const ObjVar& n) { out.insert(n.name); },
          [&](const ObjApp& n) {
            lf_collect_names_obj(n.fun, out);
            lf_collect_names_obj(n.arg, out);
          },
          [&](const ObjLam& n) {
            lf_collect_names_fam(n.annot, out);
            lf_collect_names_obj(n.body, out);
          },
          [&](const auto&) {},
      },
      t.node().v);
}

void lf_collect_names_fam(const LfFamily& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const FamConst& n) { out.insert(n.name); },
          [&](const FamApp& n) {
            lf_collect_names_fam(n.head, out);
            lf_collect_names_obj(n.arg, out);
          },
          [&](const FamPi& n) {
            lf_collect_names_fam(n.domain, out);
            lf_collect_names_fam(n.body, out);
          },
      },
      t.node().v);
}

void lf_collect_names_kind(const LfKind& t, NameSet& out) {
  if (const auto* p = std::get_if<KindPi>(&t.node().v)) {
    lf_collect_names_fam(p->domain, out);
    lf_collect_names_kind(p->body, out);
  }
}

void put_object(std::ostream& os, const LfObject& t, NameSet& used, bool atom_position);
void put_family(std::ostream& os, const LfFamily& t, NameSet& used, bool atom_position);
void put_kind(std::ostream& os, const LfKind& t, NameSet& used);

void put_object(std::ostream& os, const LfObject& t, NameSet& used, bool atom_position) {
  std::visit(
      Overloaded{
          [&](const ObjConst& n) { os << n.name; },
          [&](const ObjVar& n) { os << n.name; },
          [&](const ObjBound& n) { os << "#" << n.index; },
          [&](const ObjApp& n) {
            if (atom_position) os << '(';
            put_object(os, n.fun, used, std::holds_alternative<ObjLam>(n.fun.node().v));
            os << ' ';
            put_object(os, n.arg, used, true);
            if (atom_position) os << ')';
          },
          [&](const ObjLam& n) {
            if (atom_position) os << '(';
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << '[' << x << ':';
            put_family(os, n.annot, used, false);
            os << "] ";
            put_object(os, open_object(n.body, LfObject::var(x)), used, false);
            if (atom_position) os << ')';
          },
      },
      t.node().v);
}

void put_family(std::ostream& os, const LfFamily& t, NameSet& used, bool atom_position) {
  std::visit(
      Overloaded{
          [&](const FamConst& n) { os << n.name; },
          [&](const FamApp& n) {
            if (atom_position) os << '(';
            put_family(os, n.head, used, false);
            os << ' ';
            put_object(os, n.arg, used, true);
            if (atom_position) os << ')';
          },
          [&](const FamPi& n) {
            if (atom_position) os << '(';
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << '{' << x << ':';
            put_family(os, n.domain, used, false);
            os << "} ";
            put_family(os, open_family(n.body, LfObject::var(x)), used, false);
            if (atom_position) os << ')';
          },
      },
      t.node().v);
}

void put_kind(std::ostream& os, const LfKind& t, NameSet& used) {
  std::visit(
      Overloaded{
          [&](const KindType&) { os << "type"; },
          [&](const KindPi& n) {
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << '{' << x << ':';
            put_family(os, n.domain, used, false);
            os << "} ";
            put_kind(os, open_kind(n.body, LfObject::var(x)), used);
          },
      },
      t.node().v);
}

}  // namespace

std::string print_object(const LfObject& t) {
  std::ostringstream os;
  NameSet used;
  lf_collect_names_obj(t, used);
  put_object(os, t, used, false);
  return os.str();
}

std::string print_family(const LfFamily& t) {
  std::ostringstream os;
  NameSet used;
  lf_collect_names_fam(t, used);
  put_family(os, t, used, false);
  return os.str();
}

std::string print_kind(const LfKind& t) {
  std::ostringstream os;
  NameSet used;
  lf_collect_names_kind(t, used);
  put_kind(os, t, used);
  return os.str();
}

std::string print_decl(const LfDecl& d) {
  std::ostringstream os;
  os << d.name << " : ";
  if (d.is_family()) {
    os << print_kind(d.kind());
  } else {
    os << print_family(d.type());
  }
  os << '.';
  return os.str();
}

std::string print_signature(const LfSignature& sig) {
  std::ostringstream os;
  for (const LfDecl& d : sig.decls()) os << print_decl(d) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Clauses and goals

namespace {

void atom_collect_names(const Atom& a, NameSet& out) {
  if (a.is_hastype()) {
    st_collect_names(a.hastype().subject, out);
    st_collect_names(a.hastype().type, out);
  } else {
    st_collect_names(a.istype().type, out);
  }
}

void goal_collect_names(const HHGoal& g, NameSet& out);
void clause_collect_names(const HHClause& c, NameSet& out);

void goal_collect_names(const HHGoal& g, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const GoalAtom& n) { atom_collect_names(n.atom, out); },
          [&](const GoalTrue&) {},
          [&](const GoalAnd& n) {
            goal_collect_names(n.left, out);
            goal_collect_names(n.right, out);
          },
          [&](const GoalImplies& n) {
            clause_collect_names(n.hypothesis, out);
            goal_collect_names(n.conclusion, out);
          },
          [&](const GoalForall& n) { goal_collect_names(n.body, out); },
      },
      g.node().v);
}

void clause_collect_names(const HHClause& c, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { atom_collect_names(n.atom, out); },
          [&](const ClauseImplies& n) {
            goal_collect_names(n.premise, out);
            clause_collect_names(n.head, out);
          },
          [&](const ClauseForall& n) { clause_collect_names(n.body, out); },
      },
      c.node().v);
}

void put_atom(std::ostream& os, const Atom& a, NameSet& used) {
  if (a.is_hastype()) {
    os << "hastype ";
    put_sterm(os, a.hastype().subject, used, true);
    os << ' ';
    put_sterm(os, a.hastype().type, used, true);
  } else {
    os << "istype ";
    put_sterm(os, a.istype().type, used, true);
  }
}

void put_goal(std::ostream& os, const HHGoal& g, NameSet& used, bool atom_position);
void put_clause(std::ostream& os, const HHClause& c, NameSet& used, bool atom_position);

void put_goal(std::ostream& os, const HHGoal& g, NameSet& used, bool atom_position) {
  std::visit(
      Overloaded{
          [&](const GoalAtom& n) { put_atom(os, n.atom, used); },
          [&](const GoalTrue&) { os << "true"; },
          [&](const GoalAnd& n) {
            os << '(';
            put_goal(os, n.left, used, true);
            os << " & ";
            put_goal(os, n.right, used, true);
            os << ')';
          },
          [&](const GoalImplies& n) {
            if (atom_position) os << '(';
            put_clause(os, n.hypothesis, used, true);
            os << " => ";
            put_goal(os, n.conclusion, used, false);
            if (atom_position) os << ')';
          },
          [&](const GoalForall& n) {
            if (atom_position) os << '(';
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << "forall " << x << " : " << print_simple_type(n.type) << ". ";
            put_goal(os, open_goal(n.body, STerm::var(x, n.type)), used, false);
            if (atom_position) os << ')';
          },
      },
      g.node().v);
}

void put_clause(std::ostream& os, const HHClause& c, NameSet& used, bool atom_position) {
  std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { put_atom(os, n.atom, used); },
          [&](const ClauseImplies& n) {
            if (atom_position) os << '(';
            put_goal(os, n.premise, used, true);
            os << " => ";
            put_clause(os, n.head, used, false);
            if (atom_position) os << ')';
          },
          [&](const ClauseForall& n) {
            if (atom_position) os << '(';
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            os << "forall " << x << " : " << print_simple_type(n.type) << ". ";
            put_clause(os, open_clause(n.body, STerm::var(x, n.type)), used, false);
            if (atom_position) os << ')';
          },
      },
      c.node().v);
}

}  // namespace

std::string print_atom(const Atom& a) {
  std::ostringstream os;
  NameSet used;
  atom_collect_names(a, used);
  put_atom(os, a, used);
  return os.str();
}

std::string print_goal(const HHGoal& g) {
  std::ostringstream os;
  NameSet used;
  goal_collect_names(g, used);
  put_goal(os, g, used, false);
  return os.str();
}

std::string print_clause(const HHClause& c) {
  std::ostringstream os;
  NameSet used;
  clause_collect_names(c, used);
  put_clause(os, c, used, false);
  return os.str();
}

std::string print_program(const HHProgram& p) {
  std::ostringstream os;
  for (const HHClause& c : p.clauses) os << print_clause(c) << ".\n";
  return os.str();
}

}  // namespace lfhh
