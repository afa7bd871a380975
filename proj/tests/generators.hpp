#pragma once

#include <random>
#include <vector>

#include "lfhh/erasure.hpp"
#include "lfhh/hh.hpp"
#include "lfhh/lf.hpp"
#include "lfhh/simple.hpp"

namespace lfhh::testing {

struct Rng {
  std::mt19937 engine;

  explicit Rng(unsigned seed) : engine(seed) {}

  int pick(int n) { return static_cast<int>(engine() % static_cast<unsigned>(n)); }
  bool flip() { return pick(2) == 0; }
};

// ---------------------------------------------------------------------------
// Simply typed terms over a fixed constant pool.

inline const ReflectedSignature& term_pool() {
  static const ReflectedSignature pool = [] {
    SimpleType tm = SimpleType::tm();
    SimpleType ty = SimpleType::ty();
    ReflectedSignature out;
    out.push_back({"nat", ty});
    out.push_back({"num", SimpleType::arrow(tm, ty)});
    out.push_back({"z", tm});
    out.push_back({"c", SimpleType::arrow(SimpleType::arrow(tm, SimpleType::arrow(tm, tm)), tm)});
    out.push_back({"a", tm});
    out.push_back({"b", tm});
    out.push_back({"f", SimpleType::arrow(tm, tm)});
    out.push_back({"g", SimpleType::arrow(tm, SimpleType::arrow(tm, tm))});
    out.push_back({"q", SimpleType::arrow(tm, ty)});
    return out;
  }();
  return pool;
}

inline SimpleType gen_simple_type(Rng& rng, int depth) {
  if (depth <= 0 || rng.pick(3) != 0) {
    return rng.flip() ? SimpleType::tm() : SimpleType::ty();
  }
  return SimpleType::arrow(gen_simple_type(rng, depth - 1), gen_simple_type(rng, depth - 1));
}

// Type-directed term generator; produces redexes through the application case.
inline STerm gen_sterm(Rng& rng, std::vector<std::pair<Name, SimpleType>>& vars,
                       const SimpleType& type, int fuel) {
  std::vector<STerm> leaves;
  for (const auto& [n, t] : vars) {
    if (t == type) leaves.push_back(STerm::var(n, t));
  }
  for (const ReflectedConstant& c : term_pool()) {
    if (c.type == type) leaves.push_back(STerm::constant(c.name, c.type));
  }
  if (fuel <= 0 && !leaves.empty()) return leaves[static_cast<size_t>(rng.pick(
      static_cast<int>(leaves.size())))];

  int choice = rng.pick(3);
  if (type.is_arrow() && (choice == 0 || leaves.empty())) {
    Name x = "v" + std::to_string(vars.size());
    vars.emplace_back(x, type.dom());
    STerm body = gen_sterm(rng, vars, type.cod(), fuel - 1);
    vars.pop_back();
    return STerm::lam(x, type.dom(), body);
  }
  if (choice == 1 && fuel > 0) {
    SimpleType arg_type = gen_simple_type(rng, 1);
    STerm fun = gen_sterm(rng, vars, SimpleType::arrow(arg_type, type), fuel - 1);
    STerm arg = gen_sterm(rng, vars, arg_type, fuel - 1);
    return STerm::app(fun, arg);
  }
  if (!leaves.empty()) {
    return leaves[static_cast<size_t>(rng.pick(static_cast<int>(leaves.size())))];
  }
  // No leaf of this type: fall back to an abstraction or application.
  if (type.is_arrow()) {
    Name x = "v" + std::to_string(vars.size());
    vars.emplace_back(x, type.dom());
    STerm body = gen_sterm(rng, vars, type.cod(), fuel - 1);
    vars.pop_back();
    return STerm::lam(x, type.dom(), body);
  }
  SimpleType arg_type = rng.flip() ? SimpleType::tm() : SimpleType::ty();
  STerm fun = gen_sterm(rng, vars, SimpleType::arrow(arg_type, type), fuel - 1);
  STerm arg = gen_sterm(rng, vars, arg_type, fuel - 1);
  return STerm::app(fun, arg);
}

inline STerm gen_closed_sterm(Rng& rng, const SimpleType& type, int fuel) {
  std::vector<std::pair<Name, SimpleType>> vars;
  return gen_sterm(rng, vars, type, fuel);
}

// ---------------------------------------------------------------------------
// LF expressions (well-scoped, not necessarily well-typed).

inline LfFamily gen_lf_annotation(Rng& rng, const std::vector<Name>& nat_vars) {
  switch (rng.pick(4)) {
    case 0: return LfFamily::constant("nat");
    case 1: return LfFamily::app(LfFamily::constant("num"), LfObject::constant("z"));
    case 2:
      if (!nat_vars.empty()) {
        const Name& v = nat_vars[static_cast<size_t>(rng.pick(
            static_cast<int>(nat_vars.size())))];
        return LfFamily::app(LfFamily::constant("num"), LfObject::var(v));
      }
      return LfFamily::constant("nat");
    default:
      return LfFamily::pi("p", LfFamily::constant("nat"), LfFamily::constant("nat"));
  }
}

inline LfObject gen_lf_object(Rng& rng, std::vector<Name>& scope, int fuel) {
  std::vector<Name> nat_vars = scope;  // annotation indices may use any var
  if (fuel <= 0) {
    int n = static_cast<int>(scope.size()) + 2;
    int k = rng.pick(n);
    if (k == 0) return LfObject::constant("z");
    if (k == 1) return LfObject::constant("c");
    return LfObject::var(scope[static_cast<size_t>(k - 2)]);
  }
  switch (rng.pick(4)) {
    case 0: {
      LfFamily annot = gen_lf_annotation(rng, nat_vars);
      Name x = "u" + std::to_string(scope.size());
      scope.push_back(x);
      LfObject body = gen_lf_object(rng, scope, fuel - 1);
      scope.pop_back();
      return LfObject::lam(x, annot, body);
    }
    case 1: {
      LfObject f = gen_lf_object(rng, scope, fuel - 1);
      LfObject a = gen_lf_object(rng, scope, fuel - 1);
      return LfObject::app(f, a);
    }
    default: return gen_lf_object(rng, scope, 0);
  }
}

inline LfObject gen_closed_lf_object(Rng& rng, int fuel) {
  std::vector<Name> scope;
  return gen_lf_object(rng, scope, fuel);
}

// ---------------------------------------------------------------------------
// Clause-language formulas over the term pool (for printer round-trips).

inline Atom gen_atom(Rng& rng, std::vector<std::pair<Name, SimpleType>>& vars) {
  if (rng.flip()) {
    return Atom{HastypeAtom{gen_sterm(rng, vars, SimpleType::tm(), 2),
                            gen_sterm(rng, vars, SimpleType::ty(), 2)}};
  }
  return Atom{IstypeAtom{gen_sterm(rng, vars, SimpleType::ty(), 2)}};
}

inline HHClause gen_clause(Rng& rng, std::vector<std::pair<Name, SimpleType>>& vars, int fuel);

inline HHGoal gen_goal(Rng& rng, std::vector<std::pair<Name, SimpleType>>& vars, int fuel) {
  if (fuel <= 0) return HHGoal::atom(gen_atom(rng, vars));
  switch (rng.pick(5)) {
    case 0: return HHGoal::truth();
    case 1:
      return HHGoal::conj(gen_goal(rng, vars, fuel - 1), gen_goal(rng, vars, fuel - 1));
    case 2:
      return HHGoal::implies(gen_clause(rng, vars, fuel - 1), gen_goal(rng, vars, fuel - 1));
    case 3: {
      SimpleType t = gen_simple_type(rng, 1);
      Name x = "w" + std::to_string(vars.size());
      vars.emplace_back(x, t);
      HHGoal body = gen_goal(rng, vars, fuel - 1);
      vars.pop_back();
      return HHGoal::forall(x, t, body);
    }
    default: return HHGoal::atom(gen_atom(rng, vars));
  }
}

inline HHClause gen_clause(Rng& rng, std::vector<std::pair<Name, SimpleType>>& vars, int fuel) {
  if (fuel <= 0) return HHClause::atom(gen_atom(rng, vars));
  switch (rng.pick(4)) {
    case 0:
      return HHClause::implies(gen_goal(rng, vars, fuel - 1), gen_clause(rng, vars, fuel - 1));
    case 1: {
      SimpleType t = gen_simple_type(rng, 1);
      Name x = "w" + std::to_string(vars.size());
      vars.emplace_back(x, t);
      HHClause body = gen_clause(rng, vars, fuel - 1);
      vars.pop_back();
      return HHClause::forall(x, t, body);
    }
    default: return HHClause::atom(gen_atom(rng, vars));
  }
}

}  // namespace lfhh::testing
