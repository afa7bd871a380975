#include <doctest.h>

#include "generators.hpp"
#include "lfhh/lf.hpp"
#include "lfhh/printer.hpp"
#include "lfhh/simple.hpp"
#include "support.hpp"

using namespace lfhh;
using lfhh::testing::Rng;

namespace {

LfFamily nat() { return LfFamily::constant("nat"); }
LfFamily num(LfObject idx) { return LfFamily::app(LfFamily::constant("num"), std::move(idx)); }

}  // namespace

TEST_CASE("alpha equivalence identifies renamings only") {
  // [x:nat] x vs [y:nat] y
  LfObject a = LfObject::lam("x", nat(), LfObject::var("x"));
  LfObject b = LfObject::lam("y", nat(), LfObject::var("y"));
  CHECK(alpha_equal(a, b));

  // [x:nat] [y:num z] z vs [x:nat] [y:num x] z: annotations differ at one node
  LfSignature sig = testing::fixture_signature();
  LfObject fixed = parse_object("[x:nat] [y:num z] z", sig);
  LfObject dependent = parse_object("[x:nat] [y:num x] z", sig);
  CHECK_FALSE(alpha_equal(fixed, dependent));

  CHECK(alpha_equal(LfObject::constant("z"), LfObject::constant("z")));
}

TEST_CASE("substitution of free object variables") {
  // (num x)[x := z] = num z
  LfFamily before = num(LfObject::var("x"));
  LfFamily after = subst_object(before, "x", LfObject::constant("z"));
  CHECK(alpha_equal(after, num(LfObject::constant("z"))));

  // ([x:nat] x)[x := z] unchanged: the binder shadows
  LfObject identity = LfObject::lam("x", nat(), LfObject::var("x"));
  CHECK(alpha_equal(subst_object(identity, "x", LfObject::constant("z")), identity));

  // ({y:num x} nat)[x := z] = {y:num z} nat
  LfFamily pi = LfFamily::pi("y", num(LfObject::var("x")), nat());
  LfFamily pi_expected = LfFamily::pi("y", num(LfObject::constant("z")), nat());
  CHECK(alpha_equal(subst_object(pi, "x", LfObject::constant("z")), pi_expected));
}

TEST_CASE("simply typed normalization") {
  SimpleType tm = SimpleType::tm();
  STerm z = STerm::constant("z", tm);
  STerm a = STerm::constant("a", tm);
  STerm b = STerm::constant("b", tm);

  // ([x:tm] [y:tm] z) a b -> z   (two β-steps)
  STerm k = STerm::lam("x", tm, STerm::lam("y", tm, z));
  STerm redex = STerm::app(STerm::app(k, a), b);
  CHECK(alpha_equal(st_normalize(redex), z));
  CHECK(alpha_equal(st_normalize(redex, {false}), z));

  CHECK(alpha_equal(st_normalize(z), z));

  STerm id_z = STerm::app(STerm::lam("x", tm, STerm::var("x", tm)), z);
  CHECK(alpha_equal(st_normalize(id_z), z));
}

TEST_CASE("eta-long normal forms expand partial applications") {
  SimpleType tm = SimpleType::tm();
  SimpleType tm2 = SimpleType::arrow(tm, tm);
  STerm f = STerm::constant("f", tm2);
  // η-long of f is [x:tm] f x
  STerm expanded = st_normalize(f);
  CHECK(alpha_equal(expanded, STerm::lam("x", tm, STerm::app(f, STerm::var("x", tm)))));
  // β-only mode leaves it alone
  CHECK(alpha_equal(st_normalize(f, {false}), f));
}

TEST_CASE("fresh name generation") {
  CHECK(fresh_name("x", {"x"}) == "x1");
  CHECK(fresh_name("x", {}) == "x");
  CHECK(fresh_name("x", {"x", "x1"}) == "x2");
}

TEST_CASE("substitution lemma on generated terms") {
  Rng rng(20240901);
  int checked = 0;
  for (int i = 0; i < 1200; ++i) {
    std::vector<Name> scope = {"x", "y", "s1", "s2"};
    LfObject t = testing::gen_lf_object(rng, scope, 3);
    std::vector<Name> u_scope = {"x", "s1", "s2"};  // y not free in u
    LfObject u = testing::gen_lf_object(rng, u_scope, 2);
    std::vector<Name> v_scope = {"s1", "s2"};
    LfObject v = testing::gen_lf_object(rng, v_scope, 2);

    LfObject left = subst_object(subst_object(t, "x", u), "y", v);
    LfObject right = subst_object(subst_object(t, "y", v), "x", subst_object(u, "y", v));
    if (!alpha_equal(left, right)) {
      CAPTURE(print_object(t));
      CAPTURE(print_object(u));
      CAPTURE(print_object(v));
      REQUIRE(alpha_equal(left, right));
    }
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("normalization is idempotent and preserves simple typing") {
  Rng rng(777001);
  int checked = 0;
  for (int i = 0; i < 1200; ++i) {
    SimpleType type = testing::gen_simple_type(rng, 2);
    STerm t = testing::gen_closed_sterm(rng, type, 4);
    REQUIRE(st_type_of(t) == type);

    for (bool eta : {true, false}) {
      STerm nf = st_normalize(t, {eta});
      CHECK(st_type_of(nf) == type);
      STerm nf2 = st_normalize(nf, {eta});
      if (!alpha_equal(nf, nf2)) {
        CAPTURE(print_sterm(t));
        REQUIRE(alpha_equal(nf, nf2));
      }
    }
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("alpha equivalence is an equivalence relation on generated terms") {
  Rng rng(424242);
  std::vector<STerm> terms;
  for (int i = 0; i < 60; ++i) {
    terms.push_back(testing::gen_closed_sterm(rng, testing::gen_simple_type(rng, 1), 3));
  }
  for (const STerm& t : terms) CHECK(alpha_equal(t, t));
  for (const STerm& t : terms) {
    for (const STerm& u : terms) {
      CHECK(alpha_equal(t, u) == alpha_equal(u, t));
    }
  }
  for (const STerm& t : terms) {
    for (const STerm& u : terms) {
      if (!alpha_equal(t, u)) continue;
      for (const STerm& v : terms) {
        if (alpha_equal(u, v)) CHECK(alpha_equal(t, v));
      }
    }
  }
}

TEST_CASE("st substitution commutes with free variables") {
  Rng rng(5150);
  SimpleType tm = SimpleType::tm();
  for (int i = 0; i < 300; ++i) {
    std::vector<std::pair<Name, SimpleType>> vars = {{"x", tm}, {"y", tm}};
    STerm t = testing::gen_sterm(rng, vars, testing::gen_simple_type(rng, 1), 3);
    STerm u = testing::gen_closed_sterm(rng, tm, 2);
    STerm v = testing::gen_closed_sterm(rng, tm, 2);
    STerm left = st_subst_free(st_subst_free(t, "x", u), "y", v);
    STerm right = st_subst_free(st_subst_free(t, "y", v), "x", st_subst_free(u, "y", v));
    REQUIRE(alpha_equal(left, right));
  }
}
