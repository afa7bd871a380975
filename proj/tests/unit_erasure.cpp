#include <doctest.h>

#include "generators.hpp"
#include "lfhh/erasure.hpp"
#include "lfhh/harness.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/printer.hpp"
#include "support.hpp"

using namespace lfhh;
using lfhh::testing::Rng;

TEST_CASE("classifier erasure drops dependencies") {
  LfSignature sig = testing::fixture_signature();
  SimpleType tm = SimpleType::tm();
  SimpleType ty = SimpleType::ty();

  // {w : {x:nat} {y:num x} nat} nat  ~>  (tm -> tm -> tm) -> tm
  LfFamily c_type = parse_family("{w : {x:nat} {y:num x} nat} nat", sig);
  SimpleType c_simple =
      SimpleType::arrow(SimpleType::arrow(tm, SimpleType::arrow(tm, tm)), tm);
  CHECK(erase_classifier(c_type) == c_simple);

  CHECK(erase_classifier(LfFamily::constant("nat")) == tm);
  CHECK(erase_classifier(LfKind::type()) == ty);
  CHECK(erase_classifier(LfKind::pi("x", LfFamily::constant("nat"), LfKind::type())) ==
        SimpleType::arrow(tm, ty));
}

TEST_CASE("signature reflection") {
  LfSignature sig = testing::fixture_signature();
  ReflectedSignature reflected = reflect_signature(sig);
  SimpleType tm = SimpleType::tm();
  SimpleType ty = SimpleType::ty();

  REQUIRE(reflected.size() == 4);
  CHECK(reflected[0].name == "nat");
  CHECK(reflected[0].type == ty);
  CHECK(reflected[1].name == "num");
  CHECK(reflected[1].type == SimpleType::arrow(tm, ty));
  CHECK(reflected[2].name == "z");
  CHECK(reflected[2].type == tm);
  CHECK(reflected[3].name == "c");
  CHECK(reflected[3].type ==
        SimpleType::arrow(SimpleType::arrow(tm, SimpleType::arrow(tm, tm)), tm));

  CHECK(reflect_signature(LfSignature{}).empty());

  // appending k : {x:nat} {y:nat} type reflects at tm -> tm -> ty
  LfSignature extended = sig;
  extended.push(LfDecl{
      "k", LfKind::pi("x", LfFamily::constant("nat"),
                      LfKind::pi("y", LfFamily::constant("nat"), LfKind::type()))});
  ReflectedSignature reflected2 = reflect_signature(extended);
  CHECK(reflected2.back().type == SimpleType::arrow(tm, SimpleType::arrow(tm, ty)));
}

TEST_CASE("object erasure conflates the two fixture terms") {
  LfSignature sig = testing::fixture_signature();
  SimpleType tm = SimpleType::tm();
  STerm z = STerm::constant("z", tm);
  STerm collapsed = STerm::lam("x", tm, STerm::lam("y", tm, z));

  STerm refused = erase_object(sig, testing::refused_term(sig));
  STerm accepted = erase_object(sig, testing::accepted_term(sig));
  STerm c = STerm::constant(
      "c", SimpleType::arrow(SimpleType::arrow(tm, SimpleType::arrow(tm, tm)), tm));
  STerm expected = STerm::app(c, collapsed);

  CHECK(alpha_equal(refused, expected));
  CHECK(alpha_equal(accepted, expected));
  CHECK(alpha_equal(refused, accepted));  // the many-to-one collision

  // ... while the kernel accepts exactly the second
  CHECK_FALSE(check_object(sig, {}, testing::refused_term(sig),
                           LfFamily::constant("nat")).derivable());
  CHECK(check_object(sig, {}, testing::accepted_term(sig),
                     LfFamily::constant("nat")).derivable());

  CHECK(alpha_equal(erase_object(sig, LfObject::constant("z")), z));
}

TEST_CASE("atomic families reify as terms of type ty") {
  LfSignature sig = testing::fixture_signature();
  STerm num_z = erase_family_term(sig, parse_family("num z", sig));
  CHECK(st_type_of(num_z) == SimpleType::ty());
  CHECK(print_sterm(num_z) == "num z");

  STerm nat = erase_family_term(sig, LfFamily::constant("nat"));
  CHECK(st_type_of(nat) == SimpleType::ty());
  CHECK(print_sterm(nat) == "nat");

  CHECK_THROWS_AS(erase_family_term(sig, parse_family("{x:nat} nat", sig)), EncodeError);
}

TEST_CASE("erasure is partial on simply untypable scoped terms") {
  LfSignature sig = testing::fixture_signature();
  CHECK_THROWS_AS(erase_object(sig, parse_object("z z", sig)), EncodeError);
  CHECK_THROWS_AS(erase_object(sig, parse_object("c z", sig)), EncodeError);
  CHECK_THROWS_AS(erase_object(sig, LfObject::constant("missing")), EncodeError);
}

TEST_CASE("erasure preserves typing on kernel-accepted terms") {
  LfSignature sig = testing::fixture_signature();
  int accepted = 0;
  for (const LfObject& m : enumerate_objects(sig, 5)) {
    InferOutcome r = infer_object(sig, {}, m);
    if (!r.ok()) continue;
    ++accepted;
    CAPTURE(print_object(m));
    // totality on kernel-accepted input: must not throw
    STerm erased = erase_object(sig, m);
    CHECK(st_type_of(erased) == erase_classifier(*r.type));
  }
  CHECK(accepted > 0);
}

TEST_CASE("erasure commutes with substitution") {
  LfSignature sig = testing::fixture_signature();
  LfContext ctx;
  ctx = ctx.extended("x", LfFamily::constant("nat"));
  LfObject n = LfObject::constant("z");
  STerm erased_n = erase_object(sig, n);

  Rng rng(31337);
  int checked = 0;
  for (int i = 0; i < 800 && checked < 300; ++i) {
    std::vector<Name> scope = {"x"};
    LfObject m = testing::gen_lf_object(rng, scope, 3);
    try {
      STerm left = erase_object(sig, subst_object(m, "x", n));
      STerm right = st_subst_free(erase_object(sig, m, ctx), "x", erased_n);
      CAPTURE(print_object(m));
      CHECK(alpha_equal(left, right));
      ++checked;
    } catch (const EncodeError&) {
      continue;  // simply untypable image
    }
  }
  CHECK(checked >= 100);
}
