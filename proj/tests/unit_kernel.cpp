#include <doctest.h>

#include "generators.hpp"
#include "lfhh/harness.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/printer.hpp"
#include "support.hpp"

using namespace lfhh;
using lfhh::testing::Rng;

namespace {

const KernelOptions kBetaEta{true};
const KernelOptions kBetaOnly{false};

}  // namespace

TEST_CASE("the fixture signature is well-formed") {
  LfSignature sig = testing::fixture_signature();
  CheckResult r = check_signature(sig);
  REQUIRE(r.derivable());
  CHECK(r.conversion == "beta-eta");
  CHECK(validate_derivation(sig, *r.derivation));
}

TEST_CASE("the empty signature is well-formed") {
  LfSignature sig;
  CheckResult r = check_signature(sig);
  REQUIRE(r.derivable());
  CHECK(validate_derivation(sig, *r.derivation));
}

TEST_CASE("a signature with an unbound reference is rejected") {
  // num : {x:nat} type without nat declared first
  LfSignature sig;
  sig.push(LfDecl{"num", LfKind::pi("x", LfFamily::constant("nat"), LfKind::type())});
  CheckResult r = check_signature(sig);
  REQUIRE_FALSE(r.derivable());
  CHECK(r.error->kind == TypeErrorKind::kIllFormedSignature);
  CHECK(r.error->path.at(0) == 0);
  CHECK(r.error->message.find("unbound-name") != std::string::npos);
}

TEST_CASE("duplicate declarations are rejected") {
  LfSignature sig;
  sig.push(LfDecl{"nat", LfKind::type()});
  sig.push(LfDecl{"nat", LfKind::type()});
  CheckResult r = check_signature(sig);
  REQUIRE_FALSE(r.derivable());
  CHECK(r.error->kind == TypeErrorKind::kIllFormedSignature);
  CHECK(r.error->path.at(0) == 1);
}

TEST_CASE("inference rejects the fixed-index term with a domain mismatch") {
  LfSignature sig = testing::fixture_signature();
  InferOutcome r = infer_object(sig, {}, testing::refused_term(sig));
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->kind == TypeErrorKind::kDomainMismatch);
  LfFamily expected = parse_family("{x:nat} {y:num x} nat", sig);
  LfFamily got = parse_family("{x:nat} {y:num z} nat", sig);
  REQUIRE(r.error->expected.has_value());
  REQUIRE(r.error->got.has_value());
  CHECK(alpha_equal(*r.error->expected, expected));
  CHECK(alpha_equal(*r.error->got, got));
}

TEST_CASE("inference types the constants and the dependent-annotation term") {
  LfSignature sig = testing::fixture_signature();

  InferOutcome z = infer_object(sig, {}, LfObject::constant("z"));
  REQUIRE(z.ok());
  CHECK(alpha_equal(*z.type, LfFamily::constant("nat")));
  CHECK(validate_derivation(sig, *z.derivation));

  InferOutcome partner = infer_object(sig, {}, testing::accepted_term(sig));
  REQUIRE(partner.ok());
  CHECK(alpha_equal(*partner.type, LfFamily::constant("nat")));
  CHECK(validate_derivation(sig, *partner.derivation));
}

TEST_CASE("checking verdicts on the fixture judgments") {
  LfSignature sig = testing::fixture_signature();
  LfFamily nat = LfFamily::constant("nat");
  LfFamily num_z = parse_family("num z", sig);

  SUBCASE("the probe judgment is refused under both conversion modes") {
    for (KernelOptions opt : {kBetaEta, kBetaOnly}) {
      CheckResult r = check_object(sig, {}, testing::refused_term(sig), nat, opt);
      REQUIRE_FALSE(r.derivable());
      CHECK(r.error->kind == TypeErrorKind::kDomainMismatch);
    }
  }
  SUBCASE("z : nat holds and its derivation replays") {
    CheckResult r = check_object(sig, {}, LfObject::constant("z"), nat);
    REQUIRE(r.derivable());
    CHECK(validate_derivation(sig, *r.derivation));
  }
  SUBCASE("z : num z is refused (z's only type is nat)") {
    CheckResult r = check_object(sig, {}, LfObject::constant("z"), num_z);
    REQUIRE_FALSE(r.derivable());
    CHECK(r.error->kind == TypeErrorKind::kDomainMismatch);
  }
  SUBCASE("the partner term checks against nat under both modes") {
    for (KernelOptions opt : {kBetaEta, kBetaOnly}) {
      CheckResult r = check_object(sig, {}, testing::accepted_term(sig), nat, opt);
      REQUIRE(r.derivable());
      CHECK(validate_derivation(sig, *r.derivation, opt));
    }
  }
}

TEST_CASE("family kinding") {
  LfSignature sig = testing::fixture_signature();

  KindOutcome num_z = check_family(sig, {}, parse_family("num z", sig));
  REQUIRE(num_z.ok());
  CHECK(*num_z.kind == LfKind::type());
  CHECK(validate_derivation(sig, *num_z.derivation));

  KindOutcome nat = check_family(sig, {}, LfFamily::constant("nat"));
  REQUIRE(nat.ok());
  CHECK(*nat.kind == LfKind::type());

  // num applied to a family constant used as an object
  KindOutcome bad = check_family(sig, {}, LfFamily::app(LfFamily::constant("num"),
                                                        LfObject::constant("nat")));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error->kind == TypeErrorKind::kUnboundName);

  // num alone has a product kind, not type
  KindOutcome num = check_family(sig, {}, LfFamily::constant("num"));
  REQUIRE(num.ok());
  CHECK_FALSE(*num.kind == LfKind::type());
}

TEST_CASE("family convertibility") {
  LfSignature sig = testing::fixture_signature();
  LfContext ctx;
  ctx = ctx.extended("x", LfFamily::constant("nat"));

  LfFamily num_z = parse_family("num z", sig);
  LfFamily num_x = LfFamily::app(LfFamily::constant("num"), LfObject::var("x"));
  CHECK(equal_family(sig, ctx, num_z, num_z));
  CHECK_FALSE(equal_family(sig, ctx, num_z, num_x));

  LfFamily dependent = parse_family("{x:nat} {y:num x} nat", sig);
  LfFamily fixed = parse_family("{x:nat} {y:num z} nat", sig);
  CHECK_FALSE(equal_family(sig, {}, dependent, fixed));
  CHECK(equal_family(sig, {}, dependent, dependent));
}

TEST_CASE("conversion respects beta redexes in type indices") {
  LfSignature sig = testing::fixture_signature();
  // num (([x:nat] x) z) is convertible with num z
  LfFamily redex = parse_family("num (([x:nat] x) z)", sig);
  LfFamily plain = parse_family("num z", sig);
  CHECK(equal_family(sig, {}, redex, plain));
  KindOutcome k = check_family(sig, {}, redex);
  REQUIRE(k.ok());
  CHECK(*k.kind == LfKind::type());
}

TEST_CASE("application of a non-function reports not-a-function") {
  LfSignature sig = testing::fixture_signature();
  InferOutcome r = infer_object(sig, {}, parse_object("z z", sig));
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->kind == TypeErrorKind::kNotAFunction);
}

TEST_CASE("inference is sound: accepted derivations replay") {
  LfSignature sig = testing::fixture_signature();
  int accepted = 0;
  for (const LfObject& m : enumerate_objects(sig, 5)) {
    InferOutcome r = infer_object(sig, {}, m);
    if (!r.ok()) continue;
    ++accepted;
    CAPTURE(print_object(m));
    REQUIRE(validate_derivation(sig, *r.derivation));
  }
  CHECK(accepted > 0);
}

TEST_CASE("inference is a function of the alpha-equivalence class") {
  LfSignature sig = testing::fixture_signature();
  // the same binders under different display names
  LfObject original = parse_object("c ([x:nat] [y:num x] z)", sig);
  LfObject renamed = parse_object("c ([u:nat] [v:num u] z)", sig);
  REQUIRE(alpha_equal(original, renamed));
  InferOutcome a = infer_object(sig, {}, original);
  InferOutcome b = infer_object(sig, {}, renamed);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(alpha_equal(*a.type, *b.type));

  LfObject refused1 = parse_object("c ([x:nat] [y:num z] z)", sig);
  LfObject refused2 = parse_object("c ([p:nat] [q:num z] z)", sig);
  CHECK(infer_object(sig, {}, refused1).ok() == infer_object(sig, {}, refused2).ok());
}

TEST_CASE("typing is stable under substitution on small instances") {
  LfSignature sig = testing::fixture_signature();
  LfContext ctx;
  ctx = ctx.extended("x", LfFamily::constant("nat"));
  LfObject n = LfObject::constant("z");  // closed inhabitant of nat

  Rng rng(90210);
  int checked = 0;
  for (int i = 0; i < 600 && checked < 200; ++i) {
    std::vector<Name> scope = {"x"};
    LfObject m = testing::gen_lf_object(rng, scope, 3);
    InferOutcome open_typing = infer_object(sig, ctx, m);
    if (!open_typing.ok()) continue;
    InferOutcome closed_typing = infer_object(sig, {}, subst_object(m, "x", n));
    CAPTURE(print_object(m));
    REQUIRE(closed_typing.ok());
    CHECK(alpha_equal(*closed_typing.type, subst_object(*open_typing.type, "x", n)));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("tampered derivations fail the validator") {
  LfSignature sig = testing::fixture_signature();
  InferOutcome r = infer_object(sig, {}, testing::accepted_term(sig));
  REQUIRE(r.ok());
  DerivationTree tree = *r.derivation;
  REQUIRE(validate_derivation(sig, tree));
  tree.classifier = LfFamily::app(LfFamily::constant("num"), LfObject::constant("z"));
  CHECK_FALSE(validate_derivation(sig, tree));

  DerivationTree renamed_rule = *r.derivation;
  renamed_rule.rule = "obj-var";
  CHECK_FALSE(validate_derivation(sig, renamed_rule));
}
