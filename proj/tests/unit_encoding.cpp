#include <doctest.h>

#include <sstream>

#include "lfhh/encoding.hpp"
#include "lfhh/printer.hpp"
#include "support.hpp"

using namespace lfhh;

namespace {

const char* kGoalClauseBody =
    "forall x : tm. hastype x nat => forall y : tm. hastype y (num x) => hastype (w x y) nat";
const char* kCClause =
    "forall w : tm -> tm -> tm. (forall x : tm. hastype x nat => forall y : tm. hastype y "
    "(num x) => hastype (w x y) nat) => hastype (c w) nat";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("goals for atomic and product classifiers") {
  LfSignature sig = testing::fixture_signature();
  SimpleType tm = SimpleType::tm();

  HHGoal base = type_to_goal(sig, LfFamily::constant("nat"), STerm::constant("z", tm));
  CHECK(print_goal(base) == "hastype z nat");

  SimpleType w_type = SimpleType::arrow(tm, SimpleType::arrow(tm, tm));
  HHGoal nested = type_to_goal(sig, parse_family("{x:nat} {y:num x} nat", sig),
                               STerm::var("w", w_type));
  CHECK(print_goal(nested) == kGoalClauseBody);

  // subjects are β-normalized before the atom is formed
  STerm id_z = STerm::app(STerm::lam("x", tm, STerm::var("x", tm)), STerm::constant("z", tm));
  HHGoal normalized = type_to_goal(sig, LfFamily::constant("nat"), id_z);
  CHECK(print_goal(normalized) == "hastype z nat");
}

TEST_CASE("clauses mirror goals with the polarities flipped") {
  LfSignature sig = testing::fixture_signature();
  SimpleType tm = SimpleType::tm();

  HHClause unit = type_to_clause(sig, LfFamily::constant("nat"), STerm::constant("z", tm));
  CHECK(print_clause(unit) == "hastype z nat");

  ReflectedSignature reflected = reflect_signature(sig);
  const ReflectedConstant* c = reflected_lookup(reflected, "c");
  HHClause big = type_to_clause(sig, parse_family("{w : {x:nat} {y:num x} nat} nat", sig),
                                STerm::constant("c", c->type));
  CHECK(print_clause(big) == kCClause);

  HHClause atomic = type_to_clause(sig, parse_family("num z", sig),
                                   STerm::var("q", SimpleType::tm()));
  CHECK(print_clause(atomic) == "hastype q (num z)");
}

TEST_CASE("clause and goal forms coincide after stripping polarity") {
  LfSignature sig = testing::fixture_signature();
  SimpleType tm = SimpleType::tm();
  ReflectedSignature reflected = reflect_signature(sig);

  struct Case {
    const char* family;
    SimpleType subject_type;
  };
  std::vector<Case> cases = {
      {"nat", tm},
      {"num z", tm},
      {"{x:nat} {y:num x} nat", SimpleType::arrow(tm, SimpleType::arrow(tm, tm))},
      {"{w : {x:nat} {y:num x} nat} nat",
       SimpleType::arrow(SimpleType::arrow(tm, SimpleType::arrow(tm, tm)), tm)},
  };
  for (const Case& c : cases) {
    LfFamily a = parse_family(c.family, sig);
    STerm subject = STerm::var("s", c.subject_type);
    // identical canonical print attests identical structure
    CHECK(print_clause(type_to_clause(reflected, a, subject, {})) ==
          print_goal(type_to_goal(reflected, a, subject, {})));
  }
}

TEST_CASE("istype clauses for family declarations") {
  LfSignature sig = testing::fixture_signature();
  const LfDecl* nat_decl = sig.lookup("nat");
  const LfDecl* num_decl = sig.lookup("num");
  REQUIRE(nat_decl);
  REQUIRE(num_decl);

  CHECK(print_clause(kind_to_istype_clause(sig, *nat_decl)) == "istype nat");
  CHECK(print_clause(kind_to_istype_clause(sig, *num_decl)) ==
        "forall x : tm. hastype x nat => istype (num x)");
}

TEST_CASE("signature encoding emits one clause per declaration in order") {
  LfSignature sig = testing::fixture_signature();
  HHProgram program = encode_signature(sig);
  REQUIRE(program.clauses.size() == 4);
  CHECK(print_clause(program.clauses[0]) == "istype nat");
  CHECK(print_clause(program.clauses[1]) ==
        "forall x : tm. hastype x nat => istype (num x)");
  CHECK(print_clause(program.clauses[2]) == "hastype z nat");
  CHECK(print_clause(program.clauses[3]) == kCClause);

  // deterministic output
  CHECK(print_program(encode_signature(sig)) == print_program(program));
}

TEST_CASE("the hastype clauses match the golden transcription") {
  LfSignature sig = testing::fixture_signature();
  HHProgram program = encode_signature(sig);
  std::vector<std::string> hastype_lines;
  for (const HHClause& c : program.clauses) {
    if (clause_head(c).is_hastype()) hastype_lines.push_back(print_clause(c) + ".");
  }
  std::vector<std::string> golden = lines_of(testing::read_file(testing::golden_path()));
  CHECK(hastype_lines == golden);
}

TEST_CASE("restricted and empty signatures") {
  LfSignature sig = testing::fixture_signature();
  LfSignature restricted;
  restricted.push(sig.decls()[0]);  // nat
  restricted.push(sig.decls()[2]);  // z
  HHProgram program = encode_signature(restricted);
  REQUIRE(program.clauses.size() == 2);
  CHECK(print_clause(program.clauses[0]) == "istype nat");
  CHECK(print_clause(program.clauses[1]) == "hastype z nat");

  CHECK(encode_signature(LfSignature{}).clauses.empty());
}

TEST_CASE("rejected signatures do not encode") {
  LfSignature bad;
  bad.push(LfDecl{"num", LfKind::pi("x", LfFamily::constant("nat"), LfKind::type())});
  CHECK_THROWS_AS(encode_signature(bad), SignatureRejected);
}

TEST_CASE("judgments translate to goals") {
  LfSignature sig = testing::fixture_signature();

  HHGoal probe = judgment_to_goal(sig, testing::refused_term(sig), LfFamily::constant("nat"));
  CHECK(print_goal(probe) == "hastype (c ([x:tm] [y:tm] z)) nat");

  CHECK(print_goal(judgment_to_goal(sig, LfObject::constant("z"),
                                    LfFamily::constant("nat"))) == "hastype z nat");
  CHECK(print_goal(judgment_to_goal(sig, LfObject::constant("z"),
                                    parse_family("num z", sig))) == "hastype z (num z)");
}

TEST_CASE("encoded judgment atoms are well-typed") {
  LfSignature sig = testing::fixture_signature();
  HHGoal g = judgment_to_goal(sig, testing::refused_term(sig), LfFamily::constant("nat"));
  const auto* atom = std::get_if<GoalAtom>(&g.node().v);
  REQUIRE(atom);
  REQUIRE(atom->atom.is_hastype());
  CHECK(st_type_of(atom->atom.hastype().type) == SimpleType::ty());
  CHECK(st_type_of(atom->atom.hastype().subject) == SimpleType::tm());
}
