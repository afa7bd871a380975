#pragma once

#include "lfhh/erasure.hpp"
#include "lfhh/hh.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/lf.hpp"

namespace lfhh {

// Translation of an LF signature into clauses defining `istype`/`hastype`,
// and of typing judgments into goals. Premises of a product chain are curried
// (nested implications); clause heads and goal atoms are kept β-normal.

struct SignatureRejected : std::runtime_error {
  TypeError error;
  explicit SignatureRejected(TypeError e)
      : std::runtime_error("signature rejected: " + e.render()), error(std::move(e)) {}
};

// Goal form of "subject inhabits a": atomic a gives a hastype atom; {x:A} B
// quantifies over x, assumes the clause form of A for x, and continues with
// the applied subject.
HHGoal type_to_goal(const LfSignature& sig, const LfFamily& a, const STerm& subject,
                    const LfContext& ctx = {});
HHGoal type_to_goal(const ReflectedSignature& reflected, const LfFamily& a, const STerm& subject,
                    const LfContext& ctx = {});

// Clause form: the ForallD/ImpliesD mirror of type_to_goal.
HHClause type_to_clause(const LfSignature& sig, const LfFamily& a, const STerm& subject,
                        const LfContext& ctx = {});
HHClause type_to_clause(const ReflectedSignature& reflected, const LfFamily& a,
                        const STerm& subject, const LfContext& ctx = {});

// istype clause for a family declaration a : {x1:A1}...{xn:An} type:
// forall x1..xn, the hastype premises for the indices imply istype (a x1..xn).
HHClause kind_to_istype_clause(const LfSignature& sig, const LfDecl& decl);
HHClause kind_to_istype_clause(const ReflectedSignature& reflected, const LfDecl& decl);

// One clause per declaration, in declaration order. Throws SignatureRejected
// if the kernel refuses the signature.
HHProgram encode_signature(const LfSignature& sig, KernelOptions options = {});

// Goal for the judgment m : a over the encoded signature. m needs only to be
// well-scoped; throws EncodeError when the erased judgment is not simply
// well-formed.
HHGoal judgment_to_goal(const LfSignature& sig, const LfObject& m, const LfFamily& a);

}  // namespace lfhh
