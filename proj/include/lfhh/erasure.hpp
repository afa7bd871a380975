#pragma once

#include <stdexcept>
#include <vector>

#include "lfhh/lf.hpp"
#include "lfhh/simple.hpp"

namespace lfhh {

// Dependency erasure: LF classifiers map to simple types over ty/tm, LF
// objects map to simply typed terms over the reflected signature, and atomic
// families reify as terms of type ty.

struct ReflectedConstant {
  Name name;
  SimpleType type;
};
using ReflectedSignature = std::vector<ReflectedConstant>;

// How object-level types collapse. kCollapsed is the translation implemented
// here: every object type becomes the single base type tm. A refinement that
// introduces one base type per family head would slot in as a second
// enumerator; it is not implemented.
enum class ObjectTypePolicy { kCollapsed };

enum class EncodeErrorKind { kUnboundName, kNotAtomic, kSimpleTypeMismatch };

struct EncodeError : std::runtime_error {
  EncodeErrorKind kind;
  EncodeError(EncodeErrorKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

// Atomic family -> tm, {x:A} B -> erase(A) -> erase(B); dependencies dropped.
SimpleType erase_classifier(const LfFamily& a,
                            ObjectTypePolicy policy = ObjectTypePolicy::kCollapsed);
// Kind `type` -> ty, {x:A} K -> erase(A) -> erase(K).
SimpleType erase_classifier(const LfKind& k,
                            ObjectTypePolicy policy = ObjectTypePolicy::kCollapsed);

// One reflected constant per declaration, order preserved.
ReflectedSignature reflect_signature(const LfSignature& sig);

const ReflectedConstant* reflected_lookup(const ReflectedSignature& reflected, const Name& name);

// Homomorphic erasure of a well-scoped object. Defined whenever the image is
// simply typable; throws EncodeError otherwise (unknown constant, or an
// application that the simply typed image rejects). The optional context
// types free variables.
STerm erase_object(const LfSignature& sig, const LfObject& m, const LfContext& ctx = {});
STerm erase_object(const ReflectedSignature& reflected, const LfObject& m,
                   const LfContext& ctx = {});

// Atomic family as a term of type ty; NotAtomic on a product.
STerm erase_family_term(const LfSignature& sig, const LfFamily& a, const LfContext& ctx = {});
STerm erase_family_term(const ReflectedSignature& reflected, const LfFamily& a,
                        const LfContext& ctx = {});

}  // namespace lfhh
