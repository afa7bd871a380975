#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lfhh/lf.hpp"

namespace lfhh {

// The LF kernel: signature well-formedness, kinding of families, and
// bidirectional typing of objects. All objects are inferable (binders carry
// annotations); λ against Π uses the checking rule; checking anything else is
// inference followed by conversion. Inferred classifiers come back in normal
// form. Error reporting is the first failure in leftmost-innermost order.

struct KernelOptions {
  // βη-conversion by default; β-only when disabled. The fixture verdicts are
  // flag-independent and the tests assert that.
  bool eta_conversion = true;

  const char* conversion_name() const { return eta_conversion ? "beta-eta" : "beta"; }
};

enum class TypeErrorKind {
  kUnboundName,
  kNotAFunction,
  kDomainMismatch,
  kKindMismatch,
  kIllFormedSignature,
};

const char* type_error_kind_name(TypeErrorKind k);

struct TypeError {
  TypeErrorKind kind;
  // Child indices from the judgment subject to the offending node. For
  // signature errors the first component is the declaration index.
  std::vector<int> path;
  std::string message;
  // DomainMismatch payload, both in normal form.
  std::optional<LfFamily> expected;
  std::optional<LfFamily> got;

  std::string render() const;
};

// One inference-rule instance per node; replayable by validate_derivation.
struct DerivationTree {
  std::string rule;
  LfContext ctx;
  std::variant<LfObject, LfFamily, LfKind, LfSignature> subject;
  std::optional<std::variant<LfFamily, LfKind>> classifier;
  std::vector<DerivationTree> premises;
};

struct CheckResult {
  std::optional<DerivationTree> derivation;  // present iff derivable
  std::optional<TypeError> error;
  std::string conversion;  // conversion mode the verdict was computed under

  bool derivable() const { return derivation.has_value(); }
};

struct InferOutcome {
  std::optional<LfFamily> type;  // normal form
  std::optional<DerivationTree> derivation;
  std::optional<TypeError> error;

  bool ok() const { return type.has_value(); }
};

struct KindOutcome {
  std::optional<LfKind> kind;  // normal form
  std::optional<DerivationTree> derivation;
  std::optional<TypeError> error;

  bool ok() const { return kind.has_value(); }
};

CheckResult check_signature(const LfSignature& sig, KernelOptions options = {});

KindOutcome check_family(const LfSignature& sig, const LfContext& ctx, const LfFamily& a,
                         KernelOptions options = {});

InferOutcome infer_object(const LfSignature& sig, const LfContext& ctx, const LfObject& m,
                          KernelOptions options = {});

CheckResult check_object(const LfSignature& sig, const LfContext& ctx, const LfObject& m,
                         const LfFamily& a, KernelOptions options = {});

// β(η)-convertibility of well-kinded families.
bool equal_family(const LfSignature& sig, const LfContext& ctx, const LfFamily& a,
                  const LfFamily& b, KernelOptions options = {});

// Independent rule-by-rule replay of a derivation; true iff every node
// re-checks against its premises.
bool validate_derivation(const LfSignature& sig, const DerivationTree& tree,
                         KernelOptions options = {});

}  // namespace lfhh
