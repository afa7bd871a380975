#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfhh/encoding.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/lf.hpp"
#include "lfhh/prover.hpp"

namespace lfhh {

// Exhaustive-by-size differential testing: every well-scoped closed object up
// to a node-count bound is checked against every enumerated atomic type, once
// by the kernel and once by encode-then-prove, and the verdicts are compared.
//
// Size metric: object-level nodes only (leaf 1, application 1+|fun|+|arg|,
// abstraction 1+|body|; annotations do not count). λ-annotations range over
// kernel-valid families built from the signature: atomic families with λ-free
// index objects of at most max_index_size nodes, and their product closures,
// within a family budget of max_index_size + 1.

enum class Classification {
  kAgreeYes,
  kAgreeNo,
  kUnsoundMismatch,         // kernel refuses, prover proves: the failure class
  kInconclusiveTimeout,     // prover hit the depth policy
  kInconclusiveNonPattern,  // prover met a non-pattern unification problem
  kHarnessError,            // kernel accepts but the prover side failed outright
};

const char* classification_name(Classification c);

struct CaseVerdict {
  CaseVerdict(LfObject m, LfFamily a) : term(std::move(m)), type(std::move(a)) {}

  LfObject term;
  LfFamily type;
  bool kernel_derivable = false;
  std::optional<TypeError> kernel_error;
  SolveResult::Status prover = SolveResult::Status::kFailedNoProof;
  std::optional<ProofTrace> trace;  // Proved cases
  bool trace_valid = false;         // replay verdict for Proved cases
  Classification classification = Classification::kAgreeNo;
  bool encode_failed = false;
  std::string encode_error;
  // kernel accepted but the prover did not prove at the policy depth
  bool soundness_violation = false;
  int depth_bound = 0;
};

struct CampaignConfig {
  LfSignature signature;
  int max_term_size = 7;
  int max_index_size = 2;
  int depth_multiplier = 4;  // depth bound = multiplier × term node count
  int parallelism = 1;

  bool valid() const {
    return max_term_size >= 1 && max_index_size >= 1 && depth_multiplier >= 1 &&
           parallelism >= 1;
  }
};

struct CampaignReport {
  int total_cases = 0;
  std::map<Classification, int> totals;
  std::vector<CaseVerdict> mismatches;        // classification == kUnsoundMismatch
  std::vector<CaseVerdict> soundness_errors;  // every soundness_violation case
  std::string ordering_note;
};

// All well-scoped closed objects with node count <= size, smallest first;
// deterministic order, free of α-duplicates by construction.
std::vector<LfObject> enumerate_objects(const LfSignature& sig, int size,
                                        int max_index_size = 2);

// Closed kernel-valid atomic families usable as judgment types.
std::vector<LfFamily> enumerate_judgment_types(const LfSignature& sig, int max_index_size = 2);

CaseVerdict run_case(const LfSignature& sig, const LfObject& m, const LfFamily& a,
                     const CampaignConfig& config);

// Runs run_case over enumerate_objects × enumerate_judgment_types. Throws
// SignatureRejected when the kernel refuses the signature,
// std::invalid_argument on bad bounds. Deterministic for a given config,
// independent of parallelism.
CampaignReport run_campaign(const CampaignConfig& config);

}  // namespace lfhh
