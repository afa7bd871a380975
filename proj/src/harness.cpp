#include "lfhh/harness.hpp"

#include <future>

#include "lfhh/erasure.hpp"
#include "lfhh/util.hpp"

namespace lfhh {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::kAgreeYes: return "agree-yes";
    case Classification::kAgreeNo: return "agree-no";
    case Classification::kUnsoundMismatch: return "unsound-mismatch";
    case Classification::kInconclusiveTimeout: return "inconclusive-timeout";
    case Classification::kInconclusiveNonPattern: return "inconclusive-non-pattern";
    case Classification::kHarnessError: return "harness-error";
  }
  return "unknown";
}

namespace {

struct Scope {
  std::vector<std::pair<Name, LfFamily>> vars;

  LfContext context() const {
    LfContext ctx;
    ctx.bindings = vars;
    return ctx;
  }

  NameSet names() const {
    NameSet out;
    for (const auto& [n, _] : vars) out.insert(n);
    return out;
  }
};

// λ-free well-scoped objects of exactly `size` nodes: family index candidates.
void index_objects_exact(const LfSignature& sig, const Scope& scope, int size,
                         std::vector<LfObject>& out) {
  if (size < 1) return;
  if (size == 1) {
    for (const LfDecl& d : sig.decls()) {
      if (!d.is_family()) out.push_back(LfObject::constant(d.name));
    }
    for (const auto& [n, _] : scope.vars) out.push_back(LfObject::var(n));
    return;
  }
  for (int k = 1; k <= size - 2; ++k) {
    std::vector<LfObject> funs;
    std::vector<LfObject> args;
    index_objects_exact(sig, scope, k, funs);
    index_objects_exact(sig, scope, size - 1 - k, args);
    for (const LfObject& f : funs) {
      for (const LfObject& a : args) out.push_back(LfObject::app(f, a));
    }
  }
}

// Families of exactly `size` in scope, not yet kernel-filtered. Size counts
// the head, each index object's nodes, and 1 per product node.
void families_exact(const LfSignature& sig, const Scope& scope, int size, int max_index,
                    std::vector<LfFamily>& out) {
  if (size < 1) return;
  if (size == 1) {
    for (const LfDecl& d : sig.decls()) {
      if (d.is_family()) out.push_back(LfFamily::constant(d.name));
    }
  }
  if (size > 1) {
    // Applications: head family of size k, one more index object of the rest.
    for (int k = 1; k < size; ++k) {
      int arg_size = size - k;
      if (arg_size > max_index) continue;
      std::vector<LfFamily> heads;
      families_exact(sig, scope, k, max_index, heads);
      std::vector<LfObject> args;
      index_objects_exact(sig, scope, arg_size, args);
      for (const LfFamily& h : heads) {
        if (std::holds_alternative<FamPi>(h.node().v)) continue;
        for (const LfObject& a : args) out.push_back(LfFamily::app(h, a));
      }
    }
    // Products: {x:A} B.
    for (int k = 1; k <= size - 2; ++k) {
      std::vector<LfFamily> domains;
      families_exact(sig, scope, k, max_index, domains);
      for (const LfFamily& dom : domains) {
        Scope inner = scope;
        Name x = fresh_name("x", inner.names());
        inner.vars.emplace_back(x, dom);
        std::vector<LfFamily> bodies;
        families_exact(sig, inner, size - 1 - k, max_index, bodies);
        for (const LfFamily& b : bodies) {
          out.push_back(LfFamily::pi(x, dom, b));
        }
      }
    }
  }
}

// Kernel-valid families of kind type within the annotation budget.
std::vector<LfFamily> annotation_families(const LfSignature& sig, const Scope& scope,
                                          int max_index) {
  std::vector<LfFamily> out;
  LfContext ctx = scope.context();
  for (int s = 1; s <= max_index + 1; ++s) {
    std::vector<LfFamily> raw;
    families_exact(sig, scope, s, max_index, raw);
    for (const LfFamily& a : raw) {
      KindOutcome k = check_family(sig, ctx, a);
      if (k.ok() && *k.kind == LfKind::type()) out.push_back(a);
    }
  }
  return out;
}

void objects_exact(const LfSignature& sig, const Scope& scope, int size, int max_index,
                   std::vector<LfObject>& out) {
  if (size < 1) return;
  if (size == 1) {
    for (const LfDecl& d : sig.decls()) {
      if (!d.is_family()) out.push_back(LfObject::constant(d.name));
    }
    for (const auto& [n, _] : scope.vars) out.push_back(LfObject::var(n));
    return;
  }
  // Abstractions: [x:A] body with body of size - 1.
  for (const LfFamily& annot : annotation_families(sig, scope, max_index)) {
    Scope inner = scope;
    Name x = fresh_name("x", inner.names());
    inner.vars.emplace_back(x, annot);
    std::vector<LfObject> bodies;
    objects_exact(sig, inner, size - 1, max_index, bodies);
    for (const LfObject& b : bodies) out.push_back(LfObject::lam(x, annot, b));
  }
  // Applications.
  for (int k = 1; k <= size - 2; ++k) {
    std::vector<LfObject> funs;
    std::vector<LfObject> args;
    objects_exact(sig, scope, k, max_index, funs);
    objects_exact(sig, scope, size - 1 - k, max_index, args);
    for (const LfObject& f : funs) {
      for (const LfObject& a : args) out.push_back(LfObject::app(f, a));
    }
  }
}

}  // namespace

std::vector<LfObject> enumerate_objects(const LfSignature& sig, int size, int max_index_size) {
  std::vector<LfObject> out;
  Scope scope;
  for (int s = 1; s <= size; ++s) objects_exact(sig, scope, s, max_index_size, out);
  return out;
}

std::vector<LfFamily> enumerate_judgment_types(const LfSignature& sig, int max_index_size) {
  std::vector<LfFamily> out;
  Scope scope;
  LfContext empty;
  for (int s = 1; s <= max_index_size + 1; ++s) {
    std::vector<LfFamily> raw;
    families_exact(sig, scope, s, max_index_size, raw);
    for (const LfFamily& a : raw) {
      if (std::holds_alternative<FamPi>(a.node().v)) continue;  // atomic types only
      KindOutcome k = check_family(sig, empty, a);
      if (k.ok() && *k.kind == LfKind::type()) out.push_back(a);
    }
  }
  return out;
}

namespace {

CaseVerdict run_case_impl(const LfSignature& sig, const ReflectedSignature& reflected,
                          const HHProgram& program, const LfObject& m, const LfFamily& a,
                          const CampaignConfig& config) {
  CaseVerdict v(m, a);

  CheckResult kernel = check_object(sig, {}, m, a);
  v.kernel_derivable = kernel.derivable();
  v.kernel_error = kernel.error;

  int depth = config.depth_multiplier * object_node_count(m);
  if (depth < 1) depth = 1;
  v.depth_bound = depth;

  SolveResult prover_result;
  try {
    STerm subject = erase_object(reflected, m);
    HHGoal goal = type_to_goal(reflected, a, subject, {});
    prover_result = solve_iterative(program, goal, depth);
    if (prover_result.proved()) {
      v.trace = prover_result.trace;
      v.trace_valid = replay_trace(program, goal, *prover_result.trace);
    }
  } catch (const EncodeError& e) {
    v.encode_failed = true;
    v.encode_error = e.what();
    prover_result.status = SolveResult::Status::kFailedNoProof;
  }
  v.prover = prover_result.status;

  switch (v.prover) {
    case SolveResult::Status::kProved:
      v.classification =
          v.kernel_derivable ? Classification::kAgreeYes : Classification::kUnsoundMismatch;
      break;
    case SolveResult::Status::kFailedNoProof:
      v.classification =
          v.kernel_derivable ? Classification::kHarnessError : Classification::kAgreeNo;
      break;
    case SolveResult::Status::kExhausted:
      v.classification = Classification::kInconclusiveTimeout;
      break;
    case SolveResult::Status::kIncomplete:
      v.classification = Classification::kInconclusiveNonPattern;
      break;
  }
  v.soundness_violation = v.kernel_derivable && v.prover != SolveResult::Status::kProved;
  return v;
}

}  // namespace

CaseVerdict run_case(const LfSignature& sig, const LfObject& m, const LfFamily& a,
                     const CampaignConfig& config) {
  ReflectedSignature reflected = reflect_signature(sig);
  HHProgram program = encode_signature(sig);
  return run_case_impl(sig, reflected, program, m, a, config);
}

CampaignReport run_campaign(const CampaignConfig& config) {
  if (!config.valid()) throw std::invalid_argument("campaign bounds must be positive");
  const LfSignature& sig = config.signature;
  HHProgram program = encode_signature(sig);  // throws SignatureRejected if refused
  ReflectedSignature reflected = reflect_signature(sig);

  std::vector<LfObject> objects = enumerate_objects(sig, config.max_term_size,
                                                    config.max_index_size);
  std::vector<LfFamily> types = enumerate_judgment_types(sig, config.max_index_size);

  struct Case {
    const LfObject* m;
    const LfFamily* a;
  };
  std::vector<Case> cases;
  cases.reserve(objects.size() * types.size());
  for (const LfObject& m : objects) {
    for (const LfFamily& a : types) cases.push_back(Case{&m, &a});
  }

  std::vector<std::optional<CaseVerdict>> verdicts(cases.size());
  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      verdicts[i] = run_case_impl(sig, reflected, program, *cases[i].m, *cases[i].a, config);
    }
  };
  if (config.parallelism <= 1 || cases.size() < 2) {
    worker(0, cases.size());
  } else {
    size_t workers = static_cast<size_t>(config.parallelism);
    if (workers > cases.size()) workers = cases.size();
    size_t chunk = (cases.size() + workers - 1) / workers;
    std::vector<std::future<void>> futures;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = begin + chunk < cases.size() ? begin + chunk : cases.size();
      if (begin >= end) break;
      futures.push_back(std::async(std::launch::async, worker, begin, end));
    }
    for (auto& f : futures) f.get();
  }

  CampaignReport report;
  report.total_cases = static_cast<int>(verdicts.size());
  report.ordering_note =
      "deterministic exhaustive enumeration, node count ascending, declaration order within "
      "each size; no randomness";
  for (std::optional<CaseVerdict>& slot : verdicts) {
    CaseVerdict& v = *slot;
    report.totals[v.classification] += 1;
    if (v.soundness_violation) report.soundness_errors.push_back(v);
    if (v.classification == Classification::kUnsoundMismatch) {
      report.mismatches.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace lfhh
