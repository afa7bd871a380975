#include "lfhh/json_io.hpp"

#include "lfhh/printer.hpp"

namespace lfhh {

nlohmann::json trace_to_json(const ProofTrace& trace) {
  nlohmann::json out;
  switch (trace.step) {
    case ProofTrace::Step::kTrue:
      out["rule"] = "true";
      break;
    case ProofTrace::Step::kAndSplit:
      out["rule"] = "and_split";
      break;
    case ProofTrace::Step::kImpliesIntro:
      out["rule"] = "implies_intro";
      if (trace.added_clause) out["clause"] = print_clause(*trace.added_clause);
      break;
    case ProofTrace::Step::kForallIntro:
      out["rule"] = "forall_intro";
      out["binder"] = trace.eigen;
      if (trace.eigen_type) out["binder_type"] = print_simple_type(*trace.eigen_type);
      break;
    case ProofTrace::Step::kBackchain: {
      out["rule"] = "backchain";
      out["clause_index"] = trace.clause_index;
      nlohmann::json unifier = nlohmann::json::array();
      for (const auto& [name, value] : trace.unifier) {
        unifier.push_back({{"var", name}, {"term", print_sterm(value)}});
      }
      out["unifier"] = std::move(unifier);
      nlohmann::json residual = nlohmann::json::array();
      for (const HHGoal& g : trace.residual) residual.push_back(print_goal(g));
      out["residual"] = std::move(residual);
      break;
    }
  }
  nlohmann::json children = nlohmann::json::array();
  for (const ProofTrace& c : trace.children) children.push_back(trace_to_json(c));
  out["children"] = std::move(children);
  return out;
}

nlohmann::json type_error_to_json(const TypeError& error) {
  nlohmann::json out;
  out["kind"] = type_error_kind_name(error.kind);
  out["message"] = error.message;
  out["path"] = error.path;
  if (error.expected) out["expected"] = print_family(*error.expected);
  if (error.got) out["got"] = print_family(*error.got);
  return out;
}

nlohmann::json report_to_json(const CampaignReport& report, const CampaignConfig& config) {
  nlohmann::json out;
  out["schema"] = 1;
  out["max_term_size"] = config.max_term_size;
  out["max_index_size"] = config.max_index_size;
  out["depth_mult"] = config.depth_multiplier;
  out["total_cases"] = report.total_cases;
  out["ordering"] = report.ordering_note;

  nlohmann::json totals;
  for (const auto& [classification, count] : report.totals) {
    totals[classification_name(classification)] = count;
  }
  out["totals"] = std::move(totals);

  auto verdict_json = [](const CaseVerdict& v) {
    nlohmann::json c;
    c["classification"] = classification_name(v.classification);
    c["term"] = print_object(v.term);
    c["type"] = print_family(v.type);
    c["kernel_derivable"] = v.kernel_derivable;
    c["prover"] = solve_status_name(v.prover);
    c["depth_bound"] = v.depth_bound;
    if (v.kernel_error) {
      c["kernel_reason"] = v.kernel_error->render();
      c["kernel_error"] = type_error_to_json(*v.kernel_error);
    }
    if (v.trace) {
      c["trace"] = trace_to_json(*v.trace);
      c["trace_valid"] = v.trace_valid;
    }
    if (v.encode_failed) c["encode_error"] = v.encode_error;
    return c;
  };

  nlohmann::json mismatches = nlohmann::json::array();
  for (const CaseVerdict& v : report.mismatches) mismatches.push_back(verdict_json(v));
  out["mismatches"] = std::move(mismatches);

  nlohmann::json errors = nlohmann::json::array();
  for (const CaseVerdict& v : report.soundness_errors) errors.push_back(verdict_json(v));
  out["soundness_errors"] = std::move(errors);
  return out;
}

}  // namespace lfhh
