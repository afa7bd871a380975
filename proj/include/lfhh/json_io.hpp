#pragma once

#include <json.hpp>

#include "lfhh/harness.hpp"
#include "lfhh/kernel.hpp"
#include "lfhh/prover.hpp"

namespace lfhh {

// Stable field names: rule, clause_index, binder, children (plus clause,
// unifier, residual for backchain and implication nodes).
nlohmann::json trace_to_json(const ProofTrace& trace);

nlohmann::json type_error_to_json(const TypeError& error);

// Versioned report (schema: 1).
nlohmann::json report_to_json(const CampaignReport& report, const CampaignConfig& config);

}  // namespace lfhh
