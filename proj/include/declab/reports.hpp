#pragma once

/// @file reports.hpp
/// @brief JSON serialisation of the report structs.  Output is deterministic:
///        keys are emitted in sorted order, no timestamps, fixed float
///        formatting — identical inputs give byte-identical files.

#include "declab/decay.hpp"
#include "declab/inequalities.hpp"
#include "declab/solver.hpp"
#include "declab/systems.hpp"

#include <string>

namespace declab {

std::string to_json(const ConditionAReport& r);
std::string to_json(const ConditionKReport& r);
std::string to_json(const EnvelopeReport& r);
/// Combined structure report for `check`.
std::string structure_report_json(const std::string& model,
                                  const ConditionAReport& a,
                                  const ConditionKReport& k,
                                  const EnvelopeReport& env);

std::string to_json(const InequalityReport& r);
std::string to_json(const std::vector<InequalityReport>& rs);
std::string to_json(const LemmaReport& r);
std::string to_json(const EnvelopeComparison& r);
std::string to_json(const DecayReport& r);
std::string to_json(const ClosureAuditReport& r);
std::string to_json(const EnergyAuditReport& r);

void write_text_file(const std::string& path, const std::string& content);

} // namespace declab
