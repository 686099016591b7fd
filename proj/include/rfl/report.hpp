#pragma once

// JSON rendering of sources, analysis results and depth tables. Field order
// is fixed so identical inputs give byte-identical output.

#include <json.hpp>

#include "rfl/classification.hpp"
#include "rfl/depth.hpp"
#include "rfl/source.hpp"
#include "rfl/structure.hpp"

namespace rfl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "rflang";
inline constexpr const char* kToolVersion = "1.0.0";

Json source_summary_json(const Source& src);
Json validation_json(const Source& src, const ValidationReport& rep);
Json factoriality_json(const Source& src, const FactorialityReport& rep);
Json cycle_json(const Source& src, const Cycle& c);
Json dependence_json(const Source& src, const DependenceWitness& w);
Json witness_family_json(const Source& src, const WitnessFamily& f);
Json classification_json(const Source& src, const Classification& c);
Json depth_table_json(const depth::DepthTable& table);

struct ReportOptions {
    DependenceOptions dependence;
    std::optional<std::size_t> depth_n_max;
    depth::OracleLimits limits;
    depth::Execution exec = depth::Execution::Parallel;
};

/// Full report: tool, source summary and canonical text, validation,
/// factoriality, classification (or the reason it was skipped) and an
/// optional depth table.
Json full_report(const Source& src, const ReportOptions& opts = {});

}  // namespace rfl
