#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinvec/analysis.hpp"
#include "spinvec/sampler.hpp"

namespace spinvec {

inline constexpr const char* kSchemaVersion = "spinvec-report/1";

/// Vector-model summary of one spin-j particle in |j,m>: no site
/// decomposition, just the per-axis values and the two vector choices.
struct SingleReport {
    int twice_j;
    int twice_m;
    std::array<AxisSummary, 3> axes;
    ThreeVector choice_a;
    ThreeVector choice_b;
    double magnitude_a_sq;
    double magnitude_b_sq;
    std::optional<double> effective_unit;  // absent for j = 0
};

/// Throws std::invalid_argument unless |m| <= j and m steps from j by
/// integers (equal parity of 2j and 2m).
SingleReport single_report(int twice_j, int twice_m);

// JSON documents, one object per CLI invocation. Every document carries
// schema_version, kind, and a request echo; numbers round-trip losslessly.
nlohmann::ordered_json single_document(const SingleReport& report);
nlohmann::ordered_json couple_document(const CoupledState& state, const VectorModelReport& report,
                                       const std::vector<SamplerComparison>& sampling);
nlohmann::ordered_json sample_document(const CoupledState& state, const SamplerComparison& cmp);

// Text renderings of the same values (rounded for display only).
std::string single_text(const SingleReport& report);
std::string couple_text(const CoupledState& state, const VectorModelReport& report,
                        const std::vector<SamplerComparison>& sampling);
std::string sample_text(const CoupledState& state, const SamplerComparison& cmp);

}  // namespace spinvec
