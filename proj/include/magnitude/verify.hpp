#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magnitude/campaign.hpp"

namespace magnitude::verify {

struct VerifyOptions {
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned denominator_bound = 32;
    std::vector<std::size_t> sizes; // theorem-specific default when empty
    Execution execution = Execution::Parallel;
};

// Stable theorem identifiers, so suites can be pinned by name.
const std::vector<std::string>& theorem_names();

CampaignReport run_theorem(const std::string& name, const VerifyOptions& opts);

} // namespace magnitude::verify

namespace magnitude::fourpoint {

// Samples the 4-point similarity domain, asserts the exact positivity of the
// determinant and of all leading principal minors, asserts the bound ordering
// b- <= b0 <= b+, and tallies case labels.
verify::CampaignReport verify_positivity_campaign(
    std::uint64_t samples, std::uint64_t seed, unsigned denominator_bound = 32,
    verify::Execution mode = verify::Execution::Parallel);

} // namespace magnitude::fourpoint
