#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magnitude::verify {

struct Violation {
    std::uint64_t sample = 0;
    std::string what;

    bool operator==(const Violation&) const = default;
};

struct CampaignReport {
    std::string theorem;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t attempts = 0; // generator draws, for the acceptance rate
    std::vector<Violation> violations;
    std::map<std::string, std::uint64_t> histogram;
    double elapsed_seconds = 0.0;
    int threads = 1;

    bool passed() const { return violations.empty(); }

    // Everything except timing/thread metadata; serial and parallel runs of
    // the same campaign must compare equal under this.
    bool same_outcome(const CampaignReport& other) const {
        return theorem == other.theorem && samples == other.samples && seed == other.seed &&
               attempts == other.attempts && violations == other.violations &&
               histogram == other.histogram;
    }
};

// Per-sample scratch a kernel writes into; merged deterministically by
// sample index afterwards, so aggregation is order-independent.
struct SampleLog {
    std::vector<std::string> violations;
    std::vector<std::string> labels;
    std::uint64_t attempts = 0;

    void violate(std::string what) { violations.push_back(std::move(what)); }
    void label(std::string tag) { labels.push_back(std::move(tag)); }
};

using SampleKernel = std::function<void(std::uint64_t sample, SampleLog& log)>;

enum class Execution { Serial, Parallel };

// Runs one check kernel over `samples` independent samples. The serial path
// is the reference implementation; the parallel path distributes samples over
// OpenMP threads and must produce the identical report.
inline CampaignReport run_campaign(std::string theorem, std::uint64_t samples,
                                   std::uint64_t seed, const SampleKernel& kernel,
                                   Execution mode = Execution::Parallel) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<SampleLog> logs(samples);

    int threads = 1;
    if (mode == Execution::Parallel) {
#ifdef _OPENMP
        threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s)
            kernel(static_cast<std::uint64_t>(s), logs[s]);
#else
        for (std::uint64_t s = 0; s < samples; ++s) kernel(s, logs[s]);
#endif
    } else {
        for (std::uint64_t s = 0; s < samples; ++s) kernel(s, logs[s]);
    }

    CampaignReport report;
    report.theorem = std::move(theorem);
    report.samples = samples;
    report.seed = seed;
    report.threads = threads;
    for (std::uint64_t s = 0; s < samples; ++s) {
        report.attempts += logs[s].attempts;
        for (auto& v : logs[s].violations) report.violations.push_back({s, std::move(v)});
        for (auto& l : logs[s].labels) ++report.histogram[l];
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace magnitude::verify
