// Compares the serial reference campaign engine against the OpenMP engine on
// the two heaviest kernels. Run with: bench_campaigns [samples] [seed]

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "magnitude/verify.hpp"

using magnitude::verify::CampaignReport;
using magnitude::verify::Execution;
using magnitude::verify::VerifyOptions;

int main(int argc, char** argv) {
    std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;

    std::cout << "campaign benchmark: " << samples << " samples, seed " << seed << "\n";
    std::cout << std::left << std::setw(18) << "theorem" << std::setw(12) << "serial[s]"
              << std::setw(12) << "parallel[s]" << std::setw(10) << "speedup"
              << "identical\n";

    for (const char* theorem : {"det4-positive", "decomposition"}) {
        VerifyOptions opts;
        opts.samples = theorem == std::string("decomposition") ? samples / 20 : samples;
        opts.seed = seed;

        opts.execution = Execution::Serial;
        CampaignReport serial = magnitude::verify::run_theorem(theorem, opts);
        opts.execution = Execution::Parallel;
        CampaignReport parallel = magnitude::verify::run_theorem(theorem, opts);

        std::cout << std::left << std::setw(18) << theorem << std::setw(12) << std::fixed
                  << std::setprecision(3) << serial.elapsed_seconds << std::setw(12)
                  << parallel.elapsed_seconds << std::setw(10)
                  << serial.elapsed_seconds / parallel.elapsed_seconds
                  << (serial.same_outcome(parallel) ? "yes" : "NO") << "\n";
        if (!serial.same_outcome(parallel)) return 1;
        if (!serial.passed()) return 1;
    }
    return 0;
}
