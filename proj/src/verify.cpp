#include "magnitude/verify.hpp"

#include <cmath>

#include "magnitude/fixtures.hpp"
#include "magnitude/fourpoint.hpp"
#include "magnitude/inclexcl.hpp"
#include "magnitude/spacegen.hpp"

namespace magnitude::verify {

namespace {

using spacegen::GeneratorConfig;
using spacegen::SampleStats;

GeneratorConfig sample_config(const VerifyOptions& opts) {
    GeneratorConfig cfg;
    cfg.seed = opts.seed;
    cfg.denominator_bound = opts.denominator_bound;
    return cfg;
}

std::string frac(const Rational& q) { return fraction_string(q); }

// ---- det4-positive -------------------------------------------------------

CampaignReport det4_positive(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    auto kernel = [&](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        SampleStats stats;
        SimilaritySpace<Rational> space = spacegen::random_similarity(4, cfg, rng, &stats);
        log.attempts = stats.draws;

        Vector<Rational> minors = leading_principal_minors(space);
        for (std::size_t k = 0; k < minors.size(); ++k)
            if (!(minors[k] > 0))
                log.violate("leading minor " + std::to_string(k + 1) +
                            " not positive: " + frac(minors[k]));
        for (auto label : fourpoint::classify_case(space))
            log.label(fourpoint::to_string(label));

        // boundary stress: pin the distinguished entry at either bound
        for (auto which : {fourpoint::Boundary::BMinus, fourpoint::Boundary::BPlus}) {
            try {
                SimilaritySpace<Rational> pinned = fourpoint::force_boundary_z12(space, which);
                Rational det = determinant(pinned);
                if (!(det > 0))
                    log.violate(std::string("boundary-pinned determinant not positive (") +
                                (which == fourpoint::Boundary::BMinus ? "b-" : "b+") +
                                "): " + frac(det));
            } catch (const ConstructionError&) {
                log.label("bplus-at-one-skipped"); // b+ = 1 is the degenerate boundary
            }
        }
    };
    return run_campaign("det4-positive", opts.samples, opts.seed, kernel, opts.execution);
}

// ---- bounds-order --------------------------------------------------------

CampaignReport bounds_order(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    auto kernel = [&](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        SampleStats stats;
        SimilaritySpace<Rational> space = spacegen::random_similarity(4, cfg, rng, &stats);
        log.attempts = stats.draws;

        auto b = fourpoint::bounds4(space);
        const Rational z12 = space.z(0, 1);
        if (!(b.b_minus <= z12 && z12 <= b.b_plus))
            log.violate("Z12 outside [b-, b+]: " + frac(z12));
        if (!(0 < b.b_minus && b.b_plus <= 1))
            log.violate("bounds outside (0, 1]");
        if (!(b.b_minus <= b.b_zero && b.b_zero <= b.b_plus))
            log.violate("b0 outside [b-, b+]: " + frac(b.b_zero));

        // b0 is invariant under the pair-preserving permutations
        const std::vector<std::vector<std::size_t>> perms = {
            {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}};
        for (const auto& perm : perms) {
            auto permuted = fourpoint::bounds4(fourpoint::permute_points(space, perm));
            if (permuted.b_zero != b.b_zero)
                log.violate("b0 not permutation invariant");
        }
    };
    return run_campaign("bounds-order", opts.samples, opts.seed, kernel, opts.execution);
}

// ---- decomposition -------------------------------------------------------

CampaignReport decomposition(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    std::vector<std::size_t> sizes = opts.sizes;
    if (sizes.empty()) sizes = {3, 4, 5, 6, 7};
    auto kernel = [&, sizes](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        SampleStats stats;
        const std::size_t n = sizes[s % sizes.size()];
        SimilaritySpace<Rational> space = spacegen::random_similarity(n, cfg, rng, &stats);
        log.attempts = stats.draws;
        log.label("n=" + std::to_string(n));
        SimilaritySpace<double> approx = to_float(space);

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                try {
                    auto d = inclexcl::pair_decomposition(space, i, j);
                    if (d.lhs != d.rhs)
                        log.violate("exact residual nonzero at pair " +
                                    detail::pair_str(i, j) + ": " + frac(d.residual()));
                } catch (const SingularMatrixError&) {
                    log.label("singular-overlap-skipped");
                    continue;
                }
                auto df = inclexcl::pair_decomposition(approx, i, j);
                if (std::fabs(df.residual()) > 1e-10)
                    log.violate("float residual above 1e-10 at pair " + detail::pair_str(i, j));
            }

        if (n == 4) {
            auto [lhs, rhs] = fourpoint::decomposition4(space);
            if (lhs != rhs) log.violate("four-point completed square residual nonzero");
        }
    };
    return run_campaign("decomposition", opts.samples, opts.seed, kernel, opts.execution);
}

// ---- defect-identity -----------------------------------------------------

CampaignReport defect_identity(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    std::vector<std::size_t> sizes = opts.sizes;
    if (sizes.empty()) sizes = {3, 4, 5, 6};
    auto kernel = [&, sizes](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        const std::size_t n = sizes[s % sizes.size()];
        log.label("n=" + std::to_string(n));
        for (int attempt = 0; attempt < 64; ++attempt) {
            SampleStats stats;
            SimilaritySpace<Rational> space = spacegen::random_similarity(n, cfg, rng, &stats);
            log.attempts += stats.draws;
            const std::size_t i = spacegen::uniform_index(rng, 0, n - 1);
            std::size_t j = spacegen::uniform_index(rng, 0, n - 2);
            if (j >= i) ++j;
            try {
                auto d = inclexcl::defect(space, i, j);
                if (d.delta_direct != d.delta_formula)
                    log.violate("defect closed form differs: direct " + frac(d.delta_direct) +
                                " vs formula " + frac(d.delta_formula));
                return;
            } catch (const SingularMatrixError&) {
                log.label("singular-skipped"); // resample
            }
        }
        log.violate("could not draw a nonsingular sample");
    };
    return run_campaign("defect-identity", opts.samples, opts.seed, kernel, opts.execution);
}

// ---- glue-delta-zero -----------------------------------------------------

CampaignReport glue_delta_zero(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    std::vector<std::size_t> sizes = opts.sizes;
    if (sizes.empty()) sizes = {3, 4, 5, 6};
    auto kernel = [&, sizes](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        const std::size_t n = sizes[s % sizes.size()];
        log.label("n=" + std::to_string(n));
        for (int attempt = 0; attempt < 256; ++attempt) {
            SampleStats stats;
            SimilaritySpace<Rational> space = spacegen::random_similarity(n, cfg, rng, &stats);
            log.attempts += stats.draws;
            SimilaritySpace<Rational> glued = space;
            try {
                glued = inclexcl::glue_at_b0(space, 0, 1);
            } catch (const SingularMatrixError&) {
                log.label("singular-skipped");
                continue;
            } catch (const ConstructionError&) {
                log.label("glue-rejected"); // b0 below b- happens for n >= 5
                continue;
            }
            try {
                auto d = inclexcl::defect(glued, 0, 1);
                if (d.delta_direct != 0)
                    log.violate("glued defect nonzero: " + frac(d.delta_direct));
                if (d.delta_formula != 0)
                    log.violate("glued defect formula nonzero: " + frac(d.delta_formula));
            } catch (const SingularMatrixError&) {
                log.label("singular-skipped");
                continue;
            }
            return;
        }
        log.violate("could not build a glued construction");
    };
    return run_campaign("glue-delta-zero", opts.samples, opts.seed, kernel, opts.execution);
}

// ---- comparison ----------------------------------------------------------

CampaignReport comparison(const VerifyOptions& opts) {
    const GeneratorConfig cfg = sample_config(opts);
    std::vector<std::size_t> sizes = opts.sizes;
    if (sizes.empty()) sizes = {3, 4, 5, 6};
    const std::uint64_t gated = std::max<std::uint64_t>(opts.samples / 10, 100);
    auto kernel = [&, sizes, gated](std::uint64_t s, SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        const std::size_t n = sizes[s % sizes.size()];
        if (s < opts.samples) {
            log.label("random");
            SampleStats stats;
            SimilaritySpace<Rational> space = spacegen::random_similarity(n, cfg, rng, &stats);
            log.attempts = stats.draws;
            const std::size_t i = spacegen::uniform_index(rng, 0, n - 1);
            std::size_t j = spacegen::uniform_index(rng, 0, n - 2);
            if (j >= i) ++j;
            try {
                auto r = inclexcl::comparison_report(space, std::min(i, j), std::max(i, j));
                if (!r.c1_iff_pair_at_bminus)
                    log.violate("C1 <=> (Z = b-) failed");
                if (!r.c2_implies_bminus_is_b0)
                    log.violate("C2 => (b- = b0) failed");
            } catch (const SingularMatrixError&) {
                log.label("singular-skipped");
            }
        } else {
            log.label("gated");
            SimilaritySpace<Rational> space = spacegen::gated_similarity(n, cfg, rng);
            try {
                auto r = inclexcl::comparison_report(space, 0, 1);
                if (!r.c2) log.violate("gated construction did not satisfy C2");
                if (!(r.b_minus == r.b_zero))
                    log.violate("gated construction has b- != b0: " + frac(r.b_minus) +
                                " vs " + frac(r.b_zero));
                if (!r.c1_iff_pair_at_bminus) log.violate("C1 <=> (Z = b-) failed (gated)");
            } catch (const SingularMatrixError&) {
                log.label("singular-skipped");
            }
        }
    };
    return run_campaign("comparison", opts.samples + gated, opts.seed, kernel, opts.execution);
}

// ---- circle-examples -----------------------------------------------------

CampaignReport circle_examples(const VerifyOptions& opts) {
    auto check = [](SampleLog& log, bool ok, const std::string& what) {
        if (!ok) log.violate(what);
    };
    const double tol = kGateTolerance;
    auto kernel = [&](std::uint64_t s, SampleLog& log) {
        if (s == 0) {
            // circle 1: angles (0, 3pi/4, pi/2, -pi/2, pi)
            auto space = from_distances(fixtures::circle1_metric());
            auto r = inclexcl::five_circle_report(space);
            auto cmp = inclexcl::comparison_report(space, 0, 1);
            const double target = std::exp(-3.0 * M_PI / 4.0);
            check(log, std::fabs(r.p) <= tol, "circle1: P != 0");
            check(log, std::fabs(r.b_zero - r.b_minus) <= tol, "circle1: b0 != b-");
            check(log, std::fabs(r.b_zero - target) <= tol, "circle1: b0 != e^{-3pi/4}");
            check(log, std::fabs(space.z(0, 1) - target) <= tol, "circle1: Z12 != e^{-3pi/4}");
            check(log, cmp.c1, "circle1: C1 should hold");
            check(log, !cmp.c2, "circle1: C2 should fail");
            check(log, cmp.c1_iff_pair_at_bminus && cmp.c2_implies_bminus_is_b0,
                  "circle1: comparison lemma bookkeeping failed");
            log.label("circle1");
        } else if (s == 1) {
            // circle 2: angles (0, pi/2, pi/4, -pi/2, pi)
            auto space = from_distances(fixtures::circle2_metric());
            auto r = inclexcl::five_circle_report(space);
            check(log, r.p < -tol, "circle2: P should be negative");
            check(log, r.b_zero < r.b_minus - tol, "circle2: b0 should be below b-");
            bool rejected = false;
            try {
                (void)inclexcl::glue_at_b0(space, 0, 1);
            } catch (const ConstructionError&) {
                rejected = true;
            }
            check(log, rejected, "circle2: glue at b0 should be rejected");
            log.label("circle2");
        } else {
            // the gluing example behind the homology fixture
            auto space = from_distances(fixtures::mv4_metric());
            auto b = fourpoint::bounds4(space);
            const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
            check(log, std::fabs(b.b_minus - e2) <= tol, "mv4: b- != e^{-2}");
            check(log, std::fabs(b.b_zero - 2.0 * e2 / (1.0 + e1)) <= tol,
                  "mv4: b0 != 2e^{-2}/(1+e^{-1})");
            check(log, std::fabs(space.z(0, 1) - b.b_zero) <= tol, "mv4: Z12 != b0");
            check(log, b.b_minus < b.b_zero, "mv4: expected b- < b0");
            log.label("mv4");
        }
    };
    return run_campaign("circle-examples", 3, opts.seed, kernel, Execution::Serial);
}

} // namespace

const std::vector<std::string>& theorem_names() {
    static const std::vector<std::string> names = {
        "det4-positive", "bounds-order",    "decomposition", "defect-identity",
        "glue-delta-zero", "comparison",    "circle-examples"};
    return names;
}

CampaignReport run_theorem(const std::string& name, const VerifyOptions& opts) {
    if (name == "det4-positive") return det4_positive(opts);
    if (name == "bounds-order") return bounds_order(opts);
    if (name == "decomposition") return decomposition(opts);
    if (name == "defect-identity") return defect_identity(opts);
    if (name == "glue-delta-zero") return glue_delta_zero(opts);
    if (name == "comparison") return comparison(opts);
    if (name == "circle-examples") return circle_examples(opts);
    std::string known;
    for (const auto& n : theorem_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown theorem '" + name + "' (known: " + known + ")");
}

} // namespace magnitude::verify

namespace magnitude::fourpoint {

verify::CampaignReport verify_positivity_campaign(std::uint64_t samples, std::uint64_t seed,
                                                  unsigned denominator_bound,
                                                  verify::Execution mode) {
    spacegen::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.denominator_bound = denominator_bound;
    auto kernel = [&cfg](std::uint64_t s, verify::SampleLog& log) {
        auto rng = spacegen::stream_rng(cfg.seed, s);
        spacegen::SampleStats stats;
        SimilaritySpace<Rational> space = spacegen::random_similarity(4, cfg, rng, &stats);
        log.attempts = stats.draws;
        Vector<Rational> minors = leading_principal_minors(space);
        for (std::size_t k = 0; k < minors.size(); ++k)
            if (!(minors[k] > 0))
                log.violate("leading minor " + std::to_string(k + 1) + " not positive");
        auto b = bounds4(space);
        if (!(b.b_minus <= b.b_zero && b.b_zero <= b.b_plus))
            log.violate("bound ordering b- <= b0 <= b+ failed");
        for (auto label : classify_case(space)) log.label(to_string(label));
    };
    return verify::run_campaign("positivity", samples, seed, kernel, mode);
}

} // namespace magnitude::fourpoint
