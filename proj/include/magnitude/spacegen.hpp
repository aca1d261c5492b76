#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>

#include "magnitude/core.hpp"
#include "magnitude/metric.hpp"

namespace magnitude::spacegen {

struct GeneratorConfig {
    std::uint64_t seed = 0;
    unsigned denominator_bound = 32; // entries are p/q with 2 <= q <= bound
    unsigned max_retries = 200000;   // whole-space rejection budget
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream-splitting rule: stream k of master seed s is an mt19937_64 seeded
// with splitmix64(s ^ splitmix64(k + 1)). Campaigns give every sample its own
// stream, so serial and parallel runs see identical randomness.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

namespace detail {

// Uniform in [lo, hi] by rejection-free modulo; the bias is irrelevant here
// and the arithmetic is identical on every platform.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

inline Rational random_unit_rational(std::mt19937_64& rng, unsigned bound) {
    const std::uint64_t den = bounded(rng, 2, bound);
    const std::uint64_t num = bounded(rng, 1, den - 1);
    Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

// A rational with denominator <= bound inside [lo, hi] intersected with
// (0, 1), or nothing if a handful of random denominators admit none.
inline std::optional<Rational> random_rational_in(std::mt19937_64& rng, unsigned bound,
                                                  const Rational& lo, const Rational& hi) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        const std::uint64_t den = bounded(rng, 2, bound);
        BigInt num_lo, num_hi;
        // ceil(lo * den) and floor(hi * den)
        BigInt scaled = lo.get_num() * static_cast<unsigned long>(den);
        mpz_cdiv_q(num_lo.get_mpz_t(), scaled.get_mpz_t(), lo.get_den().get_mpz_t());
        scaled = hi.get_num() * static_cast<unsigned long>(den);
        mpz_fdiv_q(num_hi.get_mpz_t(), scaled.get_mpz_t(), hi.get_den().get_mpz_t());
        if (num_lo < 1) num_lo = 1;
        BigInt cap(static_cast<unsigned long>(den - 1));
        if (num_hi > cap) num_hi = cap;
        if (num_lo > num_hi) continue;
        BigInt span = num_hi - num_lo + 1;
        const std::uint64_t offset = bounded(rng, 0, span.get_ui() - 1);
        BigInt chosen = num_lo + static_cast<unsigned long>(offset);
        Rational q(chosen, BigInt(static_cast<unsigned long>(den)));
        q.canonicalize();
        return q;
    }
    return std::nullopt;
}

} // namespace detail

// Uniform index in [lo, hi], shared by campaign kernels.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(detail::bounded(rng, lo, hi));
}

struct SampleStats {
    std::uint64_t draws = 0;    // candidate matrices (n <= 4) or columns (n >= 5)
    std::uint64_t accepted = 0;

    double acceptance_rate() const {
        return draws == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(draws);
    }
};

// Uniform-rational sample from the admissible similarity domain. For n <= 4
// whole matrices are drawn from the grid and rejected until all triangle
// constraints hold. For n >= 5 whole-matrix rejection is hopeless, so points
// are added one at a time with each new entry drawn from its exact feasible
// interval [max_j Zij Zjk, min_j min(Zij/Zjk, Zjk/Zij)]; empty intervals
// reject the column. Deterministic per (seed, stream).
inline SimilaritySpace<Rational> random_similarity(std::size_t n, const GeneratorConfig& cfg,
                                                   std::mt19937_64& rng,
                                                   SampleStats* stats = nullptr) {
    if (n < 1) throw std::invalid_argument("random_similarity: n must be >= 1");
    if (cfg.denominator_bound < 2)
        throw std::invalid_argument("random_similarity: denominator bound must be >= 2");
    SampleStats local;
    SampleStats& st = stats ? *stats : local;

    if (n <= 4) {
        for (unsigned trial = 0; trial < cfg.max_retries; ++trial) {
            ++st.draws;
            Matrix<Rational> z(n, n, Rational(1));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    Rational v = detail::random_unit_rational(rng, cfg.denominator_bound);
                    z(i, j) = v;
                    z(j, i) = v;
                }
            try {
                SimilaritySpace<Rational> s(std::move(z));
                ++st.accepted;
                return s;
            } catch (const ValidationError&) {
            }
        }
        throw ConstructionError("random_similarity: retry budget exhausted (rate " +
                                std::to_string(st.acceptance_rate()) + ")");
    }

    for (unsigned trial = 0; trial < cfg.max_retries; ++trial) {
        Matrix<Rational> z(n, n, Rational(1));
        bool ok = true;
        for (std::size_t k = 1; k < n && ok; ++k) {
            // column of similarities from the new point k to points 0..k-1
            bool column_done = false;
            for (int col_try = 0; col_try < 50 && !column_done; ++col_try) {
                ++st.draws;
                std::vector<Rational> col(k);
                bool feasible = true;
                for (std::size_t i = 0; i < k && feasible; ++i) {
                    Rational lo(0), hi(1);
                    for (std::size_t j = 0; j < i; ++j) {
                        lo = max2<Rational>(lo, Rational(z(i, j) * col[j]));
                        hi = min2<Rational>(hi, min2<Rational>(Rational(z(i, j) / col[j]),
                                                               Rational(col[j] / z(i, j))));
                    }
                    if (lo > hi) {
                        feasible = false;
                        break;
                    }
                    auto v = detail::random_rational_in(rng, cfg.denominator_bound, lo, hi);
                    if (!v) {
                        feasible = false;
                        break;
                    }
                    col[i] = *v;
                }
                if (!feasible) continue;
                for (std::size_t i = 0; i < k; ++i) {
                    z(i, k) = col[i];
                    z(k, i) = col[i];
                }
                column_done = true;
            }
            ok = column_done;
        }
        if (!ok) continue;
        SimilaritySpace<Rational> s(std::move(z)); // validator is the oracle
        ++st.accepted;
        return s;
    }
    throw ConstructionError("random_similarity: retry budget exhausted for n=" +
                            std::to_string(n));
}

inline SimilaritySpace<Rational> random_similarity(std::size_t n, const GeneratorConfig& cfg,
                                                   SampleStats* stats = nullptr) {
    std::mt19937_64 rng = stream_rng(cfg.seed, 0);
    return random_similarity(n, cfg, rng, stats);
}

// Random sample on which point 1 projects through point 3: imposes
// Z(1,k) = Z(1,3) Z(3,k) for every other overlap point k, which forces the
// gating condition (C2a) for the pair (1,2). Revalidates and retries.
inline SimilaritySpace<Rational> gated_similarity(std::size_t n, const GeneratorConfig& cfg,
                                                  std::mt19937_64& rng) {
    if (n < 3) throw std::invalid_argument("gated_similarity: requires n >= 3");
    for (unsigned trial = 0; trial < cfg.max_retries; ++trial) {
        SimilaritySpace<Rational> s = random_similarity(n, cfg, rng);
        Matrix<Rational> z = s.zeta();
        for (std::size_t k = 3; k < n; ++k) {
            Rational v = z(0, 2) * z(2, k);
            z(0, k) = v;
            z(k, 0) = v;
        }
        try {
            return SimilaritySpace<Rational>(std::move(z));
        } catch (const ValidationError&) {
        }
    }
    throw ConstructionError("gated_similarity: retry budget exhausted");
}

// Points on the unit geodesic circle at the given angles (exact rational
// multiples of pi); distances are emitted as float multiples of pi.
inline FiniteMetricSpace<double> geodesic_circle(const std::vector<Rational>& angles_in_pi) {
    const std::size_t n = angles_in_pi.size();
    if (n == 0) throw ValidationError("geodesic_circle: no angles");
    std::vector<Rational> norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational r = angles_in_pi[i] / 2; // angle as a fraction of the full turn
        BigInt fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        norm[i] = (r - Rational(fl)) * 2; // in [0, 2)
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (norm[i] == norm[j])
                throw ValidationError("geodesic_circle: duplicate angles at " +
                                      magnitude::detail::pair_str(i, j));
    Matrix<double> d(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational gap = norm[i] > norm[j] ? Rational(norm[i] - norm[j])
                                             : Rational(norm[j] - norm[i]);
            Rational geo = min2<Rational>(gap, Rational(2 - gap));
            d(i, j) = geo.get_d() * M_PI;
            d(j, i) = d(i, j);
        }
    return FiniteMetricSpace<double>(std::move(d));
}

struct WeightedEdge {
    std::size_t u, v;
    Rational weight;
};

// All-pairs shortest paths of a connected positively weighted graph; the
// triangle inequality holds by construction.
template <typename T>
FiniteMetricSpace<T> graph_metric(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, T>>& edges) {
    if (n == 0) throw ValidationError("graph_metric: empty vertex set");
    Matrix<T> d(n, n, T(0));
    Matrix<char> known(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) known(i, i) = 1;
    for (const auto& [u, v, w] : edges) {
        if (u >= n || v >= n || u == v)
            throw ValidationError("graph_metric: bad edge endpoints");
        if (!(w > T(0))) throw ValidationError("graph_metric: nonpositive edge weight");
        if (!known(u, v) || w < d(u, v)) {
            d(u, v) = w;
            d(v, u) = w;
            known(u, v) = 1;
            known(v, u) = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!known(i, k) || !known(k, j)) continue;
                T cand = d(i, k) + d(k, j);
                if (!known(i, j) || cand < d(i, j)) {
                    d(i, j) = cand;
                    known(i, j) = 1;
                }
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!known(i, j)) throw ValidationError("graph_metric: graph is disconnected");
    return FiniteMetricSpace<T>(std::move(d));
}

// d' = t * d; metric axioms are preserved for any t > 0.
template <typename T>
FiniteMetricSpace<T> scale(const FiniteMetricSpace<T>& space, const T& t) {
    if (!(t > T(0))) throw ValidationError("scale: factor must be positive");
    const std::size_t n = space.size();
    Matrix<T> d(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = t * space.d(i, j);
    return FiniteMetricSpace<T>(std::move(d), space.labels());
}

// Entrywise Z^k: the similarity-coordinate image of scaling distances by the
// integer k, and the only scaling that stays rational.
inline SimilaritySpace<Rational> similarity_power(const SimilaritySpace<Rational>& s,
                                                  unsigned k) {
    if (k == 0) throw ValidationError("similarity_power: exponent must be >= 1");
    const std::size_t n = s.size();
    Matrix<Rational> z(n, n, Rational(1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), s.z(i, j).get_num().get_mpz_t(), k);
                mpz_pow_ui(p.get_den_mpz_t(), s.z(i, j).get_den().get_mpz_t(), k);
                p.canonicalize();
                z(i, j) = p;
            }
    return SimilaritySpace<Rational>(std::move(z), s.labels());
}

// Complete bipartite K(3,2) in similarity coordinates: cross entries z,
// within-part entries z^2 (distances t and 2t for z = e^{-t}).
inline SimilaritySpace<Rational> k32_similarity(const Rational& z) {
    Matrix<Rational> m(5, 5, Rational(1));
    auto set = [&](std::size_t i, std::size_t j, const Rational& v) {
        m(i, j) = v;
        m(j, i) = v;
    };
    const Rational zz = z * z;
    for (std::size_t i : {0, 1, 2})
        for (std::size_t j : {3, 4}) set(i, j, z);
    set(0, 1, zz);
    set(0, 2, zz);
    set(1, 2, zz);
    set(3, 4, zz);
    return SimilaritySpace<Rational>(std::move(m));
}

struct NonPosDefWitness {
    SimilaritySpace<Rational> space;
    Rational z;      // cross-pair similarity of the scaled K(3,2)
    double t;        // the corresponding scale, -log z
    Rational det;    // exact determinant, <= 0
    unsigned tried;  // grid points inspected
};

// Deterministic grid search for a 5-point metric space that is not positive
// definite: sweeps exact rational similarities z = p/q over scaled K(3,2)
// metrics, largest z first per denominator, and returns the first candidate
// with det zeta <= 0. Every 4-point subspace of the witness is checked to be
// positive definite.
inline NonPosDefWitness find_non_posdef_5pt(const GeneratorConfig& cfg) {
    unsigned tried = 0;
    for (unsigned q = 2; q <= cfg.denominator_bound; ++q)
        for (unsigned p = q - 1; p >= 1; --p) {
            Rational z(p, q);
            z.canonicalize();
            if (z.get_den() != q) continue; // already visited in lowest terms
            SimilaritySpace<Rational> cand = k32_similarity(z);
            ++tried;
            Rational det = determinant(cand);
            if (det <= 0) {
                for (std::size_t drop = 0; drop < 5; ++drop) {
                    std::vector<std::size_t> keep;
                    for (std::size_t i = 0; i < 5; ++i)
                        if (i != drop) keep.push_back(i);
                    if (!is_positive_definite(cand.restricted(Subspace(keep))))
                        throw std::logic_error(
                            "find_non_posdef_5pt: a 4-point subspace is not positive definite");
                }
                return NonPosDefWitness{cand, z, -std::log(z.get_d()), det, tried};
            }
        }
    throw ConstructionError("find_non_posdef_5pt: no witness within denominator bound " +
                            std::to_string(cfg.denominator_bound) + " (" +
                            std::to_string(tried) + " candidates)");
}

} // namespace magnitude::spacegen
