#pragma once

#include <random>

#include "magnitude/fixtures.hpp"
#include "magnitude/matrix.hpp"
#include "magnitude/metric.hpp"
#include "magnitude/spacegen.hpp"

namespace testing_support {

using namespace magnitude;

// Independent determinant oracle: recursive cofactor expansion along the
// first row. Deliberately separate from the elimination-based implementation.
template <typename T>
T cofactor_determinant(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    if (n == 1) return m(0, 0);
    T sum(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == T(0)) continue;
        T term = m(0, j) * cofactor_determinant(m.minor_at(0, j));
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

inline SimilaritySpace<Rational> random_space(std::size_t n, std::uint64_t seed,
                                              unsigned bound = 16) {
    spacegen::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.denominator_bound = bound;
    return spacegen::random_similarity(n, cfg);
}

inline Rational rat(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Valid 5-point space with det zeta = 0: bipartite structure with cross
// similarity 3/4, within-part entries 29/50 and 9/16 tuned to kill the
// determinant. Exercises the nonsingularity error paths.
inline SimilaritySpace<Rational> singular5() {
    Matrix<Rational> m(5, 5, Rational(1));
    auto set = [&](std::size_t i, std::size_t j, Rational v) {
        m(i, j) = v;
        m(j, i) = v;
    };
    for (std::size_t i : {0, 1, 2})
        for (std::size_t j : {3, 4}) set(i, j, rat(3, 4));
    set(0, 1, rat(29, 50));
    set(0, 2, rat(29, 50));
    set(1, 2, rat(29, 50));
    set(3, 4, rat(9, 16));
    return SimilaritySpace<Rational>(std::move(m));
}

} // namespace testing_support
