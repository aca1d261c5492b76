#pragma once

#include <numeric>

#include "magnitude/linalg.hpp"
#include "magnitude/metric.hpp"

namespace magnitude {

template <typename T>
T determinant(const SimilaritySpace<T>& space) {
    return determinant(space.zeta());
}

// Minors of sizes 1..n in order; the last one is the full determinant.
template <typename T>
Vector<T> leading_principal_minors(const SimilaritySpace<T>& space) {
    const std::size_t n = space.size();
    Vector<T> minors;
    minors.reserve(n);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
        idx.push_back(k);
        minors.push_back(determinant(space.zeta().principal(idx)));
    }
    return minors;
}

// Sylvester's criterion; exact comparison in exact mode.
template <typename T>
bool is_positive_definite(const SimilaritySpace<T>& space) {
    for (const T& m : leading_principal_minors(space))
        if (!(m > T(0))) return false;
    return true;
}

// The unique w with zeta * w = vector of ones.
template <typename T>
Vector<T> weighting(const SimilaritySpace<T>& space) {
    try {
        return solve_linear(space.zeta(), Vector<T>(space.size(), T(1)));
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("weighting: zeta matrix is singular (n=" +
                                  std::to_string(space.size()) + ")");
    }
}

template <typename T>
T magnitude_of(const SimilaritySpace<T>& space) {
    Vector<T> w = weighting(space);
    return std::accumulate(w.begin(), w.end(), T(0));
}

// Magnitude by telescoping over the tail subspaces {i+1,...,n}: each step
// contributes (det_tail / det_prev) * (1 - <w_tail, z_i>)^2, and the sum plus
// one equals the magnitude. Every summand is >= 0 on positive definite
// spaces, which is how the Mag(X) >= Mag(Y) >= 1 chain falls out.
template <typename T>
T magnitude_telescoped(const SimilaritySpace<T>& space) {
    const std::size_t n = space.size();
    Vector<T> tail_det(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t p = i; p < n; ++p) idx.push_back(p);
        tail_det[i] = determinant(space.zeta().principal(idx));
        if (tail_det[i] == T(0))
            throw SingularMatrixError("telescoped magnitude: singular tail {" +
                                      std::to_string(i + 1) + ",...," + std::to_string(n) + "}");
    }

    T total(1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        std::vector<std::size_t> tail;
        for (std::size_t p = i + 1; p < n; ++p) tail.push_back(p);
        SimilaritySpace<T> tail_space = space.restricted(Subspace(tail));
        Vector<T> w = weighting(tail_space);
        Vector<T> border(tail.size());
        for (std::size_t p = 0; p < tail.size(); ++p) border[p] = space.z(i, tail[p]);
        T gap = T(1) - dot(w, border);
        total += tail_det[i + 1] / tail_det[i] * gap * gap;
    }
    return total;
}

} // namespace magnitude
