#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "magnitude/errors.hpp"
#include "magnitude/matrix.hpp"
#include "magnitude/scalar.hpp"

namespace magnitude {

using Labels = std::vector<std::string>;

namespace detail {

inline std::string triple_str(std::size_t i, std::size_t j, std::size_t k) {
    // 1-based in messages, matching the usual point numbering.
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
           std::to_string(k + 1) + ")";
}

inline std::string pair_str(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

} // namespace detail

// Nonempty, strictly increasing point indices into a parent space.
struct Subspace {
    std::vector<std::size_t> indices;

    Subspace() = default;
    Subspace(std::initializer_list<std::size_t> idx) : indices(idx) { normalize(); }
    explicit Subspace(std::vector<std::size_t> idx) : indices(std::move(idx)) { normalize(); }

    std::size_t size() const { return indices.size(); }

    void check_against(std::size_t parent_size) const {
        if (indices.empty()) throw ValidationError("subspace: empty index set");
        if (indices.back() >= parent_size)
            throw ValidationError("subspace: index " + std::to_string(indices.back() + 1) +
                                  " out of range for n=" + std::to_string(parent_size));
    }

    bool contains(std::size_t p) const {
        return std::binary_search(indices.begin(), indices.end(), p);
    }

private:
    void normalize() {
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }
};

// Finite metric space: symmetric nonnegative distances, zero diagonal,
// additive triangle inequality. T is Rational (graph metrics) or double.
template <typename T>
class FiniteMetricSpace {
public:
    FiniteMetricSpace(Matrix<T> d, Labels labels = {}, double tol = kFloatTolerance)
        : d_(std::move(d)), labels_(std::move(labels)) {
        validate(tol);
    }

    std::size_t size() const { return d_.rows(); }
    const Matrix<T>& distances() const { return d_; }
    const T& d(std::size_t i, std::size_t j) const { return d_(i, j); }
    const Labels& labels() const { return labels_; }

    FiniteMetricSpace restricted(const Subspace& sub) const {
        sub.check_against(size());
        Labels sublabels;
        if (!labels_.empty())
            for (auto i : sub.indices) sublabels.push_back(labels_[i]);
        return FiniteMetricSpace(d_.principal(sub.indices), std::move(sublabels));
    }

private:
    void validate(double tol) const {
        const std::size_t n = d_.rows();
        if (n == 0 || d_.cols() != n)
            throw ValidationError("metric: matrix must be square and nonempty");
        if (!labels_.empty() && labels_.size() != n)
            throw ValidationError("metric: label count differs from n");
        const T slack = is_exact_v<T> ? T(0) : T(tol);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(d_(i, i) == T(0)))
                throw ValidationError("metric: nonzero diagonal at point " + std::to_string(i + 1));
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!approx_equal(d_(i, j), d_(j, i), tol))
                    throw ValidationError("metric: asymmetric at " + detail::pair_str(i, j));
                if (!(d_(i, j) > T(0)))
                    throw ValidationError("metric: nonpositive distance at " + detail::pair_str(i, j));
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (d_(i, j) > d_(i, k) + d_(k, j) + slack)
                        throw ValidationError("metric: triangle inequality fails at " +
                                              detail::triple_str(i, j, k));
                }
    }

    Matrix<T> d_;
    Labels labels_;
};

// Similarity coordinates: unit diagonal, symmetric, entries in (0,1), and the
// multiplicative triangle constraint Z(i,j) >= Z(i,k) * Z(k,j).
template <typename T>
class SimilaritySpace {
public:
    SimilaritySpace(Matrix<T> z, Labels labels = {}, double tol = kFloatTolerance)
        : z_(std::move(z)), labels_(std::move(labels)) {
        validate(tol);
    }

    std::size_t size() const { return z_.rows(); }
    const Matrix<T>& zeta() const { return z_; }
    const T& z(std::size_t i, std::size_t j) const { return z_(i, j); }
    const Labels& labels() const { return labels_; }

    SimilaritySpace restricted(const Subspace& sub) const {
        sub.check_against(size());
        Labels sublabels;
        if (!labels_.empty())
            for (auto i : sub.indices) sublabels.push_back(labels_[i]);
        return SimilaritySpace(z_.principal(sub.indices), std::move(sublabels));
    }

    // Copy with one symmetric entry replaced; revalidates.
    SimilaritySpace with_entry(std::size_t i, std::size_t j, const T& value) const {
        Matrix<T> z = z_;
        z(i, j) = value;
        z(j, i) = value;
        return SimilaritySpace(std::move(z), labels_);
    }

private:
    void validate(double tol) const {
        const std::size_t n = z_.rows();
        if (n == 0 || z_.cols() != n)
            throw ValidationError("similarity: matrix must be square and nonempty");
        if (!labels_.empty() && labels_.size() != n)
            throw ValidationError("similarity: label count differs from n");
        const T slack = is_exact_v<T> ? T(0) : T(tol);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(z_(i, i) == T(1)))
                throw ValidationError("similarity: diagonal entry != 1 at point " +
                                      std::to_string(i + 1));
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!approx_equal(z_(i, j), z_(j, i), tol))
                    throw ValidationError("similarity: asymmetric at " + detail::pair_str(i, j));
                if (!(z_(i, j) > T(0) && z_(i, j) < T(1)))
                    throw ValidationError("similarity: entry outside (0,1) at " +
                                          detail::pair_str(i, j));
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    if (z_(i, j) + slack < z_(i, k) * z_(k, j))
                        throw ValidationError("similarity: triangle constraint fails at " +
                                              detail::triple_str(i, j, k));
                }
    }

    Matrix<T> z_;
    Labels labels_;
};

// Factory matching the raw-matrix entry point: returns the space iff all
// invariants hold, raising a ValidationError naming the failure otherwise.
template <typename T>
SimilaritySpace<T> validate_similarity(Matrix<T> z, Labels labels = {},
                                       double tol = kFloatTolerance) {
    return SimilaritySpace<T>(std::move(z), std::move(labels), tol);
}

// Z(i,j) = exp(-d(i,j)). The exponential is irrational in general, so this is
// float-backend only.
inline SimilaritySpace<double> from_distances(const FiniteMetricSpace<double>& space,
                                              double tol = kFloatTolerance) {
    const std::size_t n = space.size();
    Matrix<double> z(n, n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) z(i, j) = std::exp(-space.d(i, j));
    return SimilaritySpace<double>(std::move(z), space.labels(), tol);
}

template <typename T>
SimilaritySpace<T> restrict_space(const SimilaritySpace<T>& space, const Subspace& sub) {
    return space.restricted(sub);
}

inline SimilaritySpace<double> to_float(const SimilaritySpace<Rational>& space) {
    const std::size_t n = space.size();
    Matrix<double> z(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) z(i, j) = space.z(i, j).get_d();
    return SimilaritySpace<double>(std::move(z), space.labels());
}

} // namespace magnitude
