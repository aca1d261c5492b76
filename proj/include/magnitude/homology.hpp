#pragma once

#include <array>
#include <map>
#include <vector>

#include "magnitude/matrix.hpp"
#include "magnitude/metric.hpp"

namespace magnitude::homology {

// Combinatorial growth cap for chain enumeration.
inline constexpr int kMaxEnumerationDegree = 4;
// Homology queries additionally need degree k+1 chains.
inline constexpr int kMaxHomologyDegree = 3;

// Basis of the chain group in degree k at length ell: all (k+1)-tuples of
// points with distinct consecutive entries whose consecutive distances sum to
// ell. Tuples are enumerated in lexicographic order.
template <typename T>
struct ChainBasis {
    int degree = 0;
    T length{};
    std::vector<std::vector<std::size_t>> tuples;

    std::size_t dim() const { return tuples.size(); }
};

namespace detail {

template <typename T>
bool length_matches(const T& a, const T& b, double tol) {
    return approx_equal(a, b, tol);
}

template <typename T, typename Visit>
void enumerate_tuples(const FiniteMetricSpace<T>& space, int k, Visit&& visit) {
    const std::size_t n = space.size();
    std::vector<std::size_t> tuple;
    tuple.reserve(k + 1);
    T len(0);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(tuple.size()) == k + 1) {
            visit(tuple, len);
            return;
        }
        for (std::size_t p = 0; p < n; ++p) {
            if (!tuple.empty() && tuple.back() == p) continue;
            T step = tuple.empty() ? T(0) : space.d(tuple.back(), p);
            tuple.push_back(p);
            len += step;
            self(self);
            len -= step;
            tuple.pop_back();
        }
    };
    rec(rec);
}

} // namespace detail

// All attainable total lengths of admissible (k+1)-tuples, sorted; float mode
// merges values closer than tol.
template <typename T>
std::vector<T> length_spectrum(const FiniteMetricSpace<T>& space, int k,
                               double tol = kGateTolerance) {
    if (k < 0) throw std::invalid_argument("length_spectrum: negative degree");
    if (k > kMaxEnumerationDegree)
        throw std::invalid_argument("length_spectrum: degree capped at " +
                                    std::to_string(kMaxEnumerationDegree));
    std::vector<T> lengths;
    detail::enumerate_tuples(space, k, [&](const std::vector<std::size_t>&, const T& len) {
        lengths.push_back(len);
    });
    std::sort(lengths.begin(), lengths.end());
    std::vector<T> out;
    for (const T& v : lengths)
        if (out.empty() || !detail::length_matches(out.back(), v, tol)) out.push_back(v);
    return out;
}

template <typename T>
ChainBasis<T> chain_basis(const FiniteMetricSpace<T>& space, int k, const T& ell,
                          double tol = kGateTolerance) {
    if (k < 0) throw std::invalid_argument("chain_basis: negative degree");
    if (k > kMaxEnumerationDegree)
        throw std::invalid_argument("chain_basis: degree capped at " +
                                    std::to_string(kMaxEnumerationDegree));
    ChainBasis<T> basis;
    basis.degree = k;
    basis.length = ell;
    detail::enumerate_tuples(space, k, [&](const std::vector<std::size_t>& t, const T& len) {
        if (detail::length_matches(len, ell, tol)) basis.tuples.push_back(t);
    });
    return basis;
}

// Matrix of the differential from the `from` basis (degree k) to the `to`
// basis (degree k-1), over the integers. The differential drops interior
// points with alternating signs, keeping a face only when the drop preserves
// the total length, i.e. d(x_{i-1}, x_i) + d(x_i, x_{i+1}) = d(x_{i-1}, x_{i+1}).
template <typename T>
Matrix<BigInt> boundary_matrix(const FiniteMetricSpace<T>& space, const ChainBasis<T>& from,
                               const ChainBasis<T>& to, double tol = kGateTolerance) {
    if (to.degree != from.degree - 1)
        throw std::invalid_argument("boundary_matrix: degree mismatch");
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t c = 0; c < to.tuples.size(); ++c) index[to.tuples[c]] = c;

    Matrix<BigInt> m(to.dim(), from.dim(), BigInt(0));
    const int k = from.degree;
    for (std::size_t col = 0; col < from.tuples.size(); ++col) {
        const auto& t = from.tuples[col];
        for (int i = 1; i <= k - 1; ++i) {
            const std::size_t prev = t[i - 1], mid = t[i], next = t[i + 1];
            T through = space.d(prev, mid) + space.d(mid, next);
            if (!detail::length_matches(through, space.d(prev, next), tol)) continue;
            std::vector<std::size_t> face = t;
            face.erase(face.begin() + i);
            auto it = index.find(face);
            if (it == index.end())
                throw std::logic_error("boundary_matrix: face missing from target basis");
            m(it->second, col) += (i % 2 == 0) ? BigInt(1) : BigInt(-1);
        }
    }
    return m;
}

// Convenience overload building both bases at length ell.
template <typename T>
Matrix<BigInt> boundary_matrix(const FiniteMetricSpace<T>& space, int k, const T& ell,
                               double tol = kGateTolerance) {
    if (k < 1) throw std::invalid_argument("boundary_matrix: requires degree >= 1");
    return boundary_matrix(space, chain_basis(space, k, ell, tol),
                           chain_basis(space, k - 1, ell, tol), tol);
}

// Invariant factors d1 | d2 | ... of an integer matrix (nonnegative, zero
// factors dropped). Pivot selection by minimal absolute value keeps the
// intermediate entries small on these desk-scale matrices.
inline std::vector<BigInt> smith_normal_form(Matrix<BigInt> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<BigInt> factors;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // locate the smallest nonzero entry of the trailing submatrix
        std::size_t pr = rows, pc = cols;
        BigInt best(0);
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (m(i, j) == 0) continue;
                BigInt mag = abs(m(i, j));
                if (pr == rows || mag < best) {
                    pr = i;
                    pc = j;
                    best = mag;
                }
            }
        if (pr == rows) break;
        m.swap_rows(t, pr);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pc));

        bool stable = false;
        while (!stable) {
            stable = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                BigInt q = m(i, t) / m(t, t);
                for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) { // remainder smaller than the pivot
                    m.swap_rows(t, i);
                    stable = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                BigInt q = m(t, j) / m(t, t);
                for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, j));
                    stable = false;
                }
            }
            if (stable) {
                // enforce the divisibility chain before advancing
                for (std::size_t i = t + 1; i < rows && stable; ++i)
                    for (std::size_t j = t + 1; j < cols && stable; ++j) {
                        BigInt rem = m(i, j) % m(t, t);
                        if (rem != 0) {
                            for (std::size_t jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
                            stable = false;
                        }
                    }
            }
        }
        factors.push_back(abs(m(t, t)));
        ++t;
    }
    return factors;
}

struct HomologyResult {
    std::size_t rank = 0;
    std::vector<BigInt> torsion; // invariant factors > 1, each dividing the next
    // dims of the chain groups in degrees k-1, k, k+1 at the queried length
    std::array<std::size_t, 3> basis_sizes{0, 0, 0};
};

// Homology of the length-ell chain complex in degree k, via Smith normal
// forms of the two adjacent differentials.
template <typename T>
HomologyResult magnitude_homology(const FiniteMetricSpace<T>& space, int k, const T& ell,
                                  double tol = kGateTolerance) {
    if (k < 0) throw std::invalid_argument("magnitude_homology: negative degree");
    if (k > kMaxHomologyDegree)
        throw std::invalid_argument("magnitude_homology: degree capped at " +
                                    std::to_string(kMaxHomologyDegree));

    ChainBasis<T> below = chain_basis(space, k == 0 ? 0 : k - 1, ell, tol);
    ChainBasis<T> here = chain_basis(space, k, ell, tol);
    ChainBasis<T> above = chain_basis(space, k + 1, ell, tol);

    std::size_t rank_out = 0;
    if (k > 0) {
        auto factors = smith_normal_form(boundary_matrix(space, here, below, tol));
        rank_out = factors.size();
    }
    auto in_factors = smith_normal_form(boundary_matrix(space, above, here, tol));

    HomologyResult r;
    r.rank = here.dim() - rank_out - in_factors.size();
    for (const BigInt& f : in_factors)
        if (f > 1) r.torsion.push_back(f);
    r.basis_sizes = {k == 0 ? std::size_t(0) : below.dim(), here.dim(), above.dim()};
    return r;
}

} // namespace magnitude::homology
