#pragma once

#include <cmath>
#include <cstdlib>

#include "magnitude/errors.hpp"
#include "magnitude/matrix.hpp"
#include "magnitude/scalar.hpp"

namespace magnitude {

/*
 * Exact determinants use fraction-free (Bareiss) elimination: rows are first
 * scaled to integers by the LCM of their denominators, then eliminated with
 * the two-step cross-multiplication rule whose divisions are exact over Z.
 * Intermediate entries stay minors of the scaled matrix, which keeps the
 * bignum growth polynomial instead of the exponential blow-up of naive
 * rational elimination.
 *
 * Float determinants use ordinary partial-pivot elimination.
 */

inline Rational determinant(Matrix<Rational> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("determinant: non-square");
    if (n == 0) return Rational(1);

    Matrix<BigInt> m(n, n);
    BigInt denom_scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        BigInt row_lcm(1);
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            BigInt f = row_lcm / a(i, j).get_den();
            m(i, j) = a(i, j).get_num() * f;
        }
        denom_scale *= row_lcm;
    }

    int sign = 1;
    BigInt prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m(pivot, k) == 0) ++pivot;
            if (pivot == n) return Rational(0);
            m.swap_rows(k, pivot);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }

    Rational det(sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1), denom_scale);
    det.canonicalize();
    return det;
}

inline double determinant(Matrix<double> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("determinant: non-square");
    if (n == 0) return 1.0;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
        if (a(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            a.swap_rows(k, pivot);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

// Solves a x = rhs. Exact scalars pivot on the first nonzero entry; floats
// use partial pivoting.
template <typename T>
Vector<T> solve_linear(Matrix<T> a, Vector<T> rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n)
        throw std::invalid_argument("solve_linear: size mismatch");

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        if constexpr (is_exact_v<T>) {
            while (pivot < n && a(pivot, k) == 0) ++pivot;
            if (pivot == n) throw SingularMatrixError("singular matrix in solve");
        } else {
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
            if (a(pivot, k) == 0.0) throw SingularMatrixError("singular matrix in solve");
        }
        if (pivot != k) {
            a.swap_rows(k, pivot);
            std::swap(rhs[k], rhs[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == T(0)) continue;
            T f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            rhs[i] -= f * rhs[k];
        }
    }
    Vector<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// Adjugate (transpose of the cofactor matrix); M * adj(M) = det(M) * I even
// when M is singular. Entries come from determinants of minors, so exact
// scalars give the exact adjugate.
template <typename T>
Matrix<T> adjugate(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("adjugate: non-square");
    if (n == 0) return Matrix<T>(0, 0);
    if (n == 1) return Matrix<T>{{T(1)}};
    Matrix<T> adj(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T c = determinant(m.minor_at(i, j));
            adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

} // namespace magnitude
