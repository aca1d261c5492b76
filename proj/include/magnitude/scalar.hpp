#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <type_traits>

#include "magnitude/errors.hpp"

namespace magnitude {

// Exact backend: arbitrary-precision rationals. Float backend: double.
using Rational = mpq_class;
using BigInt = mpz_class;

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static const char* name() { return "exact"; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static const char* name() { return "float"; }
};

template <typename T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

// Default tolerance for float-mode equality assertions.
inline constexpr double kFloatTolerance = 1e-10;
// Tolerance for float-mode gate equalities and chain-length matching.
inline constexpr double kGateTolerance = 1e-9;

// std::min/std::max trip over gmpxx expression templates; these force
// materialization to T first.
template <typename T>
T min2(const T& a, const T& b) {
    return b < a ? b : a;
}
template <typename T>
T max2(const T& a, const T& b) {
    return a < b ? b : a;
}

template <typename T>
bool approx_equal(const T& a, const T& b, double tol = kFloatTolerance) {
    if constexpr (is_exact_v<T>) {
        (void)tol;
        return a == b;
    } else {
        return std::fabs(a - b) <= tol;
    }
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Accepts "p/q" or a bare integer "p"; canonicalizes the result.
inline Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw InputError("not a rational: '" + text + "'");
    if (q.get_den() == 0)
        throw InputError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// Always emits the explicit "p/q" form, so "1" serializes as "1/1".
inline std::string fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace magnitude
