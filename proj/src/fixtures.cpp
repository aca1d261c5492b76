#include "magnitude/fixtures.hpp"

#include <cmath>

namespace magnitude::fixtures {

SimilaritySpace<Rational> equilateral(std::size_t n, const Rational& z) {
    Matrix<Rational> m(n, n, z);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return SimilaritySpace<Rational>(std::move(m));
}

SimilaritySpace<Rational> q4() {
    return equilateral(4, Rational(1, 2)).with_entry(0, 1, Rational(1, 3));
}

FiniteMetricSpace<double> mv4_metric() {
    const double e = std::exp(1.0);
    const double d12 = std::log((e * e + e) / 2.0);
    Matrix<double> d(4, 4, 1.0);
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = 0.0;
    d(0, 1) = d12;
    d(1, 0) = d12;
    return FiniteMetricSpace<double>(std::move(d));
}

FiniteMetricSpace<double> circle1_metric() {
    return spacegen::geodesic_circle(
        {Rational(0), Rational(3, 4), Rational(1, 2), Rational(-1, 2), Rational(1)});
}

FiniteMetricSpace<double> circle2_metric() {
    return spacegen::geodesic_circle(
        {Rational(0), Rational(1, 2), Rational(1, 4), Rational(-1, 2), Rational(1)});
}

FiniteMetricSpace<Rational> path3_metric() {
    return spacegen::graph_metric<Rational>(
        3, {{0, 2, Rational(1)}, {2, 1, Rational(1)}});
}

bool is_known_fixture(const std::string& name) {
    return name == "q4" || name == "equilateral4" || name == "mv4" || name == "circle1" ||
           name == "circle2" || name == "path3" || name == "k32";
}

} // namespace magnitude::fixtures
