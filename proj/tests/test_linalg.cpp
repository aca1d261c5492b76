#include "doctest.h"

#include "helpers.hpp"
#include "magnitude/homology.hpp"
#include "magnitude/linalg.hpp"

using namespace magnitude;
using testing_support::cofactor_determinant;
using testing_support::rat;

namespace {

Matrix<Rational> random_symmetric(std::size_t n, std::mt19937_64& rng) {
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            long den = 1 + static_cast<long>(rng() % 12);
            long num = static_cast<long>(rng() % 25) - 12;
            m(i, j) = rat(num, den);
            m(j, i) = m(i, j);
        }
    return m;
}

} // namespace

TEST_CASE("bareiss determinant matches the cofactor oracle") {
    std::mt19937_64 rng(4242);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int rep = 0; rep < 60; ++rep) {
            Matrix<Rational> m = random_symmetric(n, rng);
            CHECK(determinant(m) == cofactor_determinant(m));
        }
}

TEST_CASE("determinant handles zero pivots") {
    Matrix<Rational> m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    CHECK(determinant(m) == Rational(-1));
    Matrix<Rational> singular{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(determinant(singular) == Rational(0));
    CHECK(determinant(Matrix<Rational>(0, 0)) == Rational(1));
}

TEST_CASE("float determinant agrees with the exact path") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        Matrix<Rational> m = random_symmetric(4, rng);
        Matrix<double> f(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) f(i, j) = m(i, j).get_d();
        CHECK(determinant(f) == doctest::Approx(determinant(m).get_d()).epsilon(1e-10));
    }
}

TEST_CASE("solve_linear solves and reports singularity") {
    Matrix<Rational> m{{Rational(1), rat(1, 2)}, {rat(1, 2), Rational(1)}};
    Vector<Rational> w = solve_linear(m, Vector<Rational>{Rational(1), Rational(1)});
    CHECK(w[0] == rat(2, 3));
    CHECK(w[1] == rat(2, 3));

    Matrix<Rational> singular{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(solve_linear(singular, Vector<Rational>{Rational(1), Rational(1)}),
                    SingularMatrixError);
}

TEST_CASE("adjugate satisfies M adj(M) = det(M) I, including singular M") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int rep = 0; rep < 20; ++rep) {
            Matrix<Rational> m = random_symmetric(n, rng);
            Matrix<Rational> prod = m * adjugate(m);
            Rational det = determinant(m);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    CHECK(prod(i, j) == (i == j ? det : Rational(0)));
        }
}

TEST_CASE("smith normal form: diagonal, divisibility, and known forms") {
    using homology::smith_normal_form;
    Matrix<BigInt> m{{BigInt(2), BigInt(4), BigInt(4)},
                     {BigInt(-6), BigInt(6), BigInt(12)},
                     {BigInt(10), BigInt(4), BigInt(16)}};
    auto factors = smith_normal_form(m);
    REQUIRE(factors.size() == 3);
    CHECK(factors[0] == 2);
    CHECK(factors[1] == 2);
    CHECK(factors[2] == 156);

    Matrix<BigInt> zero(3, 2, BigInt(0));
    CHECK(smith_normal_form(zero).empty());

    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 40; ++rep) {
        Matrix<BigInt> r(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                r(i, j) = BigInt(static_cast<long>(rng() % 7) - 3);
        auto f = smith_normal_form(r);
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            CHECK(f[i] > 0);
            BigInt rem = f[i + 1] % f[i];
            CHECK(rem == 0);
        }
    }
}
