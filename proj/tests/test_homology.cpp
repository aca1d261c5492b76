#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "magnitude/fixtures.hpp"
#include "magnitude/homology.hpp"

using namespace magnitude;
using namespace magnitude::homology;
using testing_support::rat;

namespace {

const double kEllStar = std::log((std::exp(2.0) + std::exp(1.0)) / 2.0);

// Rational-distance analog of the gluing fixture: unit triangles {1,3,4} and
// {2,3,4} with d(1,2) = t for 1 < t < 2.
FiniteMetricSpace<Rational> mv4_rational(const Rational& t) {
    Matrix<Rational> d(4, 4, Rational(1));
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = 0;
    d(0, 1) = t;
    d(1, 0) = t;
    return FiniteMetricSpace<Rational>(std::move(d));
}

FiniteMetricSpace<Rational> random_graph_space(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 3 + rng() % 3;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1, rat(1 + static_cast<long>(rng() % 4), 2)});
    for (std::size_t extra = 0; extra < n; ++extra) {
        std::size_t u = rng() % n, v = rng() % n;
        if (u != v) edges.push_back({u, v, rat(1 + static_cast<long>(rng() % 6), 2)});
    }
    return spacegen::graph_metric<Rational>(n, edges);
}

} // namespace

TEST_CASE("length spectrum") {
    auto mv = fixtures::mv4_metric();

    auto k0 = length_spectrum(mv, 0);
    CHECK(k0 == std::vector<double>{0.0});

    auto k1 = length_spectrum(mv, 1);
    REQUIRE(k1.size() == 2);
    CHECK(k1[0] == doctest::Approx(1.0));
    CHECK(k1[1] == doctest::Approx(kEllStar));

    auto k2 = length_spectrum(mv, 2);
    REQUIRE(k2.size() == 3);
    CHECK(k2[0] == doctest::Approx(2.0));
    CHECK(k2[1] == doctest::Approx(1.0 + kEllStar));
    CHECK(k2[2] == doctest::Approx(2.0 * kEllStar));

    CHECK_THROWS_AS(length_spectrum(mv, 5), std::invalid_argument);
}

TEST_CASE("degree-1 boundary is the zero map") {
    auto mv = fixtures::mv4_metric();
    auto m = boundary_matrix(mv, 1, kEllStar);
    CHECK(m.cols() == 2); // (1,2) and (2,1)
    CHECK(m.rows() == 0); // no points of length ell*
}

TEST_CASE("boundary drops interior points only on geodesics") {
    auto path = fixtures::path3_metric(); // d(1,3) = d(3,2) = 1, d(1,2) = 2
    auto basis2 = chain_basis(path, 2, Rational(2));
    auto basis1 = chain_basis(path, 1, Rational(2));
    REQUIRE(basis1.tuples ==
            std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}});
    auto m = boundary_matrix(path, basis2, basis1);

    auto col_of = [&](const std::vector<std::size_t>& t) {
        auto it = std::find(basis2.tuples.begin(), basis2.tuples.end(), t);
        REQUIRE(it != basis2.tuples.end());
        return static_cast<std::size_t>(it - basis2.tuples.begin());
    };
    // (1,3,2) maps to -(1,2): the middle point lies on the geodesic
    CHECK(m(0, col_of({0, 2, 1})) == BigInt(-1));
    CHECK(m(1, col_of({0, 2, 1})) == BigInt(0));
    // (1,3,1) has no length-preserving face
    CHECK(m(0, col_of({0, 2, 0})) == BigInt(0));
    CHECK(m(1, col_of({0, 2, 0})) == BigInt(0));
}

TEST_CASE("boundary squared vanishes on random graph metrics") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto space = random_graph_space(1000 + seed);
        for (int k = 2; k <= 3; ++k) {
            auto lengths = length_spectrum(space, k);
            for (const Rational& ell : lengths) {
                auto top = chain_basis(space, k, ell);
                auto mid = chain_basis(space, k - 1, ell);
                auto bottom = chain_basis(space, k - 2, ell);
                Matrix<BigInt> square = boundary_matrix(space, mid, bottom) *
                                        boundary_matrix(space, top, mid);
                for (std::size_t i = 0; i < square.rows(); ++i)
                    for (std::size_t j = 0; j < square.cols(); ++j)
                        CHECK(square(i, j) == BigInt(0));
            }
        }
    }
}

TEST_CASE("the gluing fixture has rank-2 degree-1 homology at ell*") {
    auto mv = fixtures::mv4_metric();
    auto h = magnitude_homology(mv, 1, kEllStar);
    CHECK(h.rank == 2);
    CHECK(h.torsion.empty());
    CHECK(h.basis_sizes[1] == 2);
    CHECK(h.basis_sizes[2] == 0);

    // subspaces A, B, and the overlap see nothing at ell*
    for (auto idx : {Subspace{0, 2, 3}, Subspace{1, 2, 3}, Subspace{2, 3}}) {
        auto sub = mv.restricted(idx);
        CHECK(magnitude_homology(sub, 1, kEllStar).rank == 0);
    }
}

TEST_CASE("degree zero counts points at length zero") {
    auto mv = fixtures::mv4_metric();
    CHECK(magnitude_homology(mv, 0, 0.0).rank == 4);
    CHECK(magnitude_homology(fixtures::path3_metric(), 0, Rational(0)).rank == 3);
}

TEST_CASE("rank 2 is robust across the whole rational parameter window") {
    for (const Rational& t : {rat(3, 2), rat(5, 4), rat(7, 4), rat(101, 100)}) {
        auto space = mv4_rational(t);
        auto h = magnitude_homology(space, 1, t);
        CHECK(h.rank == 2);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("homology is independent of basis enumeration order") {
    auto space = mv4_rational(rat(3, 2));

    for (int k = 1; k <= 2; ++k)
        for (const Rational& ell : length_spectrum(space, k)) {
            auto below = chain_basis(space, k - 1, ell);
            auto here = chain_basis(space, k, ell);
            auto above = chain_basis(space, k + 1, ell);
            auto rank_of = [&](const ChainBasis<Rational>& a, const ChainBasis<Rational>& b,
                               const ChainBasis<Rational>& c) {
                auto out = smith_normal_form(boundary_matrix(space, b, a));
                auto in = smith_normal_form(boundary_matrix(space, c, b));
                return b.dim() - out.size() - in.size();
            };
            std::size_t reference = rank_of(below, here, above);

            std::mt19937_64 rng(99 + k);
            for (int rep = 0; rep < 5; ++rep) {
                auto sb = below, sh = here, sa = above;
                std::shuffle(sb.tuples.begin(), sb.tuples.end(), rng);
                std::shuffle(sh.tuples.begin(), sh.tuples.end(), rng);
                std::shuffle(sa.tuples.begin(), sa.tuples.end(), rng);
                CHECK(rank_of(sb, sh, sa) == reference);
            }
        }
}

TEST_CASE("degree cap is enforced") {
    CHECK_THROWS_AS(magnitude_homology(fixtures::mv4_metric(), 4, 1.0),
                    std::invalid_argument);
}
