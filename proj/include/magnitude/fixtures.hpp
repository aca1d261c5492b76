#pragma once

#include "magnitude/metric.hpp"
#include "magnitude/spacegen.hpp"

namespace magnitude::fixtures {

// All off-diagonal similarities equal to z.
SimilaritySpace<Rational> equilateral(std::size_t n, const Rational& z);

// Z(1,2) = 1/3 and every other entry 1/2: two equilateral-1/2 triangles glued
// along the edge {3,4}, with the distinguished pair sitting exactly at b0.
SimilaritySpace<Rational> q4();

// Unit-distance triangles {1,3,4} and {2,3,4} with d(1,2) = log((e^2+e)/2).
FiniteMetricSpace<double> mv4_metric();

// Geodesic circle samples at angles (0, 3pi/4, pi/2, -pi/2, pi).
FiniteMetricSpace<double> circle1_metric();
// Geodesic circle samples at angles (0, pi/2, pi/4, -pi/2, pi).
FiniteMetricSpace<double> circle2_metric();

// Path graph 1 - 3 - 2 with unit edges: d(1,3) = d(3,2) = 1, d(1,2) = 2.
FiniteMetricSpace<Rational> path3_metric();

// A fixture by name, written to the space-file schema by the gen subcommand.
// Names: q4, equilateral4, mv4, circle1, circle2, path3, k32.
bool is_known_fixture(const std::string& name);

} // namespace magnitude::fixtures
