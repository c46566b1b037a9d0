#pragma once

// Reference computations used only by the tests. None of these share code
// paths with the library routines they check.

#include <random>
#include <utility>
#include <vector>

#include "tdaee/cloud.hpp"
#include "tdaee/persistence.hpp"
#include "tdaee/rips.hpp"

namespace tdaee::oracle {

// Edge weights of a minimum spanning tree (Prim), sorted ascending.
std::vector<double> mst_weights(const DistanceMatrix& dm);

// H1 persistence pairs from ranks of boundary matrices over Z/2 at every
// distinct filtration value, via the inclusion-exclusion of persistent Betti
// numbers. Essential classes have death = +inf. Sorted by (birth, death).
// Intended for at most 8 points.
std::vector<std::pair<double, double>> brute_force_h1(const DistanceMatrix& dm);

// Minimum over all perfect matchings of the diagonal-augmented diagrams of
// sum ||x - phi(x)||_inf^p, by enumerating permutations. Pair costs are
// summed in ascending order.
double brute_force_wasserstein_cost(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                    double p);

// sum_j integral lambda_j^p by the trapezoid rule on a uniform grid of
// spacing `step`, evaluating the k-th largest tent value directly.
double grid_landscape_integral(const PersistenceDiagram& diagram, int p, double step);

PointCloud random_cloud(std::mt19937_64& rng, std::size_t points, std::size_t dimension);

// Finite diagram with up to `max_points` bars, births in [0, 1), lengths in
// (min_length, 1].
PersistenceDiagram random_diagram(std::mt19937_64& rng, std::size_t max_points, int dimension = 1,
                                  double min_length = 0.0);

// Points of a diagram as sorted (birth, death) pairs.
std::vector<std::pair<double, double>> bars(const PersistenceDiagram& d);

}  // namespace tdaee::oracle
