#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tdaee/persistence.hpp"
#include "tdaee/signal.hpp"

namespace tdaee {

// Optimal transport between diagrams a and b augmented with each other's
// diagonal projections. Left index i < |a| is a point of a, i >= |a| the
// diagonal copy for b[i - |a|]; right index j < |b| is a point of b, j >= |b|
// the diagonal copy for a[j - |b|].
struct WassersteinResult {
  double p = 2.0;
  double distance = 0.0;
  double total_cost = 0.0;  // sum of ||x - phi(x)||_inf^p over the matching
  std::vector<std::pair<std::size_t, std::size_t>> matching;
};

// Sup-norm distance from a bar to the diagonal: (death - birth) / 2.
double diagonal_distance(const DiagramPoint& x);
double sup_distance(const DiagramPoint& x, const DiagramPoint& y);

// Exact degree-p Wasserstein distance (Hungarian algorithm on the dense
// augmented cost matrix). Both diagrams must be finite and share a dimension;
// throws DimensionMismatch or InvalidArgument.
WassersteinResult wasserstein_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                       double p = 2.0);

// Bottleneck distance. Essential classes are matched among themselves by
// birth; a different essential count gives infinity.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

// W_D between consecutive diagrams. end_dates[t] is the last date of window
// t; entry t of the result is stamped with end_dates[t + 1]. `threads` > 1
// evaluates pairs concurrently; the output order is unaffected.
SignalSeries consecutive_distances(std::span<const PersistenceDiagram> diagrams,
                                   std::span<const Date> end_dates, double p = 2.0,
                                   unsigned threads = 1);

}  // namespace tdaee
