#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "tdaee/persistence.hpp"

namespace tdaee {

struct CriticalPoint {
  double x = 0.0;
  double y = 0.0;
};

// Level j (0-based here, reported 1-based) is the j-th largest tent value
// at each x. Each level is stored as the critical points of a continuous
// piecewise-linear function that starts and ends at y = 0; between stored
// points it is linear, outside them it is zero.
struct PersistenceLandscape {
  int dimension = 0;
  std::vector<std::vector<CriticalPoint>> levels;

  bool empty() const { return levels.empty(); }
  double value(std::size_t level, double x) const;
};

// Tent of a bar: max(0, min(x - birth, death - x)).
double tent(const DiagramPoint& bar, double x);

// Throws InvalidArgument when the diagram has an infinite death.
PersistenceLandscape build_landscape(const PersistenceDiagram& diagram);

struct NormValue {
  int p = 1;
  double value = 0.0;
};

// ||lambda||_p = (sum_j integral lambda_j^p)^(1/p), integrated exactly over
// the linear pieces. p must be 1 or 2.
NormValue lp_norm(const PersistenceLandscape& landscape, int p);

// CSV rows `level,x,y` (1-based level, no header).
void write_landscape_rows(std::ostream& out, const PersistenceLandscape& landscape);

}  // namespace tdaee
