#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "tdaee/rips.hpp"

namespace tdaee {

// Indices into Filtration::simplices.
struct PersistencePair {
  std::size_t birth = 0;
  std::size_t death = 0;
};

struct ReductionResult {
  std::vector<PersistencePair> pairs;
  std::vector<std::size_t> essentials;  // ascending
};

enum class ReductionAlgorithm {
  Standard,  // plain left-to-right column reduction, every column
  Twist,     // top dimension first, clearing pivot rows in the dimension below
};

// Column reduction of the boundary matrix over Z/2.
ReductionResult reduce(const Filtration& filtration,
                       ReductionAlgorithm algorithm = ReductionAlgorithm::Twist);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  double birth = 0.0;
  double death = kInfinity;
  // Set for classes that never die. The death stays infinite until
  // with_finite_deaths() replaces it.
  bool essential = false;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

struct PersistenceDiagram {
  int dimension = 0;
  std::vector<DiagramPoint> points;  // sorted by (birth, death)

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool finite() const;
};

// Diagrams for H0 and H1, in that order. Zero-persistence pairs are dropped.
std::vector<PersistenceDiagram> diagrams(const ReductionResult& result,
                                         const Filtration& filtration);

// Convenience: distance matrix -> filtration -> reduction -> diagrams.
std::vector<PersistenceDiagram> rips_diagrams(const PointCloud& window, int maxdim = 2);

// Replaces every essential death by `substitute` (the filtration threshold
// in the pipeline). Points left with death <= birth are dropped; the
// essential flag is kept.
PersistenceDiagram with_finite_deaths(const PersistenceDiagram& diagram, double substitute);

// CSV rows `window_start,dim,birth,death,essential` (no header).
void write_diagram_rows(std::ostream& out, const std::string& window_start,
                        const PersistenceDiagram& finite_diagram);

}  // namespace tdaee
