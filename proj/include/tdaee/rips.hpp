#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tdaee/cloud.hpp"

namespace tdaee {

// Symmetric matrix with zero diagonal and finite non-negative entries.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // General metric input. Validates symmetry, zero diagonal and finiteness;
  // throws InvalidArgument otherwise. Used for non-Euclidean test metrics.
  static DistanceMatrix from_entries(std::size_t size, std::vector<double> entries);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  double max_entry() const { return max_entry_; }

 private:
  friend DistanceMatrix distance_matrix(const PointCloud& window);

  std::size_t size_ = 0;
  std::vector<double> entries_;
  double max_entry_ = 0.0;
};

// Euclidean distances between all pairs of points.
DistanceMatrix distance_matrix(const PointCloud& window);

inline constexpr int kMaxSimplexDimension = 3;

struct FilteredSimplex {
  std::array<std::uint32_t, kMaxSimplexDimension + 1> vertices{};  // first dim+1 used, ascending
  double value = 0.0;  // diameter: max pairwise distance of the vertices
  int dim = 0;

  std::span<const std::uint32_t> vertex_span() const {
    return {vertices.data(), static_cast<std::size_t>(dim + 1)};
  }
};

// Filtration order: (value, dim, lexicographic vertices). Faces precede cofaces.
bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b);

struct Filtration {
  std::vector<FilteredSimplex> simplices;
  std::size_t vertex_count = 0;
  int maxdim = 0;
  double threshold = 0.0;
  // True when every simplex of dimension <= maxdim on the vertex set is present.
  bool complete = false;
  // True when threshold >= enclosing radius: some vertex is joined to all
  // others, so the complex is a cone and H_k vanishes for 0 < k < maxdim.
  bool coned = false;
};

// min over vertices of the largest distance to any other vertex. Beyond this
// scale the Rips complex is a cone, so truncating a filtration here leaves
// the finite H0 and all H1 persistence pairs of positive length unchanged.
double enclosing_radius(const DistanceMatrix& dm);

// All simplices of dimension <= maxdim with diameter <= threshold. The
// default threshold is the largest matrix entry, which admits every simplex.
// maxdim must lie in [1, kMaxSimplexDimension].
Filtration build_filtration(const DistanceMatrix& dm, int maxdim = 2,
                            std::optional<double> threshold = std::nullopt);

// Debug dump: one simplex per line, `value dim v0 v1 ...`, in filtration order.
void write_filtration(std::ostream& out, const Filtration& filtration);

}  // namespace tdaee
