#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdaee/ingest.hpp"

namespace tdaee {

// Ordered points in R^n, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dimension, std::vector<double> coordinates);
  static PointCloud from_points(const std::vector<std::vector<double>>& points);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  bool empty() const { return size() == 0; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<const double> coordinates() const { return coords_; }

  // Points [first, first + count) as a new cloud.
  PointCloud slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> coords_;
};

struct WindowSpec {
  std::size_t size = 60;
  std::size_t step = 1;
};

struct Window {
  std::size_t start = 0;  // index of the first point in the parent cloud
  PointCloud points;
};

// Point j is column j of the return matrix.
PointCloud build_cloud(const ReturnMatrix& returns);

// Per-series z-scores of the return matrix (population standard deviation).
// Rows with zero variance are centred only.
ReturnMatrix standardize(const ReturnMatrix& returns);

// floor((m - w) / step) + 1 consecutive slices. Throws WindowTooLarge when
// w > m and InvalidArgument when w < 2 or step == 0.
std::size_t window_count(std::size_t cloud_size, const WindowSpec& spec);
std::vector<Window> windows(const PointCloud& cloud, const WindowSpec& spec);

}  // namespace tdaee
