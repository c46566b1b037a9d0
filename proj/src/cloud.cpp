#include "tdaee/cloud.hpp"

#include <cmath>
#include <string>

#include "tdaee/error.hpp"

namespace tdaee {

PointCloud::PointCloud(std::size_t dimension, std::vector<double> coordinates)
    : dimension_(dimension), coords_(std::move(coordinates)) {
  if (dimension_ == 0 || coords_.size() % dimension_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "coordinate count is not a multiple of dimension");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
  }
}

PointCloud PointCloud::from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point list");
  const std::size_t n = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * n);
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::InvalidArgument, "points differ in dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(n, std::move(coords));
}

PointCloud PointCloud::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw Error(ErrorCode::InvalidArgument, "slice out of range");
  PointCloud out;
  out.dimension_ = dimension_;
  out.coords_.assign(coords_.begin() + static_cast<std::ptrdiff_t>(first * dimension_),
                     coords_.begin() + static_cast<std::ptrdiff_t>((first + count) * dimension_));
  return out;
}

PointCloud build_cloud(const ReturnMatrix& returns) {
  const std::size_t n = returns.rows();
  const std::size_t m = returns.cols();
  if (n == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "empty return matrix");
  std::vector<double> coords(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    check_invariant(returns.values[i].size() == m, "ragged return matrix");
    for (std::size_t j = 0; j < m; ++j) coords[j * n + i] = returns.values[i][j];
  }
  return PointCloud(n, std::move(coords));
}

ReturnMatrix standardize(const ReturnMatrix& returns) {
  ReturnMatrix out = returns;
  for (auto& row : out.values) {
    if (row.empty()) continue;
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(row.size());
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(row.size()));
    for (double& v : row) v = sd > 0.0 ? (v - mean) / sd : v - mean;
  }
  return out;
}

std::size_t window_count(std::size_t cloud_size, const WindowSpec& spec) {
  if (spec.size < 2) throw Error(ErrorCode::InvalidArgument, "window size must be at least 2");
  if (spec.step == 0) throw Error(ErrorCode::InvalidArgument, "window step must be positive");
  if (spec.size > cloud_size) {
    throw Error(ErrorCode::WindowTooLarge,
                "window size " + std::to_string(spec.size) + " exceeds " +
                    std::to_string(cloud_size) + " points");
  }
  return (cloud_size - spec.size) / spec.step + 1;
}

std::vector<Window> windows(const PointCloud& cloud, const WindowSpec& spec) {
  const std::size_t count = window_count(cloud.size(), spec);
  std::vector<Window> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * spec.step;
    out.push_back({start, cloud.slice(start, spec.size)});
  }
  return out;
}

}  // namespace tdaee
