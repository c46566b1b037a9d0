#include "tdaee/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "tdaee/error.hpp"

namespace tdaee {

double tent(const DiagramPoint& bar, double x) {
  return std::max(0.0, std::min(x - bar.birth, bar.death - x));
}

double PersistenceLandscape::value(std::size_t level, double x) const {
  if (level >= levels.size()) return 0.0;
  const auto& pts = levels[level];
  if (pts.empty() || x <= pts.front().x || x >= pts.back().x) return 0.0;
  const auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                   [](double v, const CriticalPoint& p) { return v < p.x; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.x == lo.x) return hi.y;
  return lo.y + (hi.y - lo.y) * (x - lo.x) / (hi.x - lo.x);
}

PersistenceLandscape build_landscape(const PersistenceDiagram& diagram) {
  PersistenceLandscape out;
  out.dimension = diagram.dimension;
  std::vector<DiagramPoint> bars;
  for (const auto& p : diagram.points) {
    if (!std::isfinite(p.death)) {
      throw Error(ErrorCode::InvalidArgument, "landscape needs finite deaths");
    }
    if (p.death > p.birth) bars.push_back(p);
  }
  if (bars.empty()) return out;

  // Every tent is linear away from its birth, peak and death, and two tents
  // can only cross where a rising side meets a falling side. Between
  // consecutive breakpoints all tents, hence all order statistics, are linear.
  std::vector<double> xs;
  xs.reserve(bars.size() * (bars.size() + 3));
  for (const auto& a : bars) {
    xs.push_back(a.birth);
    xs.push_back(0.5 * (a.birth + a.death));
    xs.push_back(a.death);
    for (const auto& b : bars) {
      const double x = 0.5 * (a.birth + b.death);
      if (x > a.birth && x < b.death) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const std::size_t levels = bars.size();
  std::vector<std::vector<CriticalPoint>> raw(levels);
  for (auto& r : raw) r.reserve(xs.size());
  std::vector<double> values(bars.size());
  for (const double x : xs) {
    for (std::size_t i = 0; i < bars.size(); ++i) values[i] = tent(bars[i], x);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t j = 0; j < levels; ++j) raw[j].push_back({x, values[j]});
  }

  // Keep each level's support plus the points where the slope changes.
  for (auto& level : raw) {
    std::vector<CriticalPoint> kept;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto& p = level[i];
      const bool zero_before = i == 0 || level[i - 1].y == 0.0;
      const bool zero_after = i + 1 == level.size() || level[i + 1].y == 0.0;
      if (p.y == 0.0 && zero_before && zero_after) continue;
      if (i > 0 && i + 1 < level.size() && p.y != 0.0) {
        const auto& a = level[i - 1];
        const auto& b = level[i + 1];
        const double left = (p.y - a.y) / (p.x - a.x);
        const double right = (b.y - p.y) / (b.x - p.x);
        if (std::abs(left - right) <= 1e-9) continue;
      }
      kept.push_back(p);
    }
    if (kept.empty()) break;
    out.levels.push_back(std::move(kept));
  }
  return out;
}

NormValue lp_norm(const PersistenceLandscape& landscape, int p) {
  if (p != 1 && p != 2) throw Error(ErrorCode::InvalidArgument, "p must be 1 or 2");
  double total = 0.0;
  for (const auto& level : landscape.levels) {
    for (std::size_t i = 1; i < level.size(); ++i) {
      const double h = level[i].x - level[i - 1].x;
      const double a = level[i - 1].y;
      const double b = level[i].y;
      total += p == 1 ? 0.5 * h * (a + b) : h * (a * a + a * b + b * b) / 3.0;
    }
  }
  return {p, p == 1 ? total : std::sqrt(total)};
}

void write_landscape_rows(std::ostream& out, const PersistenceLandscape& landscape) {
  char buf[96];
  for (std::size_t j = 0; j < landscape.levels.size(); ++j) {
    for (const auto& pt : landscape.levels[j]) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", j + 1, pt.x, pt.y);
      out << buf;
    }
  }
}

}  // namespace tdaee
