#include "tdaee/rips.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "tdaee/error.hpp"

namespace tdaee {

namespace {
constexpr double kInfinity = std::numeric_limits<double>::infinity();
}  // namespace

DistanceMatrix DistanceMatrix::from_entries(std::size_t size, std::vector<double> entries) {
  if (entries.size() != size * size) {
    throw Error(ErrorCode::InvalidArgument, "distance matrix entry count mismatch");
  }
  DistanceMatrix dm;
  dm.size_ = size;
  dm.entries_ = std::move(entries);
  for (std::size_t i = 0; i < size; ++i) {
    if (dm(i, i) != 0.0) throw Error(ErrorCode::InvalidArgument, "non-zero diagonal");
    for (std::size_t j = i + 1; j < size; ++j) {
      const double d = dm(i, j);
      if (!std::isfinite(d) || d < 0.0 || d != dm(j, i)) {
        throw Error(ErrorCode::InvalidArgument, "distance matrix must be symmetric, finite, >= 0");
      }
      dm.max_entry_ = std::max(dm.max_entry_, d);
    }
  }
  return dm;
}

DistanceMatrix distance_matrix(const PointCloud& window) {
  if (window.empty()) throw Error(ErrorCode::InvalidArgument, "empty window");
  const std::size_t w = window.size();
  DistanceMatrix dm;
  dm.size_ = w;
  dm.entries_.assign(w * w, 0.0);
  for (std::size_t i = 0; i < w; ++i) {
    const auto a = window.point(i);
    for (std::size_t j = i + 1; j < w; ++j) {
      const auto b = window.point(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
      }
      const double d = std::sqrt(sum);
      dm.entries_[i * w + j] = d;
      dm.entries_[j * w + i] = d;
      dm.max_entry_ = std::max(dm.max_entry_, d);
    }
  }
  return dm;
}

bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.dim + 1,
                                      b.vertices.begin(), b.vertices.begin() + b.dim + 1);
}

namespace {

// Stable counting sort of `items` by `key`, where keys lie in [0, buckets).
template <typename T, typename Key>
std::vector<T> bucket_sort(const std::vector<T>& items, std::size_t buckets, Key key) {
  std::vector<std::size_t> start(buckets + 1, 0);
  for (const auto& it : items) ++start[key(it) + 1];
  for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
  std::vector<T> out(items.size());
  for (const auto& it : items) out[start[key(it)]++] = it;
  return out;
}

}  // namespace

Filtration build_filtration(const DistanceMatrix& dm, int maxdim,
                            std::optional<double> threshold) {
  if (maxdim < 1 || maxdim > kMaxSimplexDimension) {
    throw Error(ErrorCode::InvalidArgument, "maxdim must be between 1 and 3");
  }
  if (threshold && !(*threshold >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must be non-negative");
  }
  const auto w = static_cast<std::uint32_t>(dm.size());
  const double limit = threshold.value_or(dm.max_entry());

  Filtration f;
  f.vertex_count = w;
  f.maxdim = maxdim;
  f.threshold = limit;
  f.complete = limit >= dm.max_entry();
  f.coned = limit >= enclosing_radius(dm);

  // Edges in (value, lex) order. Every higher simplex takes the value of its
  // longest edge, so ranking edges by distinct value lets the higher
  // dimensions be ordered by a stable bucket sort of their lexicographic
  // enumeration.
  std::vector<FilteredSimplex> edges;
  for (std::uint32_t i = 0; i < w; ++i) {
    for (std::uint32_t j = i + 1; j < w; ++j) {
      if (dm(i, j) <= limit) edges.push_back({{i, j}, dm(i, j), 1});
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const FilteredSimplex& a, const FilteredSimplex& b) {
                     return a.value < b.value;
                   });
  constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::vector<std::uint32_t> level(static_cast<std::size_t>(w) * w, kNone);
  std::uint32_t levels = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (e > 0 && edges[e].value != edges[e - 1].value) ++levels;
    const auto i = edges[e].vertices[0];
    const auto j = edges[e].vertices[1];
    level[i * w + j] = level[j * w + i] = levels;
  }
  if (!edges.empty()) ++levels;

  std::vector<FilteredSimplex> higher[kMaxSimplexDimension + 1];
  std::vector<std::uint32_t> higher_level[kMaxSimplexDimension + 1];
  for (std::uint32_t i = 0; i < w && maxdim >= 2; ++i) {
    for (std::uint32_t j = i + 1; j < w; ++j) {
      const std::uint32_t lij = level[i * w + j];
      if (lij == kNone) continue;
      for (std::uint32_t k = j + 1; k < w; ++k) {
        const std::uint32_t lik = level[i * w + k];
        const std::uint32_t ljk = level[j * w + k];
        if (lik == kNone || ljk == kNone) continue;
        const std::uint32_t lijk = std::max({lij, lik, ljk});
        const double dijk = std::max({dm(i, j), dm(i, k), dm(j, k)});
        higher[2].push_back({{i, j, k}, dijk, 2});
        higher_level[2].push_back(lijk);
        if (maxdim < 3) continue;
        for (std::uint32_t l = k + 1; l < w; ++l) {
          const std::uint32_t lil = level[i * w + l];
          const std::uint32_t ljl = level[j * w + l];
          const std::uint32_t lkl = level[k * w + l];
          if (lil == kNone || ljl == kNone || lkl == kNone) continue;
          higher[3].push_back({{i, j, k, l},
                               std::max({dijk, dm(i, l), dm(j, l), dm(k, l)}),
                               3});
          higher_level[3].push_back(std::max({lijk, lil, ljl, lkl}));
        }
      }
    }
  }

  // Sorted runs per dimension: vertices, edges, then bucketed higher simplices.
  std::vector<std::vector<FilteredSimplex>> runs;
  runs.emplace_back();
  for (std::uint32_t i = 0; i < w; ++i) {
    FilteredSimplex v;
    v.vertices[0] = i;
    runs.back().push_back(v);
  }
  runs.push_back(std::move(edges));
  for (int d = 2; d <= maxdim; ++d) {
    std::vector<std::size_t> idx(higher[d].size());
    for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = t;
    const auto& lv = higher_level[d];
    idx = bucket_sort(idx, levels, [&lv](std::size_t t) { return lv[t]; });
    std::vector<FilteredSimplex> run;
    run.reserve(idx.size());
    for (const auto t : idx) run.push_back(higher[d][t]);
    runs.push_back(std::move(run));
  }

  // Merge the runs by (value, dim); within a run the order is already final.
  std::size_t total = 0;
  for (const auto& r : runs) total += r.size();
  f.simplices.reserve(total);
  std::vector<std::size_t> head(runs.size(), 0);
  while (f.simplices.size() < total) {
    std::size_t best = runs.size();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (head[r] == runs[r].size()) continue;
      if (best == runs.size() || runs[r][head[r]].value < runs[best][head[best]].value) best = r;
    }
    f.simplices.push_back(runs[best][head[best]++]);
  }
  return f;
}

double enclosing_radius(const DistanceMatrix& dm) {
  double radius = kInfinity;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    double eccentricity = 0.0;
    for (std::size_t j = 0; j < dm.size(); ++j) eccentricity = std::max(eccentricity, dm(i, j));
    radius = std::min(radius, eccentricity);
  }
  return dm.size() == 0 ? 0.0 : radius;
}

void write_filtration(std::ostream& out, const Filtration& filtration) {
  char buf[64];
  for (const auto& s : filtration.simplices) {
    std::snprintf(buf, sizeof buf, "%.17g %d", s.value, s.dim);
    out << buf;
    for (auto v : s.vertex_span()) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace tdaee
