#include "tdaee/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tdaee/error.hpp"
#include "tdaee/parallel.hpp"

namespace tdaee {

std::string_view to_string(SignalKind kind) noexcept {
  switch (kind) {
    case SignalKind::L1: return "L1";
    case SignalKind::L2: return "L2";
    case SignalKind::WD: return "WD";
  }
  return "?";
}

double diagonal_distance(const DiagramPoint& x) { return 0.5 * (x.death - x.birth); }

double sup_distance(const DiagramPoint& x, const DiagramPoint& y) {
  return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
}

namespace {

// Min-cost perfect matching on a dense square matrix (Hungarian algorithm
// with potentials, O(n^3)). Returns row -> column.
std::vector<std::size_t> hungarian(const std::vector<double>& cost, std::size_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start of each augmenting path.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t r = owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> match(n);
  for (std::size_t c = 1; c <= n; ++c) match[owner[c] - 1] = c - 1;
  return match;
}

void require_finite(const PersistenceDiagram& d) {
  if (!d.finite()) {
    throw Error(ErrorCode::InvalidArgument,
                "diagram has infinite deaths; substitute essential classes first");
  }
}

}  // namespace

namespace {

// Lexicographic order on the point lists, used to orient the problem so that
// W(a, b) and W(b, a) run identical arithmetic.
bool precedes(const PersistenceDiagram& x, const PersistenceDiagram& y) {
  return std::lexicographical_compare(
      x.points.begin(), x.points.end(), y.points.begin(), y.points.end(),
      [](const DiagramPoint& u, const DiagramPoint& v) {
        return u.birth != v.birth ? u.birth < v.birth : u.death < v.death;
      });
}

WassersteinResult solve(const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  WassersteinResult result;
  result.p = p;
  if (n == 0) return result;

  auto power = [p](double x) { return p == 1.0 ? x : std::pow(x, p); };
  std::vector<double> a_diag(na), b_diag(nb);
  for (std::size_t i = 0; i < na; ++i) a_diag[i] = power(diagonal_distance(a.points[i]));
  for (std::size_t j = 0; j < nb; ++j) b_diag[j] = power(diagonal_distance(b.points[j]));

  // Any diagonal copy can absorb any point, so diagonal slots are
  // interchangeable and diagonal-to-diagonal moves are free.
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      cost[i * n + j] = power(sup_distance(a.points[i], b.points[j]));
    }
    for (std::size_t j = nb; j < n; ++j) cost[i * n + j] = a_diag[i];
  }
  for (std::size_t i = na; i < n; ++i) {
    for (std::size_t j = 0; j < nb; ++j) cost[i * n + j] = b_diag[j];
  }

  const auto match = hungarian(cost, n);
  // Summing the pair costs in ascending order makes the total independent of
  // how the matching happens to be listed.
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = cost[i * n + match[i]];
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;

  result.total_cost = total;
  result.distance = p == 1.0 ? total : std::pow(total, 1.0 / p);
  result.matching.reserve(n);
  for (std::size_t i = 0; i < n; ++i) result.matching.emplace_back(i, match[i]);
  return result;
}

}  // namespace

WassersteinResult wasserstein_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                       double p) {
  if (a.dimension != b.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "diagrams have different homology dimensions");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  require_finite(a);
  require_finite(b);
  if (!precedes(b, a)) return solve(a, b, p);
  // Solved as (b, a): left and right index spaces trade places.
  auto result = solve(b, a, p);
  for (auto& [i, j] : result.matching) std::swap(i, j);
  std::sort(result.matching.begin(), result.matching.end());
  return result;
}

namespace {

// Kuhn's augmenting paths on an implicit bipartite graph.
class BipartiteMatcher {
 public:
  template <typename Edge>
  static bool perfect(std::size_t n, Edge edge) {
    std::vector<std::size_t> owner(n, n);
    std::vector<char> seen(n);
    for (std::size_t row = 0; row < n; ++row) {
      std::fill(seen.begin(), seen.end(), 0);
      if (!augment(row, n, edge, owner, seen)) return false;
    }
    return true;
  }

 private:
  template <typename Edge>
  static bool augment(std::size_t row, std::size_t n, Edge& edge,
                      std::vector<std::size_t>& owner, std::vector<char>& seen) {
    for (std::size_t col = 0; col < n; ++col) {
      if (seen[col] || !edge(row, col)) continue;
      seen[col] = 1;
      if (owner[col] == n || augment(owner[col], n, edge, owner, seen)) {
        owner[col] = row;
        return true;
      }
    }
    return false;
  }
};

double finite_bottleneck(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  if (n == 0) return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto& x : a) candidates.push_back(diagonal_distance(x));
  for (const auto& y : b) candidates.push_back(diagonal_distance(y));
  for (const auto& x : a) {
    for (const auto& y : b) candidates.push_back(sup_distance(x, y));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto feasible = [&](double t) {
    // Own-slot construction: a[i] may use diagonal column nb + i, and the
    // diagonal copy of b[k] (row na + k) may take b[k]; diagonal copies
    // match each other freely.
    auto edge = [&](std::size_t row, std::size_t col) {
      if (row < na) {
        if (col < nb) return sup_distance(a[row], b[col]) <= t;
        return col - nb == row && diagonal_distance(a[row]) <= t;
      }
      if (col < nb) return col == row - na && diagonal_distance(b[col]) <= t;
      return true;
    };
    return BipartiteMatcher::perfect(n, edge);
  };

  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.dimension != b.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "diagrams have different homology dimensions");
  }
  std::vector<DiagramPoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& x : a.points) {
    if (std::isfinite(x.death)) fa.push_back(x); else ea.push_back(x.birth);
  }
  for (const auto& y : b.points) {
    if (std::isfinite(y.death)) fb.push_back(y); else eb.push_back(y.birth);
  }
  if (ea.size() != eb.size()) return std::numeric_limits<double>::infinity();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));
  return std::max(essential, finite_bottleneck(fa, fb));
}

SignalSeries consecutive_distances(std::span<const PersistenceDiagram> diagrams,
                                   std::span<const Date> end_dates, double p, unsigned threads) {
  if (diagrams.size() < 2) {
    throw Error(ErrorCode::TooFewDiagrams, "need at least two diagrams");
  }
  if (end_dates.size() != diagrams.size()) {
    throw Error(ErrorCode::InvalidArgument, "one end date per diagram required");
  }
  for (const auto& d : diagrams) {
    if (d.dimension != diagrams.front().dimension) {
      throw Error(ErrorCode::DimensionMismatch, "diagram sequence mixes homology dimensions");
    }
  }
  SignalSeries out;
  out.kind = SignalKind::WD;
  out.params.p = p;
  out.params.dimension = diagrams.front().dimension;
  out.values.resize(diagrams.size() - 1);
  out.times.assign(end_dates.begin() + 1, end_dates.end());
  parallel_for(out.values.size(), threads, [&](std::size_t t) {
    out.values[t] = wasserstein_distance(diagrams[t], diagrams[t + 1], p).distance;
  });
  return out;
}

}  // namespace tdaee
