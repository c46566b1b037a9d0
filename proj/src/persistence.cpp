#include "tdaee/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "tdaee/error.hpp"

namespace tdaee {
namespace {

constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

class Binomial {
 public:
  Binomial(std::size_t n, std::size_t k) : k_(k + 1), table_((n + 1) * (k + 1), 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (std::size_t j = 1; j <= std::min(i, k); ++j) {
        at(i, j) = at(i - 1, j - 1) + (j <= i - 1 ? at(i - 1, j) : 0);
      }
    }
  }
  std::size_t operator()(std::size_t n, std::size_t k) const {
    return k > n ? 0 : table_[n * k_ + k];
  }

 private:
  std::size_t& at(std::size_t n, std::size_t k) { return table_[n * k_ + k]; }
  std::size_t k_;
  std::vector<std::size_t> table_;
};

// Combinatorial number system rank of an ascending vertex tuple.
std::size_t simplex_rank(std::span<const std::uint32_t> v, const Binomial& binom) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r += binom(v[i], i + 1);
  return r;
}

// Boundary columns of one dimension, reduced as dense bit vectors over the
// rows of the dimension below.
class DimensionReducer {
 public:
  explicit DimensionReducer(std::size_t rows)
      : words_((rows + 63) / 64), pivot_slot_(rows, kAbsent), work_(words_) {}

  void clear_work() { std::fill(work_.begin(), work_.end(), 0); }
  void set_row(std::uint32_t row) { work_[row / 64] ^= std::uint64_t{1} << (row % 64); }
  bool has_pivot(std::uint32_t row) const { return pivot_slot_[row] != kAbsent; }

  // Reduces the work column against stored pivots. Returns its pivot row,
  // or kAbsent when it reduces to zero. Non-zero columns are stored.
  std::uint32_t reduce_work() {
    std::ptrdiff_t top = static_cast<std::ptrdiff_t>(words_) - 1;
    while (true) {
      while (top >= 0 && work_[static_cast<std::size_t>(top)] == 0) --top;
      if (top < 0) return kAbsent;
      const auto word = work_[static_cast<std::size_t>(top)];
      const auto row = static_cast<std::uint32_t>(top * 64 + 63 - std::countl_zero(word));
      const std::uint32_t slot = pivot_slot_[row];
      if (slot == kAbsent) {
        pivot_slot_[row] = static_cast<std::uint32_t>(pool_.size() / words_);
        pool_.insert(pool_.end(), work_.begin(), work_.end());
        return row;
      }
      const std::uint64_t* other = pool_.data() + static_cast<std::size_t>(slot) * words_;
      for (std::ptrdiff_t k = 0; k <= top; ++k) work_[static_cast<std::size_t>(k)] ^= other[k];
    }
  }

 private:
  std::size_t words_;
  std::vector<std::uint32_t> pivot_slot_;
  std::vector<std::uint64_t> work_;
  std::vector<std::uint64_t> pool_;
};

// Marks the edges (by position in `edges`) that close a cycle when added in
// filtration order; the rest merge two components.
std::vector<char> positive_edges(const std::vector<FilteredSimplex>& simplices,
                                 const std::vector<std::uint32_t>& edges, std::size_t w) {
  std::vector<std::uint32_t> parent(w);
  for (std::size_t v = 0; v < w; ++v) parent[v] = static_cast<std::uint32_t>(v);
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<char> positive(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& s = simplices[edges[e]];
    const auto a = find(s.vertices[0]);
    const auto b = find(s.vertices[1]);
    if (a == b) {
      positive[e] = 1;
    } else {
      parent[std::max(a, b)] = std::min(a, b);
    }
  }
  return positive;
}

}  // namespace

ReductionResult reduce(const Filtration& filtration, ReductionAlgorithm algorithm) {
  const auto& simplices = filtration.simplices;
  const std::size_t n = simplices.size();
  const int maxdim = filtration.maxdim;
  const std::size_t w = filtration.vertex_count;
  if (n == 0 || w == 0) return {};
  const Binomial binom(std::max<std::size_t>(w, 1), static_cast<std::size_t>(maxdim) + 1);

  // Per-dimension filtration indices, in filtration order, and lookup from
  // combinatorial rank to position within the dimension.
  std::vector<std::vector<std::uint32_t>> order(static_cast<std::size_t>(maxdim) + 1);
  std::vector<std::vector<std::uint32_t>> position(static_cast<std::size_t>(maxdim));
  for (int d = 0; d < maxdim; ++d) {
    position[static_cast<std::size_t>(d)].assign(binom(w, static_cast<std::size_t>(d) + 1),
                                                 kAbsent);
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto& s = simplices[idx];
    check_invariant(s.dim >= 0 && s.dim <= maxdim, "simplex dimension out of range");
    auto& ord = order[static_cast<std::size_t>(s.dim)];
    if (s.dim < maxdim) {
      position[static_cast<std::size_t>(s.dim)][simplex_rank(s.vertex_span(), binom)] =
          static_cast<std::uint32_t>(ord.size());
    }
    ord.push_back(static_cast<std::uint32_t>(idx));
  }

  const bool twist = algorithm == ReductionAlgorithm::Twist;
  ReductionResult result;
  std::vector<char> paired(n, 0);
  // cleared[d][pos]: column pos of dimension d is a pivot row of dimension d+1.
  std::vector<std::vector<char>> cleared(static_cast<std::size_t>(maxdim) + 1);
  for (int d = 0; d <= maxdim; ++d) {
    cleared[static_cast<std::size_t>(d)].assign(order[static_cast<std::size_t>(d)].size(), 0);
  }

  std::vector<int> dims;
  for (int d = 1; d <= maxdim; ++d) dims.push_back(d);
  if (twist) std::reverse(dims.begin(), dims.end());

  // In a coned complex H_k vanishes for 0 < k < maxdim, which fixes the rank
  // of every boundary map: rank d1 = w - 1, rank dd = n_(d-1) - rank d(d-1).
  // Once a dimension has that many pivots its remaining columns are zero.
  std::vector<std::size_t> boundary_rank(static_cast<std::size_t>(maxdim) + 1, 0);
  boundary_rank[1] = w - 1;
  for (std::size_t d = 2; d <= static_cast<std::size_t>(maxdim); ++d) {
    boundary_rank[d] = order[d - 1].size() - boundary_rank[d - 1];
  }

  std::array<std::uint32_t, kMaxSimplexDimension> face{};
  for (const int d : dims) {
    const auto du = static_cast<std::size_t>(d);
    const auto& cols = order[du];
    const auto& rows = order[du - 1];
    const auto& face_position = position[du - 1];
    DimensionReducer reducer(rows.size());

    const std::size_t full_rank = boundary_rank[du];
    std::size_t found = 0;

    // Triangle columns can only have positive edges as pivots. A column whose
    // largest edge is already a pivot reduces to zero unless some positive
    // edge before it is still unpaired, so such columns are skipped when no
    // unpaired positive edge precedes their largest edge.
    const bool skip_zero_columns = twist && d == 2;
    std::vector<char> open;
    std::uint32_t first_open = 0;
    if (skip_zero_columns) {
      open = positive_edges(simplices, rows, w);
      while (first_open < open.size() && !open[first_open]) ++first_open;
    }

    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (twist) {
        if (cleared[du][c]) continue;
        if (filtration.coned && found == full_rank) break;
      }
      const auto& s = simplices[cols[c]];
      reducer.clear_work();
      std::uint32_t largest = 0;
      for (int omit = 0; omit <= d; ++omit) {
        std::size_t k = 0;
        for (int v = 0; v <= d; ++v) {
          if (v != omit) face[k++] = s.vertices[static_cast<std::size_t>(v)];
        }
        const std::uint32_t row = face_position[simplex_rank({face.data(), k}, binom)];
        check_invariant(row != kAbsent, "face missing from filtration");
        check_invariant(rows[row] < cols[c], "face does not precede coface");
        reducer.set_row(row);
        largest = std::max(largest, row);
      }
      if (skip_zero_columns && reducer.has_pivot(largest) && first_open >= largest) continue;
      const std::uint32_t pivot = reducer.reduce_work();
      if (pivot == kAbsent) continue;
      ++found;
      cleared[du - 1][pivot] = 1;
      if (skip_zero_columns) {
        check_invariant(open[pivot] != 0, "triangle pivot is not a positive edge");
        open[pivot] = 0;
        while (first_open < open.size() && !open[first_open]) ++first_open;
      }
      result.pairs.push_back({rows[pivot], cols[c]});
      paired[rows[pivot]] = 1;
      paired[cols[c]] = 1;
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) { return a.death < b.death; });
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (!paired[idx]) result.essentials.push_back(idx);
  }
  return result;
}

bool PersistenceDiagram::finite() const {
  return std::all_of(points.begin(), points.end(),
                     [](const DiagramPoint& p) { return p.death != kInfinity; });
}

namespace {

void sort_points(std::vector<DiagramPoint>& points) {
  std::sort(points.begin(), points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.essential < b.essential;
  });
}

}  // namespace

std::vector<PersistenceDiagram> diagrams(const ReductionResult& result,
                                         const Filtration& filtration) {
  const auto& s = filtration.simplices;
  std::vector<PersistenceDiagram> out(2);
  out[0].dimension = 0;
  out[1].dimension = 1;
  for (const auto& pair : result.pairs) {
    check_invariant(pair.birth < s.size() && pair.death < s.size(), "pair index out of range");
    const int k = s[pair.birth].dim;
    check_invariant(s[pair.death].dim == k + 1, "pair dimensions are not adjacent");
    if (k > 1) continue;
    const double b = s[pair.birth].value;
    const double d = s[pair.death].value;
    if (d > b) out[static_cast<std::size_t>(k)].points.push_back({b, d, false});
  }
  for (const auto idx : result.essentials) {
    const int k = s[idx].dim;
    if (k > 1) continue;
    out[static_cast<std::size_t>(k)].points.push_back({s[idx].value, kInfinity, true});
  }
  for (auto& d : out) sort_points(d.points);
  return out;
}

std::vector<PersistenceDiagram> rips_diagrams(const PointCloud& window, int maxdim) {
  const auto filtration = build_filtration(distance_matrix(window), maxdim);
  return diagrams(reduce(filtration), filtration);
}

PersistenceDiagram with_finite_deaths(const PersistenceDiagram& diagram, double substitute) {
  PersistenceDiagram out;
  out.dimension = diagram.dimension;
  for (const auto& p : diagram.points) {
    DiagramPoint q = p;
    if (q.essential || q.death == kInfinity) {
      q.death = substitute;
      q.essential = true;
    }
    if (q.death > q.birth) out.points.push_back(q);
  }
  sort_points(out.points);
  return out;
}

void write_diagram_rows(std::ostream& out, const std::string& window_start,
                        const PersistenceDiagram& finite_diagram) {
  char buf[96];
  for (const auto& p : finite_diagram.points) {
    std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%d\n", finite_diagram.dimension, p.birth,
                  p.death, p.essential ? 1 : 0);
    out << window_start << buf;
  }
}

}  // namespace tdaee
