#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "ddwl/construction.hpp"
#include "ddwl/digraph.hpp"
#include "ddwl/heisenberg.hpp"
#include "ddwl/wl_kernels.hpp"

namespace ddwl {

struct TensorEntry {
  Color r;
  Color s;
  Color t;
  std::uint64_t c;
  bool operator==(const TensorEntry&) const = default;
};

/// Nonzero intersection numbers c_{rs}^t, sorted by (r, s, t).
class IntersectionTensor {
 public:
  IntersectionTensor() = default;
  IntersectionTensor(std::uint32_t rank, std::vector<TensorEntry> entries);

  std::uint32_t rank() const { return rank_; }
  const std::vector<TensorEntry>& entries() const { return entries_; }
  std::uint64_t at(Color r, Color s, Color t) const;

 private:
  std::uint32_t rank_ = 0;
  std::vector<TensorEntry> entries_;
};

/// How many (u, v) per color are checked against the representative count.
enum class TensorCheck { full, sampled };

/// A stable pair coloring with its derived data. Construction checks that
/// the coloring is coherent: the diagonal is a union of colors, each color's
/// converse is a color, and c_{rs}^t does not depend on the chosen (u, v).
class CoherentConfiguration {
 public:
  /// Throws std::logic_error if the coloring is not coherent. With `sampled`,
  /// 100 fixed-seed pairs per color are checked (all of them when n <= 64).
  explicit CoherentConfiguration(PairColoring stable, TensorCheck check = TensorCheck::sampled);

  const PairColoring& coloring() const { return coloring_; }
  std::uint32_t n() const { return coloring_.n; }
  std::uint32_t rank() const { return coloring_.rank; }
  std::uint32_t rounds() const { return coloring_.rounds; }
  Color color(std::uint32_t u, std::uint32_t v) const { return coloring_.at(u, v); }

  std::uint64_t valency(Color s) const { return valency_[s]; }
  const std::vector<std::uint64_t>& valencies() const { return valency_; }
  Color converse(Color s) const { return converse_[s]; }
  bool is_diagonal(Color s) const { return fiber_index_[s] >= 0; }

  /// Vertex classes of the diagonal colors, ordered by color id.
  const std::vector<std::vector<std::uint32_t>>& fibers() const { return fibers_; }
  /// Position in fibers() of the fiber containing u.
  std::uint32_t fiber_of_vertex(std::uint32_t u) const { return vertex_fiber_[u]; }
  std::uint32_t left_fiber(Color s) const { return left_[s]; }
  std::uint32_t right_fiber(Color s) const { return right_[s]; }

  const IntersectionTensor& tensor() const { return tensor_; }
  std::uint64_t pairs_checked() const { return pairs_checked_; }

  /// {rank, valencies, tensor: [[r, s, t, c], ...]}
  nlohmann::json tensor_json() const;

 private:
  PairColoring coloring_;
  std::vector<std::uint64_t> valency_;
  std::vector<Color> converse_;
  std::vector<std::int64_t> fiber_index_;
  std::vector<std::vector<std::uint32_t>> fibers_;
  std::vector<std::uint32_t> vertex_fiber_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
  IntersectionTensor tensor_;
  std::uint64_t pairs_checked_ = 0;
};

/// WL(g): stabilized 2-WL coloring of g's initial coloring.
CoherentConfiguration wl_close(const Digraph& g, TensorCheck check = TensorCheck::sampled,
                               Kernel kernel = Kernel::parallel);
/// Stabilizes an arbitrary pair coloring and wraps the result.
CoherentConfiguration close_coloring(const PairColoring& colors, TensorCheck check = TensorCheck::sampled,
                                     Kernel kernel = Kernel::parallel);

/// Cells {g : color(e, g) = c} for a configuration on the group's vertex
/// indexing, normalized.
Partition as_sring_partition(const CoherentConfiguration& cc, const Heisenberg& group);

/// Refinement of cc in which (v, v) starts with a color of its own.
CoherentConfiguration one_point_extension(const CoherentConfiguration& cc, std::uint32_t v,
                                          TensorCheck check = TensorCheck::sampled);

struct WlEquivalence {
  bool equivalent = false;
  /// Stable color multisets on V1 x V1 and V2 x V2, as (color, count) sorted.
  std::vector<std::pair<Color, std::uint64_t>> left;
  std::vector<std::pair<Color, std::uint64_t>> right;
  std::uint32_t union_rank = 0;
};

/// 2-WL on the disjoint union, both arc relations sharing the initial arc color.
/// Throws std::invalid_argument if the vertex counts differ.
WlEquivalence wl_equivalent(const Digraph& g1, const Digraph& g2, Kernel kernel = Kernel::parallel);

/// True iff sigma (a color bijection from cc1 to cc2) carries every c_{rs}^t
/// of cc1 to the same value in cc2. Throws std::invalid_argument on rank
/// mismatch or when sigma is not a bijection of [0, rank).
bool verify_algebraic_map(const CoherentConfiguration& cc1, const CoherentConfiguration& cc2,
                          const std::vector<Color>& sigma);

}  // namespace ddwl
