#pragma once

#include <cstdint>
#include <vector>

#include "ddwl/digraph.hpp"

namespace ddwl {

using Color = std::uint32_t;

/// Color per ordered vertex pair, row-major. Color ids lie in [0, rank);
/// after a refinement round they are exactly 0..rank-1.
struct PairColoring {
  std::uint32_t n = 0;
  std::vector<Color> color;
  std::uint32_t rank = 0;
  std::uint32_t rounds = 0;

  Color at(std::uint32_t u, std::uint32_t v) const { return color[std::size_t{u} * n + v]; }
  Color& at(std::uint32_t u, std::uint32_t v) { return color[std::size_t{u} * n + v]; }
  std::uint32_t distinct_colors() const;
};

/// Builds a coloring from arbitrary ids; rank becomes max id + 1 (ids are
/// kept as given so two inputs over the same palette stay comparable).
PairColoring coloring_from_ids(std::uint32_t n, std::vector<Color> ids);

/// Classes in this order, unused ones dropped: loopless diagonal, looped
/// diagonal, arc, non-arc.
PairColoring initial_coloring(const Digraph& g);

/// Canonical table of one round: the distinct signatures in new-color order
/// plus the number of pairs receiving each new color. A signature is
/// [old color, key_1, count_1, key_2, count_2, ...] with key = a * r + b for
/// the pair of old colors (a, b) = (c(u,w), c(w,v)), keys ascending.
struct RoundTable {
  std::uint64_t input_rank = 0;
  std::vector<std::vector<std::uint64_t>> signatures;
  std::vector<std::uint64_t> counts;
  bool operator==(const RoundTable&) const = default;
};

using RefinementTrace = std::vector<RoundTable>;

enum class Kernel { parallel, reference };

/// One 2-WL round, OpenMP-parallel over rows. New colors are numbered by the
/// sorted order of (old color, signature).
PairColoring refine_round(const PairColoring& in, RoundTable* table = nullptr);

/// Serial reference for refine_round: sorts the full list of color pairs per
/// vertex pair and names colors through an ordered map. Must agree exactly.
PairColoring refine_round_reference(const PairColoring& in, RoundTable* table = nullptr);

/// Repeats rounds until the number of colors stops growing.
PairColoring stabilize(PairColoring in, Kernel kernel = Kernel::parallel, RefinementTrace* trace = nullptr);

}  // namespace ddwl
