#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddwl/digraph.hpp"
#include "ddwl/wl_kernels.hpp"

namespace ddwl {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct SearchOptions {
  /// Individualization nodes allowed per search before giving up.
  std::uint64_t max_nodes = kDefaultNodeBudget;
};

enum class IsoStatus { isomorphic, non_isomorphic, undetermined };

std::string to_string(IsoStatus s);

struct IsoCertificate {
  IsoStatus status = IsoStatus::undetermined;
  /// Vertex bijection g1 -> g2 when isomorphic.
  std::vector<std::uint32_t> mapping;
  /// Which invariant separated the inputs when non-isomorphic, or why the
  /// search stopped when undetermined.
  std::string invariant_diff;
  std::uint64_t nodes = 0;
  /// {type, mapping?, invariant_diff?}
  nlohmann::json to_json() const;
};

struct AutomorphismGroup {
  bool determined = false;
  /// |Aut|; meaningful only when determined and not overflowed.
  std::uint64_t order = 0;
  bool overflow = false;
  /// Base points of the stabilizer chain and the orbit length at each level.
  std::vector<std::uint32_t> base;
  std::vector<std::uint64_t> orbit_sizes;
  /// Generators found, each verified against the input coloring.
  std::vector<std::vector<std::uint32_t>> generators;
  std::uint64_t nodes = 0;
  /// Orbit labels of the stabilizer of base[0..l) on all vertices, level by level.
  std::vector<std::vector<std::uint32_t>> level_orbits;
};

/// A colored complete digraph prepared for search: its 2-WL stable coloring
/// and refinement trace, plus a lazily computed automorphism group.
class SearchGraph {
 public:
  explicit SearchGraph(const Digraph& g);
  /// Arbitrary pair colors; ids are compared as given across graphs.
  explicit SearchGraph(PairColoring colors);
  ~SearchGraph();
  SearchGraph(SearchGraph&&) noexcept;
  SearchGraph& operator=(SearchGraph&&) noexcept;

  std::uint32_t size() const;
  const PairColoring& input() const;
  const PairColoring& stable() const;
  const RefinementTrace& trace() const;

  /// Computed once; a failed (budget) attempt is retried on a later call.
  const AutomorphismGroup& automorphisms(const SearchOptions& opts = {});

  struct Impl;

 private:
  friend IsoCertificate are_isomorphic(SearchGraph&, SearchGraph&, const SearchOptions&);

  std::unique_ptr<Impl> impl_;
};

/// Colored isomorphism: f with input2(f(u), f(v)) = input1(u, v) for all u, v.
IsoCertificate are_isomorphic(SearchGraph& g1, SearchGraph& g2, const SearchOptions& opts = {});
/// Digraph isomorphism; a returned mapping is checked arc by arc.
IsoCertificate are_isomorphic(const Digraph& g1, const Digraph& g2, const SearchOptions& opts = {});

AutomorphismGroup automorphism_group(const Digraph& g, const SearchOptions& opts = {});

/// True iff perm is a bijection with arc (u, v) <=> arc (perm[u], perm[v]) from g1 to g2.
bool is_isomorphism(const Digraph& g1, const Digraph& g2, const std::vector<std::uint32_t>& perm);

struct IsoClassResult {
  /// Exact class count when `exact`, otherwise a lower bound.
  std::uint32_t classes = 0;
  bool exact = true;
  std::vector<std::uint32_t> class_of;
  /// pairwise[a][b] for a < b; diagonal is isomorphic.
  std::vector<std::vector<IsoStatus>> pairwise;
  /// Whether pairwise[a][b] came from a search rather than transitivity.
  std::vector<std::vector<bool>> tested;
  std::uint64_t nodes = 0;
};

/// Pairwise testing; pairs already joined through earlier isomorphisms are
/// inferred. Undetermined pairs turn the count into a lower bound.
IsoClassResult iso_class_count(const std::vector<Digraph>& graphs, const SearchOptions& opts = {});

}  // namespace ddwl
