#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddwl/construction.hpp"
#include "ddwl/digraph.hpp"

namespace ddwl {

struct DDDParameters {
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda1 = 0;
  std::uint64_t lambda2 = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  bool operator==(const DDDParameters&) const = default;
};

/// (q^3, q^2, 0, q, q^2, q), with k = q^2 - 1 for the loopless companion.
DDDParameters expected_ddd_parameters(std::uint32_t q, bool loopless);

struct PairWitness {
  std::uint32_t a;
  std::uint32_t b;
  std::uint32_t c_in;
  std::uint32_t c_out;
  std::uint32_t c_union;
};

/// Observed values of the common-neighbor counts over unordered pairs {a, b},
/// a != b. c_in counts common dominators, c_out common dominated vertices,
/// c_union vertices of either kind.
struct DDDReport {
  DDDParameters expected;
  std::vector<std::uint32_t> same_in, same_out, same_union;
  std::vector<std::uint32_t> cross_in, cross_out, cross_union;
  std::vector<std::uint32_t> out_degrees, in_degrees;
  bool classes_ok = false;
  bool regular = false;
  bool asymmetric = false;
  bool counts_ok = false;
  std::uint64_t pairs = 0;
  /// First pair in (a, b) order whose per-direction counts differ from the expected ones.
  std::optional<PairWitness> witness;
  bool ok() const { return classes_ok && regular && asymmetric && counts_ok; }
  nlohmann::json to_json() const;
};

enum class DesignKernel { parallel, reference };

/// class_of[v] is v's class. Checks m classes of size n, regularity with
/// degree expected.k, asymmetry, and c_in = c_out = lambda1 on same-class and
/// lambda2 on cross-class pairs.
DDDReport verify_ddd(const Digraph& g, const std::vector<std::uint32_t>& class_of, const DDDParameters& expected,
                     DesignKernel kernel = DesignKernel::parallel);

/// Z-coset ids of every vertex.
std::vector<std::uint32_t> coset_classes(const Heisenberg& group);

/// Points G, blocks X g for g in G (block index = index of g).
class IncidenceStructure {
 public:
  IncidenceStructure(std::uint32_t points, std::vector<std::vector<std::uint32_t>> blocks);
  std::uint32_t points() const { return points_; }
  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
  bool incident(std::uint32_t block, std::uint32_t point) const;
  /// Block x point 0/1 matrix in the digraph text layout.
  Digraph incidence_matrix() const;
  /// Number of blocks through each point.
  std::vector<std::uint32_t> replication() const;

 private:
  std::uint32_t points_;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

IncidenceStructure dev(const Family& family, Fe i);

struct DesignMaps {
  Fe i;
  /// 1 - 16 eps i^2
  Fe det_a;
  /// Point map f(a, b, c) = (a, b, c + (a^2 - eps b^2) i).
  std::vector<std::uint32_t> f;
  /// Block map h, the inverse of g'' -> g_0 given by the matrix A.
  std::vector<std::uint32_t> h;
  /// The forward map g'' -> g_0 itself.
  std::vector<std::uint32_t> h_forward;
};

/// Throws std::logic_error if det(A) = 0 or a map fails to be a bijection.
DesignMaps desiso_maps(const Family& family, Fe i);

/// gamma - gamma_0 = (alpha - alpha_0)(beta + beta_0) / 2
bool in_X0_coset(const Family& family, const GroupElement& g, const GroupElement& g0);

enum class PairCheck { exhaustive, sampled };

struct DesignIsoReport {
  std::uint32_t q = 0;
  std::uint32_t i = 0;
  bool crit_holds = false;
  bool det_a_nonzero = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t failures = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDesignSamples = 1'000'000;
inline constexpr std::uint64_t kDesignSeed = 20240611;

/// Checks g in X_0 g_0 <=> f(g) in X_i h(g_0) over all (g, g_0) or over
/// `samples` fixed-seed pairs.
DesignIsoReport verify_design_iso(const Family& family, Fe i, PairCheck mode = PairCheck::exhaustive,
                                  std::uint64_t samples = kDesignSamples, DesignKernel kernel = DesignKernel::parallel);

/// f maps every block X_0 g_0 onto the block X_i h(g_0), compared as sets.
bool verify_block_images(const Family& family, Fe i);

/// The closed-form membership test agrees with g g_0^-1 in X_0.
struct MembershipReport {
  std::uint64_t pairs = 0;
  std::uint64_t disagreements = 0;
};
MembershipReport check_membership_shortcut(const Family& family, PairCheck mode, std::uint64_t samples = kDesignSamples);

}  // namespace ddwl
