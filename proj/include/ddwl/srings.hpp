#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddwl/construction.hpp"
#include "ddwl/heisenberg.hpp"
#include "ddwl/wl_kernels.hpp"

namespace ddwl {

/// A partition of G into basic sets, cell 0 = {e}, closed under inversion.
class SRing {
 public:
  /// Throws std::invalid_argument unless cells partition G, cell 0 is {e}
  /// and every cell's inverse set is a cell.
  SRing(const Heisenberg& group, Partition cells, std::vector<std::string> names);
  /// cyc(K, G) in the order {e}, Y_0, ..., Y_{q-1}, Z#.
  static SRing cyclotomic(const Family& family);

  const Heisenberg& group() const { return *group_; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(cells_.size()); }
  const Partition& cells() const { return cells_; }
  const std::vector<std::uint32_t>& cell(std::uint32_t k) const { return cells_[k]; }
  const std::string& name(std::uint32_t k) const { return names_[k]; }
  std::uint32_t cell_of(std::uint32_t g) const { return cell_of_[g]; }
  std::uint32_t inverse_cell(std::uint32_t k) const { return inverse_[k]; }

  /// Coloring (u, v) -> cell of v u^-1 of the Cayley scheme.
  PairColoring cayley_coloring() const;

 private:
  const Heisenberg* group_;
  Partition cells_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::uint32_t> inverse_;
};

/// c[X][Y][Z] = |{(x, y) in X x Y : xy = z}| for z in Z.
class StructureConstantTensor {
 public:
  StructureConstantTensor() = default;
  StructureConstantTensor(std::vector<std::uint64_t> sizes, std::vector<std::uint32_t> inverse);

  std::uint32_t rank() const { return static_cast<std::uint32_t>(sizes_.size()); }
  std::uint64_t size(std::uint32_t x) const { return sizes_[x]; }
  const std::vector<std::uint64_t>& sizes() const { return sizes_; }
  std::uint32_t inverse(std::uint32_t x) const { return inverse_[x]; }
  std::uint64_t at(std::uint32_t x, std::uint32_t y, std::uint32_t z) const { return c_[(x * rank() + y) * rank() + z]; }
  std::uint64_t& at(std::uint32_t x, std::uint32_t y, std::uint32_t z) { return c_[(x * rank() + y) * rank() + z]; }
  bool operator==(const StructureConstantTensor&) const = default;

 private:
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint64_t> c_;
};

/// representative: one z per cell. sampled: a few fixed-seed z per cell are
/// recounted. full: every z recounted. full_convolution: serial loop over all
/// (x, y) in G x G, tallied per z.
enum class ConstantsMode { representative, sampled, full, full_convolution };

/// Throws std::logic_error when counts depend on the representative z, i.e.
/// the partition is not an S-ring.
StructureConstantTensor structure_constants(const SRing& ring, ConstantsMode mode = ConstantsMode::sampled);

struct ConstantMismatch {
  std::uint32_t i;
  std::uint32_t j;
  /// Element index of k, or q for Z#.
  std::uint32_t k;
  std::uint64_t computed;
  std::uint64_t expected;
};

struct ConstsReport {
  std::uint64_t compared = 0;
  std::vector<ConstantMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Closed forms for c_{Y_i Y_j}^{Y_k} and c_{Y_i Y_j}^{Z#} over all i, j, k;
/// k = q stands for Z#. The ring must be cyclotomic(family).
std::uint64_t expected_constant(const Family& family, Fe i, Fe j, std::uint32_t k);
ConstsReport verify_consts(const Family& family, const StructureConstantTensor& tensor);
/// The closed forms with psi taken from `psi` instead of the family's own group.
std::uint64_t expected_constant(const Family& family, const PsiGroup& psi, Fe i, Fe j, std::uint32_t k);
ConstsReport verify_consts(const Family& family, const PsiGroup& psi, const StructureConstantTensor& tensor);

/// The delta for which c_{Y_0 Y_1}^{Y_delta} = 1, read off the computed
/// tensor; nullopt if no cell or several cells carry the constant 1.
std::optional<Fe> fitted_delta(const Family& family, const StructureConstantTensor& tensor);

struct TransversalReport {
  /// Coefficients of X X^-1 (left) and X^-1 X (right) at e, their sets on
  /// Z# and on G \ Z.
  std::uint64_t left_at_e = 0;
  std::vector<std::uint64_t> left_on_center;
  std::vector<std::uint64_t> left_off_center;
  std::uint64_t right_at_e = 0;
  std::vector<std::uint64_t> right_on_center;
  std::vector<std::uint64_t> right_off_center;
  bool left_ok = false;
  bool right_ok = false;
  bool ok() const { return left_ok && right_ok; }
};

/// Checks X_i X_i^-1 = q^2 e + q(G - Z) and the mirrored product.
TransversalReport verify_transversal(const Family& family, Fe i);

/// Triangle identity |Z| c_{XY}^{Z*} = |X| c_{YZ}^{X*} = |Y| c_{ZX}^{Y*}; returns violating triples.
std::vector<std::array<std::uint32_t, 3>> triangle_violations(const StructureConstantTensor& t);
/// sum_Z c_{XY}^Z |Z| = |X| |Y|; returns violating pairs.
std::vector<std::array<std::uint32_t, 2>> mass_violations(const StructureConstantTensor& t);

using CellMap = std::vector<std::uint32_t>;

inline constexpr std::uint32_t kMaxAlgebraicRank = 32;

/// All cell bijections preserving sizes, inversion and every constant, in
/// lexicographic order. Throws std::invalid_argument above kMaxAlgebraicRank.
std::vector<CellMap> algebraic_automorphisms(const StructureConstantTensor& t);
bool preserves_constants(const StructureConstantTensor& t, const CellMap& m);
/// True iff the list is closed under composition and contains the identity.
bool is_group(const std::vector<CellMap>& maps);

/// Cell map of i -> i^m on cyclotomic(family): {e} fixed, Y_k -> Y_{k^m}, Y_inf = Z#.
/// Throws std::invalid_argument if gcd(m, q + 1) != 1.
CellMap tau_hat(const Family& family, std::int64_t m);
CellMap tau_hat(const Family& family, const PsiGroup& psi, std::int64_t m);
/// Exponents m in [1, q] coprime to q + 1.
std::vector<std::int64_t> psi_automorphism_exponents(std::uint32_t q);

/// {q, cells: [{name, size}], constants: [[X, Y, Z, c], ...] (nonzero), closed_form_mismatches: [...]}
nlohmann::json constants_json(const SRing& ring, const StructureConstantTensor& t, const ConstsReport& report);

}  // namespace ddwl
