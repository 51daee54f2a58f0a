#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ddwl/digraph.hpp"
#include "ddwl/gf.hpp"
#include "ddwl/heisenberg.hpp"
#include "ddwl/psi_group.hpp"

namespace ddwl {

/// The matrix (alpha beta; eps*beta alpha) of M(eps), (alpha, beta) != (0, 0).
struct MatrixM {
  Fe alpha;
  Fe beta;
  bool operator==(const MatrixM&) const = default;
};

/// rho(M) as a permutation of vertex indices.
struct GroupAutomorphism {
  MatrixM matrix;
  std::vector<std::uint32_t> perm;
};

enum class CheckMode { exhaustive, sampled };

/// A vertex partition; cells hold vertex indices in increasing order.
using Partition = std::vector<std::vector<std::uint32_t>>;

/// Canonical form of a partition: cells sorted internally and by first element.
Partition normalized(Partition p);

/// The objects built over G = H_3(q) for one fixed nonsquare eps: the group K,
/// the basic sets Y_i, the connection sets X_i and the digraphs Gamma_i.
class Family {
 public:
  /// eps defaults to the nonsquare of smallest index.
  explicit Family(FieldPtr field);
  Family(FieldPtr field, Fe epsilon);
  static Family of_order(std::uint32_t q, std::uint32_t max_field_order = kDefaultMaxFieldOrder);

  const Field& field() const { return group_.field(); }
  const FieldPtr& field_ptr() const { return group_.field_ptr(); }
  const Heisenberg& group() const { return group_; }
  const PsiGroup& psi_group() const { return psi_; }
  std::uint32_t q() const { return group_.q(); }
  Fe epsilon() const { return epsilon_; }

  /// F_{alpha,beta}(x, y, z) = ab(x^2/2 + eps y^2/2) + eps b^2 xy + (a^2 - eps b^2) z
  Fe central_part(const MatrixM& m, const GroupElement& g) const;
  /// (ax + eps b y, bx + ay, F_{a,b}(x, y, z)). Throws for the zero matrix.
  GroupElement rho_apply(const MatrixM& m, const GroupElement& g) const;
  /// All q^2 - 1 matrices, ordered by (index(alpha), index(beta)).
  std::vector<MatrixM> matrices() const;

  /// K = {rho(M)}, each checked to be a bijective homomorphism of G. Throws
  /// std::logic_error if one is not. Exhaustive mode checks all q^6 products.
  std::vector<GroupAutomorphism> build_K(CheckMode mode = CheckMode::exhaustive) const;
  /// Orbits of K on G, normalized.
  Partition k_orbits(const std::vector<GroupAutomorphism>& k) const;

  /// gamma_i(a, b) = ab/2 + (a^2 - eps b^2) i
  Fe gamma(Fe i, Fe alpha, Fe beta) const;
  /// Y_i in vertex-index order.
  std::vector<GroupElement> build_Y(Fe i) const;
  /// X_i = Y_i ∪ {e} in vertex-index order.
  std::vector<GroupElement> build_X(Fe i) const;
  std::vector<std::uint32_t> connection_set(Fe i, bool include_identity) const;
  /// z == gamma_i(x, y): membership of g in X_i.
  bool in_X(Fe i, const GroupElement& g) const;

  /// Cay(G, X_i) (include_identity) or Cay(G, Y_i); arc (u, v) iff v u^-1 is
  /// in the connection set. Throws if q^3 exceeds max_vertices.
  Digraph build_cayley(Fe i, bool include_identity = true,
                       std::uint32_t max_vertices = kDefaultMaxVertices) const;
  Digraph cayley(const std::vector<std::uint32_t>& connection,
                 std::uint32_t max_vertices = kDefaultMaxVertices) const;

  /// The analytic basic sets in the fixed cell order {e}, Y_0, ..., Y_{q-1}, Z#.
  Partition basic_sets() const;
  /// Cell position of Y_i, {e} and Z# in basic_sets().
  std::uint32_t cell_of_Y(Fe i) const { return 1 + i.index; }
  std::uint32_t cell_of_identity() const { return 0; }
  std::uint32_t cell_of_center() const { return q() + 1; }

  /// The generator set I of the psi-group, by element index.
  std::vector<Fe> generators_I() const;

 private:
  Heisenberg group_;
  Fe epsilon_;
  Fe half_;
  PsiGroup psi_;
};

}  // namespace ddwl
