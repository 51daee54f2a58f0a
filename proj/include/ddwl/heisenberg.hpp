#pragma once

#include <cstdint>
#include <vector>

#include "ddwl/gf.hpp"

namespace ddwl {

/// Unitriangular matrix (1 x z; 0 1 y; 0 0 1) of H_3(q).
struct GroupElement {
  Fe x;
  Fe y;
  Fe z;
  bool operator==(const GroupElement&) const = default;
};

/// The Heisenberg group H_3(q) together with its vertex indexing
/// index(x, y, z) = ix * q^2 + iy * q + iz.
class Heisenberg {
 public:
  explicit Heisenberg(FieldPtr field);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return q_ * q_ * q_; }

  GroupElement identity() const { return {}; }
  /// (x1 + x2, y1 + y2, z1 + z2 + x1 * y2)
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  /// (-x, -y, xy - z)
  GroupElement inv(const GroupElement& a) const;

  std::uint32_t index(const GroupElement& g) const {
    return (g.x.index * q_ + g.y.index) * q_ + g.z.index;
  }
  /// Throws std::out_of_range for index >= q^3.
  GroupElement element(std::uint32_t index) const;

  std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_index(std::uint32_t a) const;

  bool is_central(const GroupElement& g) const { return g.x.index == 0 && g.y.index == 0; }
  /// The q elements (0, 0, z) in index order.
  std::vector<GroupElement> center() const;
  const std::vector<std::uint32_t>& center_indices() const { return center_; }

  /// Right coset Zg, identified by (index(x), index(y)); values in [0, q^2).
  std::uint32_t coset_id(const GroupElement& g) const { return g.x.index * q_ + g.y.index; }
  std::uint32_t coset_of_index(std::uint32_t v) const { return v / q_; }

 private:
  FieldPtr field_;
  std::uint32_t q_;
  std::vector<std::uint32_t> center_;
};

}  // namespace ddwl
