#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddwl/gf.hpp"

namespace ddwl {

/// A member of F_q ∪ {∞}. Infinity is a tag, never a field value.
class ExtendedIndex {
 public:
  static ExtendedIndex infinity() { return ExtendedIndex(true, Fe{}); }
  static ExtendedIndex finite(Fe v) { return ExtendedIndex(false, v); }

  bool is_infinity() const { return infinite_; }
  /// Throws std::logic_error on infinity.
  Fe value() const;

  /// Dense code in [0, q]: element index for finite members, q for infinity.
  std::uint32_t code(std::uint32_t q) const { return infinite_ ? q : value_.index; }
  static ExtendedIndex from_code(std::uint32_t code, std::uint32_t q) {
    return code == q ? infinity() : finite(Fe{code});
  }

  bool operator==(const ExtendedIndex& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }

 private:
  ExtendedIndex(bool inf, Fe v) : infinite_(inf), value_(v) {}
  bool infinite_;
  Fe value_;
};

/// F_q ∪ {∞} under psi(i, j) = (ij + delta) / (i + j), delta = eps / 16.
/// Cyclic of order q + 1 with identity ∞ and inverse chi(i) = -i.
class PsiGroup {
 public:
  PsiGroup(FieldPtr field, Fe epsilon);
  /// Same operation with an arbitrary nonzero delta.
  PsiGroup(FieldPtr field, Fe epsilon, Fe delta);

  const Field& field() const { return *field_; }
  std::uint32_t q() const { return field_->order(); }
  std::uint32_t size() const { return q() + 1; }
  Fe epsilon() const { return epsilon_; }
  Fe delta() const { return delta_; }

  ExtendedIndex identity() const { return ExtendedIndex::infinity(); }
  ExtendedIndex psi(const ExtendedIndex& i, const ExtendedIndex& j) const;
  ExtendedIndex chi(const ExtendedIndex& i) const;
  /// i^m under psi; negative m uses chi.
  ExtendedIndex power(const ExtendedIndex& i, std::int64_t m) const;
  std::uint32_t element_order(const ExtendedIndex& i) const;

  /// Members in code order: finite elements by index, then ∞.
  std::vector<ExtendedIndex> elements() const;
  /// Elements of order q + 1, by element index. Never contains ∞.
  std::vector<ExtendedIndex> generators() const;

  std::string to_string(const ExtendedIndex& i) const;

 private:
  FieldPtr field_;
  Fe epsilon_;
  Fe delta_;
};

std::uint64_t euler_phi(std::uint64_t n);

}  // namespace ddwl
