#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ddwl {

/// Largest field order accepted by Field::create unless a caller passes its own cap.
inline constexpr std::uint32_t kDefaultMaxFieldOrder = 729;  // 3^6

/// Field presentation: F_p[t] / (modulus), modulus monic of degree l.
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t l = 0;
  /// Coefficients c_0, ..., c_{l-1}, 1 (lowest degree first).
  std::vector<std::uint32_t> modulus;

  std::uint32_t order() const;
  bool operator==(const FieldSpec&) const = default;
};

/// Element of a Field by its index sum(coeffs[k] * p^k). Carries no field
/// pointer; use FieldElement when mixing fields must be detected.
struct Fe {
  std::uint32_t index = 0;
  auto operator<=>(const Fe&) const = default;
};

/// Arithmetic in F_q for odd q = p^l. Addition and multiplication are served
/// from q x q tables built once from polynomial arithmetic.
class Field {
 public:
  /// Builds F_{p^l} with the lexicographically smallest monic irreducible
  /// modulus. Throws std::invalid_argument for even or composite p, l == 0,
  /// or p^l above max_order.
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t l,
                                             std::uint32_t max_order = kDefaultMaxFieldOrder);

  /// Same as create() but takes the order q and factors it.
  static std::shared_ptr<const Field> of_order(std::uint32_t q,
                                               std::uint32_t max_order = kDefaultMaxFieldOrder);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.l; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }
  /// Image of an integer in the prime subfield.
  Fe from_int(std::int64_t v) const;
  Fe element(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Fe a) const;
  /// Throws std::out_of_range if index >= q.
  Fe at(std::uint32_t index) const;

  Fe add(Fe a, Fe b) const { return Fe{add_[a.index * q_ + b.index]}; }
  Fe sub(Fe a, Fe b) const { return Fe{add_[a.index * q_ + neg_[b.index]]}; }
  Fe neg(Fe a) const { return Fe{neg_[a.index]}; }
  Fe mul(Fe a, Fe b) const { return Fe{mul_[a.index * q_ + b.index]}; }
  /// Throws std::domain_error on zero.
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::uint64_t e) const;
  Fe square(Fe a) const { return mul(a, a); }

  /// a^((q-1)/2) in {0, 1}.
  bool is_square(Fe a) const;

  /// Polynomial-arithmetic product, bypassing the tables. Used to build and
  /// to cross-check them.
  Fe mul_reference(Fe a, Fe b) const;

  std::string to_string(Fe a) const;

 private:
  Field(FieldSpec spec);
  void build_tables();

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Nonsquare of smallest element index.
Fe find_nonsquare(const Field& field);

bool is_prime(std::uint64_t n);
/// (p, l) with q = p^l, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// Exhaustive irreducibility test of a monic polynomial over F_p (lowest
/// coefficient first) by trial division with every monic polynomial of degree
/// at most deg/2.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p);

/// Field element bound to its field. Arithmetic between elements of
/// different fields throws std::invalid_argument.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Fe value);
  FieldElement(FieldPtr field, std::span<const std::uint32_t> coeffs);

  const FieldPtr& field() const { return field_; }
  Fe value() const { return value_; }
  std::uint32_t index() const { return value_.index; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  bool is_square() const { return field_->is_square(value_); }

  bool operator==(const FieldElement& o) const;

 private:
  const Field& same_field(const FieldElement& o) const;

  FieldPtr field_;
  Fe value_;
};

}  // namespace ddwl
