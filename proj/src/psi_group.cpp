#include "ddwl/psi_group.hpp"

#include <stdexcept>

namespace ddwl {

Fe ExtendedIndex::value() const {
  if (infinite_) throw std::logic_error("infinity has no field value");
  return value_;
}

PsiGroup::PsiGroup(FieldPtr field, Fe epsilon) : field_(std::move(field)), epsilon_(epsilon) {
  // 16 = 1 + ... + 1 is a unit because p is odd.
  delta_ = field_->div(epsilon_, field_->from_int(16));
}

PsiGroup::PsiGroup(FieldPtr field, Fe epsilon, Fe delta)
    : field_(std::move(field)), epsilon_(epsilon), delta_(delta) {
  if (delta_ == field_->zero()) throw std::invalid_argument("delta must be nonzero");
}

ExtendedIndex PsiGroup::psi(const ExtendedIndex& i, const ExtendedIndex& j) const {
  if (i.is_infinity()) return j;
  if (j.is_infinity()) return i;
  const Field& f = *field_;
  const Fe sum = f.add(i.value(), j.value());
  if (sum == f.zero()) return ExtendedIndex::infinity();
  return ExtendedIndex::finite(f.div(f.add(f.mul(i.value(), j.value()), delta_), sum));
}

ExtendedIndex PsiGroup::chi(const ExtendedIndex& i) const {
  if (i.is_infinity()) return i;
  return ExtendedIndex::finite(field_->neg(i.value()));
}

ExtendedIndex PsiGroup::power(const ExtendedIndex& i, std::int64_t m) const {
  const ExtendedIndex base = m < 0 ? chi(i) : i;
  std::uint64_t e = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
  e %= size();
  ExtendedIndex acc = identity();
  for (std::uint64_t k = 0; k < e; ++k) acc = psi(acc, base);
  return acc;
}

std::uint32_t PsiGroup::element_order(const ExtendedIndex& i) const {
  ExtendedIndex acc = i;
  std::uint32_t k = 1;
  while (!acc.is_infinity()) {
    acc = psi(acc, i);
    ++k;
    if (k > size()) throw std::logic_error("psi power sequence does not return to the identity");
  }
  return k;
}

std::vector<ExtendedIndex> PsiGroup::elements() const {
  std::vector<ExtendedIndex> out;
  out.reserve(size());
  for (std::uint32_t c = 0; c <= q(); ++c) out.push_back(ExtendedIndex::from_code(c, q()));
  return out;
}

std::vector<ExtendedIndex> PsiGroup::generators() const {
  std::vector<ExtendedIndex> out;
  for (std::uint32_t c = 0; c < q(); ++c) {
    const auto e = ExtendedIndex::finite(Fe{c});
    if (element_order(e) == size()) out.push_back(e);
  }
  return out;
}

std::string PsiGroup::to_string(const ExtendedIndex& i) const {
  return i.is_infinity() ? std::string("inf") : field_->to_string(i.value());
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace ddwl
