#include "ddwl/heisenberg.hpp"

#include <stdexcept>
#include <string>

namespace ddwl {

Heisenberg::Heisenberg(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null field");
  q_ = field_->order();
  center_.reserve(q_);
  for (std::uint32_t z = 0; z < q_; ++z) center_.push_back(z);
}

GroupElement Heisenberg::mul(const GroupElement& a, const GroupElement& b) const {
  const Field& f = *field_;
  return {f.add(a.x, b.x), f.add(a.y, b.y), f.add(f.add(a.z, b.z), f.mul(a.x, b.y))};
}

GroupElement Heisenberg::inv(const GroupElement& a) const {
  const Field& f = *field_;
  return {f.neg(a.x), f.neg(a.y), f.sub(f.mul(a.x, a.y), a.z)};
}

GroupElement Heisenberg::element(std::uint32_t index) const {
  if (index >= order()) {
    throw std::out_of_range("vertex index " + std::to_string(index) + " out of range");
  }
  return {Fe{index / (q_ * q_)}, Fe{(index / q_) % q_}, Fe{index % q_}};
}

std::uint32_t Heisenberg::mul_index(std::uint32_t a, std::uint32_t b) const {
  return index(mul(element(a), element(b)));
}

std::uint32_t Heisenberg::inv_index(std::uint32_t a) const { return index(inv(element(a))); }

std::vector<GroupElement> Heisenberg::center() const {
  std::vector<GroupElement> out;
  out.reserve(q_);
  for (std::uint32_t z = 0; z < q_; ++z) out.push_back({Fe{0}, Fe{0}, Fe{z}});
  return out;
}

}  // namespace ddwl
