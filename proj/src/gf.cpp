#include "ddwl/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ddwl {

namespace {

// Hard ceiling: the tables are q*q entries of uint16.
constexpr std::uint32_t kTableLimit = 4096;

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t k = 0; k <= dm; ++k) {
        a[shift + k] = (a[shift + k] + p - (lead * m[k]) % p) % p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

std::uint32_t FieldSpec::order() const {
  std::uint32_t q = 1;
  for (std::uint32_t k = 0; k < l; ++k) q *= p;
  return q;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t l = 0;
  while (q % p == 0) {
    q /= p;
    ++l;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), l);
}

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  const Poly m(monic.begin(), monic.end());
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // every monic divisor candidate of degree d
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < d; ++k) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t k = 0; k < d; ++k) {
        divisor[k] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      if (poly_mod(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t l, std::uint32_t max_order) {
  if (p % 2 == 0) throw std::invalid_argument("characteristic must be odd, got " + std::to_string(p));
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (l == 0) throw std::invalid_argument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t k = 0; k < l; ++k) {
    q *= p;
    if (q > max_order || q > kTableLimit) {
      throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(l) +
                                  " exceeds the cap " + std::to_string(std::min(max_order, kTableLimit)));
    }
  }

  FieldSpec spec;
  spec.p = p;
  spec.l = l;
  if (l == 1) {
    spec.modulus = {0, 1};
  } else {
    // Enumerate (c_0, ..., c_{l-1}) in lexicographic order, c_0 most significant.
    const std::uint64_t count = q;
    for (std::uint64_t code = 0; code < count && spec.modulus.empty(); ++code) {
      Poly m(l + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t k = l; k-- > 0;) {
        m[k] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      m[l] = 1;
      if (is_irreducible(m, p)) spec.modulus = std::move(m);
    }
    if (spec.modulus.empty()) throw std::logic_error("no irreducible polynomial found");
  }

  auto field = std::shared_ptr<Field>(new Field(std::move(spec)));
  field->build_tables();
  return field;
}

std::shared_ptr<const Field> Field::of_order(std::uint32_t q, std::uint32_t max_order) {
  const auto pl = prime_power(q);
  if (!pl) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return create(pl->first, pl->second, max_order);
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.order()) {}

Fe Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(spec_.p);
  return Fe{static_cast<std::uint32_t>(((v % p) + p) % p)};
}

Fe Field::element(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > spec_.l) throw std::invalid_argument("too many coefficients");
  std::uint32_t idx = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] >= spec_.p) throw std::invalid_argument("coefficient not reduced mod p");
    idx = idx * spec_.p + coeffs[k];
  }
  return Fe{idx};
}

std::vector<std::uint32_t> Field::coeffs(Fe a) const {
  std::vector<std::uint32_t> out(spec_.l);
  std::uint32_t idx = a.index;
  for (std::uint32_t k = 0; k < spec_.l; ++k) {
    out[k] = idx % spec_.p;
    idx /= spec_.p;
  }
  return out;
}

Fe Field::at(std::uint32_t index) const {
  if (index >= q_) throw std::out_of_range("element index " + std::to_string(index) + " out of range");
  return Fe{index};
}

Fe Field::mul_reference(Fe a, Fe b) const {
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  const std::uint32_t p = spec_.p;
  Poly prod(2 * spec_.l, 0);
  for (std::uint32_t i = 0; i < spec_.l; ++i) {
    for (std::uint32_t j = 0; j < spec_.l; ++j) {
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    }
  }
  Poly r = poly_mod(prod, spec_.modulus, p);
  r.resize(spec_.l, 0);
  return element(r);
}

void Field::build_tables() {
  const std::uint32_t q = q_;
  const std::uint32_t p = spec_.p;
  add_.assign(static_cast<std::size_t>(q) * q, 0);
  mul_.assign(static_cast<std::size_t>(q) * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);

  std::vector<std::vector<std::uint32_t>> cs(q);
  for (std::uint32_t a = 0; a < q; ++a) cs[a] = coeffs(Fe{a});

  for (std::uint32_t a = 0; a < q; ++a) {
    std::vector<std::uint32_t> n(spec_.l);
    for (std::uint32_t k = 0; k < spec_.l; ++k) n[k] = (p - cs[a][k]) % p;
    neg_[a] = static_cast<std::uint16_t>(element(n).index);
    for (std::uint32_t b = 0; b < q; ++b) {
      std::vector<std::uint32_t> s(spec_.l);
      for (std::uint32_t k = 0; k < spec_.l; ++k) s[k] = (cs[a][k] + cs[b][k]) % p;
      add_[a * q + b] = static_cast<std::uint16_t>(element(s).index);
      if (b >= a) {
        const auto m = static_cast<std::uint16_t>(mul_reference(Fe{a}, Fe{b}).index);
        mul_[a * q + b] = m;
        mul_[b * q + a] = m;
      }
    }
  }
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 1; b < q; ++b) {
      if (mul_[a * q + b] == 1) {
        inv_[a] = static_cast<std::uint16_t>(b);
        break;
      }
    }
  }
}

Fe Field::inv(Fe a) const {
  if (a.index == 0) throw std::domain_error("inverse of zero");
  return Fe{inv_[a.index]};
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  Fe result = one();
  Fe base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

bool Field::is_square(Fe a) const {
  if (a.index == 0) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

std::string Field::to_string(Fe a) const {
  if (spec_.l == 1) return std::to_string(a.index);
  const auto c = coeffs(a);
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t k = spec_.l; k-- > 0;) {
    if (c[k] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0 || c[k] != 1) os << c[k];
    if (k >= 1) os << 't';
    if (k >= 2) os << '^' << k;
  }
  if (first) os << '0';
  return os.str();
}

Fe find_nonsquare(const Field& field) {
  for (std::uint32_t a = 1; a < field.order(); ++a) {
    if (!field.is_square(Fe{a})) return Fe{a};
  }
  throw std::logic_error("no nonsquare in a field of odd order");
}

FieldElement::FieldElement(FieldPtr field, Fe value) : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("null field");
  field_->at(value_.index);
}

FieldElement::FieldElement(FieldPtr field, std::span<const std::uint32_t> coeffs)
    : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null field");
  value_ = field_->element(coeffs);
}

const Field& FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_ && !(field_->spec() == o.field_->spec())) {
    throw std::invalid_argument("field elements belong to different fields");
  }
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, same_field(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, same_field(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, same_field(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, same_field(o).div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return value_ == o.value_ && same_field(o).order() > 0;
}

}  // namespace ddwl
