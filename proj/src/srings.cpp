#include "ddwl/srings.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ddwl {

SRing::SRing(const Heisenberg& group, Partition cells, std::vector<std::string> names)
    : group_(&group), cells_(std::move(cells)), names_(std::move(names)) {
  const std::uint32_t n = group.order();
  if (names_.size() != cells_.size()) throw std::invalid_argument("one name per cell is required");
  if (cells_.empty() || cells_[0] != std::vector<std::uint32_t>{0}) throw std::invalid_argument("cell 0 must be {e}");
  cell_of_.assign(n, UINT32_MAX);
  for (std::uint32_t k = 0; k < cells_.size(); ++k) {
    std::sort(cells_[k].begin(), cells_[k].end());
    if (cells_[k].empty()) throw std::invalid_argument("empty cell");
    for (std::uint32_t g : cells_[k]) {
      if (g >= n || cell_of_[g] != UINT32_MAX) throw std::invalid_argument("cells do not partition G");
      cell_of_[g] = k;
    }
  }
  if (std::count(cell_of_.begin(), cell_of_.end(), UINT32_MAX) != 0) throw std::invalid_argument("cells do not cover G");
  inverse_.assign(cells_.size(), 0);
  for (std::uint32_t k = 0; k < cells_.size(); ++k) {
    std::vector<std::uint32_t> inv;
    for (std::uint32_t g : cells_[k]) inv.push_back(group.inv_index(g));
    std::sort(inv.begin(), inv.end());
    const std::uint32_t target = cell_of_[inv.front()];
    if (cells_[target] != inv) throw std::invalid_argument("inverse of cell " + names_[k] + " is not a cell");
    inverse_[k] = target;
  }
}

SRing SRing::cyclotomic(const Family& family) {
  std::vector<std::string> names{"{e}"};
  for (std::uint32_t i = 0; i < family.q(); ++i) names.push_back("Y_" + family.field().to_string(Fe{i}));
  names.push_back("Z#");
  return SRing(family.group(), family.basic_sets(), std::move(names));
}

PairColoring SRing::cayley_coloring() const {
  const std::uint32_t n = group_->order();
  std::vector<std::uint32_t> inv(n);
  for (std::uint32_t u = 0; u < n; ++u) inv[u] = group_->inv_index(u);
  std::vector<Color> ids(std::size_t{n} * n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) ids[std::size_t{u} * n + v] = cell_of_[group_->mul_index(v, inv[u])];
  }
  PairColoring c;
  c.n = n;
  c.rank = rank();
  c.color = std::move(ids);
  return c;
}

StructureConstantTensor::StructureConstantTensor(std::vector<std::uint64_t> sizes, std::vector<std::uint32_t> inverse)
    : sizes_(std::move(sizes)), inverse_(std::move(inverse)), c_(sizes_.size() * sizes_.size() * sizes_.size(), 0) {}

namespace {

std::vector<std::uint64_t> counts_at(const SRing& ring, const std::vector<std::uint32_t>& inv, std::uint32_t z) {
  const std::uint32_t r = ring.rank();
  std::vector<std::uint64_t> out(std::size_t{r} * r, 0);
  const std::uint32_t n = ring.group().order();
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t y = ring.group().mul_index(inv[x], z);
    ++out[std::size_t{ring.cell_of(x)} * r + ring.cell_of(y)];
  }
  return out;
}

}  // namespace

StructureConstantTensor structure_constants(const SRing& ring, ConstantsMode mode) {
  const std::uint32_t r = ring.rank();
  const std::uint32_t n = ring.group().order();
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> inverse;
  for (std::uint32_t k = 0; k < r; ++k) {
    sizes.push_back(ring.cell(k).size());
    inverse.push_back(ring.inverse_cell(k));
  }
  StructureConstantTensor out(sizes, inverse);

  std::vector<std::vector<std::uint64_t>> per_cell(r);
  std::vector<std::int64_t> bad(r, -1);

  if (mode == ConstantsMode::full_convolution) {
    std::vector<std::uint64_t> tally(std::size_t{n} * r * r, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        const std::uint32_t z = ring.group().mul_index(x, y);
        ++tally[(std::size_t{z} * r + ring.cell_of(x)) * r + ring.cell_of(y)];
      }
    }
    for (std::uint32_t k = 0; k < r; ++k) {
      auto slice = [&](std::uint32_t z) {
        return std::vector<std::uint64_t>(tally.begin() + std::size_t{z} * r * r, tally.begin() + std::size_t{z + 1} * r * r);
      };
      per_cell[k] = slice(ring.cell(k).front());
      for (std::uint32_t z : ring.cell(k)) {
        if (slice(z) != per_cell[k]) {
          bad[k] = z;
          break;
        }
      }
    }
  } else {
    std::vector<std::uint32_t> inv(n);
    for (std::uint32_t g = 0; g < n; ++g) inv[g] = ring.group().inv_index(g);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t sk = 0; sk < static_cast<std::int64_t>(r); ++sk) {
      const auto k = static_cast<std::uint32_t>(sk);
      const auto& cell = ring.cell(k);
      per_cell[k] = counts_at(ring, inv, cell.front());
      std::vector<std::uint32_t> others;
      if (mode == ConstantsMode::full) {
        others.assign(cell.begin() + 1, cell.end());
      } else if (mode == ConstantsMode::sampled && cell.size() > 1) {
        std::mt19937_64 rng(0x5a11 + k);
        std::uniform_int_distribution<std::size_t> pick(1, cell.size() - 1);
        for (int s = 0; s < 8; ++s) others.push_back(cell[pick(rng)]);
      }
      for (std::uint32_t z : others) {
        if (counts_at(ring, inv, z) != per_cell[k]) {
          bad[k] = z;
          break;
        }
      }
    }
  }

  for (std::uint32_t k = 0; k < r; ++k) {
    if (bad[k] >= 0) {
      throw std::logic_error("constants for cell " + ring.name(k) + " depend on the representative (z = " +
                             std::to_string(bad[k]) + ")");
    }
    for (std::uint32_t x = 0; x < r; ++x) {
      for (std::uint32_t y = 0; y < r; ++y) out.at(x, y, k) = per_cell[k][std::size_t{x} * r + y];
    }
  }
  return out;
}

std::uint64_t expected_constant(const Family& family, Fe i, Fe j, std::uint32_t k) {
  return expected_constant(family, family.psi_group(), i, j, k);
}

std::uint64_t expected_constant(const Family& family, const PsiGroup& psi_group, Fe i, Fe j, std::uint32_t k) {
  const Field& f = family.field();
  const std::uint64_t q = family.q();
  const bool opposite = f.add(i, j) == f.zero();
  if (k == q) return opposite ? 0 : q + 1;
  const Fe kk{k};
  if (opposite) {
    if (kk != i && kk != f.neg(i)) return q;
    return i == f.zero() ? q - 2 : q - 1;
  }
  const auto psi = psi_group.psi(ExtendedIndex::finite(i), ExtendedIndex::finite(j));
  if (!psi.is_infinity() && psi.value() == kk) return 1;
  if (i != j && (kk == i || kk == j)) return q;
  if (i == j && kk == i) return q - 1;
  return q + 1;
}

ConstsReport verify_consts(const Family& family, const StructureConstantTensor& tensor) {
  return verify_consts(family, family.psi_group(), tensor);
}

ConstsReport verify_consts(const Family& family, const PsiGroup& psi, const StructureConstantTensor& tensor) {
  const std::uint32_t q = family.q();
  if (tensor.rank() != q + 2) throw std::invalid_argument("tensor does not have the cyclotomic layout");
  ConstsReport report;
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) {
      for (std::uint32_t k = 0; k <= q; ++k) {
        const std::uint32_t zc = k == q ? family.cell_of_center() : family.cell_of_Y(Fe{k});
        const std::uint64_t got = tensor.at(family.cell_of_Y(Fe{i}), family.cell_of_Y(Fe{j}), zc);
        const std::uint64_t want = expected_constant(family, psi, Fe{i}, Fe{j}, k);
        ++report.compared;
        if (got != want) report.mismatches.push_back({i, j, k, got, want});
      }
    }
  }
  return report;
}

std::optional<Fe> fitted_delta(const Family& family, const StructureConstantTensor& tensor) {
  const Field& f = family.field();
  std::optional<Fe> found;
  for (std::uint32_t k = 0; k < family.q(); ++k) {
    if (tensor.at(family.cell_of_Y(f.zero()), family.cell_of_Y(f.one()), family.cell_of_Y(Fe{k})) != 1) continue;
    if (found) return std::nullopt;
    // psi(0, 1) = delta / 1.
    found = Fe{k};
  }
  return found;
}

TransversalReport verify_transversal(const Family& family, Fe i) {
  const Heisenberg& g = family.group();
  const std::uint32_t n = g.order();
  const std::uint64_t q = family.q();
  const auto x = family.connection_set(i, true);
  std::vector<std::uint64_t> left(n, 0);
  std::vector<std::uint64_t> right(n, 0);
  for (std::uint32_t a : x) {
    for (std::uint32_t b : x) {
      ++left[g.mul_index(a, g.inv_index(b))];
      ++right[g.mul_index(g.inv_index(a), b)];
    }
  }
  TransversalReport rep;
  auto summarize = [&](const std::vector<std::uint64_t>& coef, std::uint64_t& at_e, std::vector<std::uint64_t>& on,
                       std::vector<std::uint64_t>& off) {
    at_e = coef[0];
    for (std::uint32_t v = 1; v < n; ++v) {
      auto& dst = g.is_central(g.element(v)) ? on : off;
      if (std::find(dst.begin(), dst.end(), coef[v]) == dst.end()) dst.push_back(coef[v]);
    }
    std::sort(on.begin(), on.end());
    std::sort(off.begin(), off.end());
    return at_e == q * q && on == std::vector<std::uint64_t>{0} && off == std::vector<std::uint64_t>{q};
  };
  rep.left_ok = summarize(left, rep.left_at_e, rep.left_on_center, rep.left_off_center);
  rep.right_ok = summarize(right, rep.right_at_e, rep.right_on_center, rep.right_off_center);
  return rep;
}

std::vector<std::array<std::uint32_t, 3>> triangle_violations(const StructureConstantTensor& t) {
  std::vector<std::array<std::uint32_t, 3>> out;
  const std::uint32_t r = t.rank();
  for (std::uint32_t x = 0; x < r; ++x) {
    for (std::uint32_t y = 0; y < r; ++y) {
      for (std::uint32_t z = 0; z < r; ++z) {
        const std::uint64_t a = t.size(z) * t.at(x, y, t.inverse(z));
        const std::uint64_t b = t.size(x) * t.at(y, z, t.inverse(x));
        const std::uint64_t c = t.size(y) * t.at(z, x, t.inverse(y));
        if (a != b || b != c) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

std::vector<std::array<std::uint32_t, 2>> mass_violations(const StructureConstantTensor& t) {
  std::vector<std::array<std::uint32_t, 2>> out;
  const std::uint32_t r = t.rank();
  for (std::uint32_t x = 0; x < r; ++x) {
    for (std::uint32_t y = 0; y < r; ++y) {
      std::uint64_t sum = 0;
      for (std::uint32_t z = 0; z < r; ++z) sum += t.at(x, y, z) * t.size(z);
      if (sum != t.size(x) * t.size(y)) out.push_back({x, y});
    }
  }
  return out;
}

bool preserves_constants(const StructureConstantTensor& t, const CellMap& m) {
  const std::uint32_t r = t.rank();
  if (m.size() != r) return false;
  for (std::uint32_t x = 0; x < r; ++x) {
    for (std::uint32_t y = 0; y < r; ++y) {
      for (std::uint32_t z = 0; z < r; ++z) {
        if (t.at(x, y, z) != t.at(m[x], m[y], m[z])) return false;
      }
    }
  }
  return true;
}

namespace {

void extend(const StructureConstantTensor& t, CellMap& m, std::vector<std::uint8_t>& used, std::uint32_t next,
            std::vector<CellMap>& out) {
  const std::uint32_t r = t.rank();
  if (next == r) {
    out.push_back(m);
    return;
  }
  for (std::uint32_t img = 0; img < r; ++img) {
    if (used[img] || t.size(img) != t.size(next)) continue;
    const std::uint32_t inv = t.inverse(next);
    if (inv < next && m[inv] != t.inverse(img)) continue;
    if (inv == next && t.inverse(img) != img) continue;
    m[next] = img;
    bool ok = true;
    for (std::uint32_t a = 0; a <= next && ok; ++a) {
      for (std::uint32_t b = 0; b <= next && ok; ++b) {
        ok = t.at(a, b, next) == t.at(m[a], m[b], img) && t.at(a, next, b) == t.at(m[a], img, m[b]) &&
             t.at(next, a, b) == t.at(img, m[a], m[b]);
      }
    }
    if (ok) {
      used[img] = 1;
      extend(t, m, used, next + 1, out);
      used[img] = 0;
    }
  }
}

}  // namespace

std::vector<CellMap> algebraic_automorphisms(const StructureConstantTensor& t) {
  if (t.rank() > kMaxAlgebraicRank) throw std::invalid_argument("rank exceeds the search cap");
  std::vector<CellMap> out;
  CellMap m(t.rank(), 0);
  std::vector<std::uint8_t> used(t.rank(), 0);
  extend(t, m, used, 0, out);
  return out;
}

bool is_group(const std::vector<CellMap>& maps) {
  if (maps.empty()) return false;
  const std::size_t r = maps.front().size();
  CellMap id(r);
  std::iota(id.begin(), id.end(), 0u);
  if (std::find(maps.begin(), maps.end(), id) == maps.end()) return false;
  for (const auto& a : maps) {
    for (const auto& b : maps) {
      CellMap ab(r);
      for (std::size_t k = 0; k < r; ++k) ab[k] = a[b[k]];
      if (std::find(maps.begin(), maps.end(), ab) == maps.end()) return false;
    }
  }
  return true;
}

CellMap tau_hat(const Family& family, std::int64_t m) { return tau_hat(family, family.psi_group(), m); }

CellMap tau_hat(const Family& family, const PsiGroup& psi, std::int64_t m) {
  const std::uint32_t q = family.q();
  const std::uint64_t mag = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
  if (std::gcd(mag, std::uint64_t{q} + 1) != 1) throw std::invalid_argument("exponent is not coprime to q + 1");
  CellMap out(q + 2);
  out[family.cell_of_identity()] = family.cell_of_identity();
  out[family.cell_of_center()] = family.cell_of_center();
  for (std::uint32_t k = 0; k < q; ++k) {
    const auto img = psi.power(ExtendedIndex::finite(Fe{k}), m);
    out[family.cell_of_Y(Fe{k})] = img.is_infinity() ? family.cell_of_center() : family.cell_of_Y(img.value());
  }
  return out;
}

std::vector<std::int64_t> psi_automorphism_exponents(std::uint32_t q) {
  std::vector<std::int64_t> out;
  for (std::uint32_t m = 1; m <= q; ++m) {
    if (std::gcd(m, q + 1) == 1) out.push_back(m);
  }
  return out;
}

nlohmann::json constants_json(const SRing& ring, const StructureConstantTensor& t, const ConstsReport& report) {
  nlohmann::json out;
  out["q"] = ring.group().q();
  auto cells = nlohmann::json::array();
  for (std::uint32_t k = 0; k < ring.rank(); ++k) cells.push_back({{"name", ring.name(k)}, {"size", ring.cell(k).size()}});
  out["cells"] = std::move(cells);
  auto rows = nlohmann::json::array();
  for (std::uint32_t x = 0; x < t.rank(); ++x) {
    for (std::uint32_t y = 0; y < t.rank(); ++y) {
      for (std::uint32_t z = 0; z < t.rank(); ++z) {
        if (t.at(x, y, z) != 0) rows.push_back({x, y, z, t.at(x, y, z)});
      }
    }
  }
  out["constants"] = std::move(rows);
  auto bad = nlohmann::json::array();
  for (const auto& mm : report.mismatches) {
    bad.push_back({{"i", mm.i}, {"j", mm.j}, {"k", mm.k}, {"computed", mm.computed}, {"expected", mm.expected}});
  }
  out["closed_form_mismatches"] = std::move(bad);
  return out;
}

}  // namespace ddwl
