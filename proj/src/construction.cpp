#include "ddwl/construction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace ddwl {

Partition normalized(Partition p) {
  for (auto& cell : p) std::sort(cell.begin(), cell.end());
  std::erase_if(p, [](const auto& c) { return c.empty(); });
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

Family::Family(FieldPtr field) : Family(field, find_nonsquare(*field)) {}

Family::Family(FieldPtr field, Fe epsilon)
    : group_(field), epsilon_(epsilon), psi_(field, epsilon) {
  if (field->is_square(epsilon)) throw std::invalid_argument("epsilon must be a nonsquare");
  half_ = field->inv(field->from_int(2));
}

Family Family::of_order(std::uint32_t q, std::uint32_t max_field_order) {
  return Family(Field::of_order(q, max_field_order));
}

Fe Family::central_part(const MatrixM& m, const GroupElement& g) const {
  const Field& f = field();
  const Fe a = m.alpha;
  const Fe b = m.beta;
  const Fe x2_half = f.mul(f.square(g.x), half_);
  const Fe eps_y2_half = f.mul(f.mul(epsilon_, f.square(g.y)), half_);
  const Fe t1 = f.mul(f.mul(a, b), f.add(x2_half, eps_y2_half));
  const Fe t2 = f.mul(f.mul(epsilon_, f.square(b)), f.mul(g.x, g.y));
  const Fe norm = f.sub(f.square(a), f.mul(epsilon_, f.square(b)));
  return f.add(f.add(t1, t2), f.mul(norm, g.z));
}

GroupElement Family::rho_apply(const MatrixM& m, const GroupElement& g) const {
  const Field& f = field();
  if (m.alpha == f.zero() && m.beta == f.zero()) throw std::invalid_argument("M must be nonzero");
  const Fe x = f.add(f.mul(m.alpha, g.x), f.mul(f.mul(epsilon_, m.beta), g.y));
  const Fe y = f.add(f.mul(m.beta, g.x), f.mul(m.alpha, g.y));
  return {x, y, central_part(m, g)};
}

std::vector<MatrixM> Family::matrices() const {
  std::vector<MatrixM> out;
  out.reserve(q() * q() - 1);
  for (std::uint32_t a = 0; a < q(); ++a) {
    for (std::uint32_t b = 0; b < q(); ++b) {
      if (a == 0 && b == 0) continue;
      out.push_back({Fe{a}, Fe{b}});
    }
  }
  return out;
}

std::vector<GroupAutomorphism> Family::build_K(CheckMode mode) const {
  const std::uint32_t n = group_.order();
  std::vector<GroupAutomorphism> out;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);

  for (const auto& m : matrices()) {
    GroupAutomorphism a{m, std::vector<std::uint32_t>(n)};
    std::vector<std::uint8_t> hit(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      const std::uint32_t img = group_.index(rho_apply(m, group_.element(v)));
      a.perm[v] = img;
      if (hit[img]++) throw std::logic_error("rho(M) is not injective");
    }
    auto check = [&](std::uint32_t u, std::uint32_t v) {
      if (a.perm[group_.mul_index(u, v)] != group_.mul_index(a.perm[u], a.perm[v])) {
        throw std::logic_error("rho(M) is not a homomorphism at (" + std::to_string(u) + ", " +
                               std::to_string(v) + ")");
      }
    };
    if (mode == CheckMode::exhaustive) {
      for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = 0; v < n; ++v) check(u, v);
      }
    } else {
      for (int s = 0; s < 4096; ++s) check(pick(rng), pick(rng));
    }
    out.push_back(std::move(a));
  }
  return out;
}

Partition Family::k_orbits(const std::vector<GroupAutomorphism>& k) const {
  const std::uint32_t n = group_.order();
  std::vector<std::int64_t> orbit(n, -1);
  Partition cells;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (orbit[v] >= 0) continue;
    // K is a group, so the images of v already form the whole orbit (v = id(v)).
    std::vector<std::uint32_t> cell{v};
    orbit[v] = static_cast<std::int64_t>(cells.size());
    for (const auto& a : k) {
      const std::uint32_t w = a.perm[v];
      if (orbit[w] < 0) {
        orbit[w] = static_cast<std::int64_t>(cells.size());
        cell.push_back(w);
      }
    }
    cells.push_back(std::move(cell));
  }
  return normalized(std::move(cells));
}

Fe Family::gamma(Fe i, Fe alpha, Fe beta) const {
  const Field& f = field();
  const Fe ab_half = f.mul(f.mul(alpha, beta), half_);
  const Fe norm = f.sub(f.square(alpha), f.mul(epsilon_, f.square(beta)));
  return f.add(ab_half, f.mul(norm, i));
}

std::vector<GroupElement> Family::build_Y(Fe i) const {
  std::vector<GroupElement> out;
  for (std::uint32_t a = 0; a < q(); ++a) {
    for (std::uint32_t b = 0; b < q(); ++b) {
      if (a == 0 && b == 0) continue;
      out.push_back({Fe{a}, Fe{b}, gamma(i, Fe{a}, Fe{b})});
    }
  }
  return out;  // already in index order: x-major then y, one z per (x, y)
}

std::vector<GroupElement> Family::build_X(Fe i) const {
  auto out = build_Y(i);
  out.insert(out.begin(), group_.identity());
  return out;
}

std::vector<std::uint32_t> Family::connection_set(Fe i, bool include_identity) const {
  const auto elems = include_identity ? build_X(i) : build_Y(i);
  std::vector<std::uint32_t> out;
  out.reserve(elems.size());
  for (const auto& g : elems) out.push_back(group_.index(g));
  return out;
}

bool Family::in_X(Fe i, const GroupElement& g) const { return g.z == gamma(i, g.x, g.y); }

Digraph Family::cayley(const std::vector<std::uint32_t>& connection, std::uint32_t max_vertices) const {
  const std::uint32_t n = group_.order();
  if (n > max_vertices) {
    throw std::invalid_argument("q^3 = " + std::to_string(n) + " exceeds the vertex cap " +
                                std::to_string(max_vertices));
  }
  Digraph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t x : connection) g.set_arc(u, group_.mul_index(x, u));
  }
  return g;
}

Digraph Family::build_cayley(Fe i, bool include_identity, std::uint32_t max_vertices) const {
  Digraph g = cayley(connection_set(i, include_identity), max_vertices);
  g.set_label(std::string(include_identity ? "Gamma_" : "Gamma0_") + field().to_string(i));
  return g;
}

Partition Family::basic_sets() const {
  const std::uint32_t n = group_.order();
  Partition cells(q() + 2);
  for (std::uint32_t v = 0; v < n; ++v) {
    const GroupElement g = group_.element(v);
    if (v == 0) {
      cells[0].push_back(v);
    } else if (group_.is_central(g)) {
      cells[q() + 1].push_back(v);
    } else {
      // g lies in Y_i for the unique i with z = ab/2 + N(a, b) i, N(a, b) != 0.
      const Field& f = field();
      const Fe norm = f.sub(f.square(g.x), f.mul(epsilon_, f.square(g.y)));
      const Fe i = f.div(f.sub(g.z, f.mul(f.mul(g.x, g.y), half_)), norm);
      cells[1 + i.index].push_back(v);
    }
  }
  return cells;
}

std::vector<Fe> Family::generators_I() const {
  std::vector<Fe> out;
  for (const auto& g : psi_.generators()) out.push_back(g.value());
  return out;
}

}  // namespace ddwl
