#include "ddwl/designs.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace ddwl {

DDDParameters expected_ddd_parameters(std::uint32_t q, bool loopless) {
  const std::uint64_t qq = q;
  return {qq * qq * qq, loopless ? qq * qq - 1 : qq * qq, 0, qq, qq * qq, qq};
}

nlohmann::json DDDReport::to_json() const {
  nlohmann::json out;
  out["expected"] = {{"v", expected.v}, {"k", expected.k}, {"lambda1", expected.lambda1},
                     {"lambda2", expected.lambda2}, {"m", expected.m}, {"n", expected.n}};
  out["same_class"] = {{"c_in", same_in}, {"c_out", same_out}, {"c_union", same_union}};
  out["cross_class"] = {{"c_in", cross_in}, {"c_out", cross_out}, {"c_union", cross_union}};
  out["out_degrees"] = out_degrees;
  out["in_degrees"] = in_degrees;
  out["classes_ok"] = classes_ok;
  out["regular"] = regular;
  out["asymmetric"] = asymmetric;
  out["counts_ok"] = counts_ok;
  out["pairs"] = pairs;
  if (witness) {
    out["witness"] = {{"a", witness->a}, {"b", witness->b}, {"c_in", witness->c_in},
                      {"c_out", witness->c_out}, {"c_union", witness->c_union}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

namespace {

struct Seen {
  std::vector<std::uint8_t> same_in, same_out, same_union, cross_in, cross_out, cross_union;
  std::optional<PairWitness> witness;
  explicit Seen(std::uint32_t n)
      : same_in(n + 1), same_out(n + 1), same_union(n + 1), cross_in(n + 1), cross_out(n + 1), cross_union(n + 1) {}

  void record(bool same, std::uint32_t a, std::uint32_t b, std::uint32_t cin, std::uint32_t cout, std::uint32_t cu,
              const DDDParameters& e) {
    (same ? same_in : cross_in)[cin] = 1;
    (same ? same_out : cross_out)[cout] = 1;
    (same ? same_union : cross_union)[cu] = 1;
    const std::uint64_t want = same ? e.lambda1 : e.lambda2;
    if ((cin != want || cout != want) && !witness) witness = PairWitness{a, b, cin, cout, cu};
  }

  void merge(const Seen& o) {
    auto m = [](std::vector<std::uint8_t>& d, const std::vector<std::uint8_t>& s) {
      for (std::size_t k = 0; k < d.size(); ++k) d[k] |= s[k];
    };
    m(same_in, o.same_in);
    m(same_out, o.same_out);
    m(same_union, o.same_union);
    m(cross_in, o.cross_in);
    m(cross_out, o.cross_out);
    m(cross_union, o.cross_union);
    if (o.witness && (!witness || std::pair(o.witness->a, o.witness->b) < std::pair(witness->a, witness->b))) {
      witness = o.witness;
    }
  }
};

std::vector<std::uint32_t> values(const std::vector<std::uint8_t>& seen) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < seen.size(); ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

}  // namespace

DDDReport verify_ddd(const Digraph& g, const std::vector<std::uint32_t>& class_of, const DDDParameters& expected,
                     DesignKernel kernel) {
  const std::uint32_t n = g.size();
  if (class_of.size() != n) throw std::invalid_argument("class vector has the wrong length");
  DDDReport rep;
  rep.expected = expected;

  std::vector<std::uint64_t> class_size;
  for (std::uint32_t c : class_of) {
    if (c >= class_size.size()) class_size.resize(c + 1, 0);
    ++class_size[c];
  }
  rep.classes_ok = n == expected.v && class_size.size() == expected.m &&
                   std::all_of(class_size.begin(), class_size.end(), [&](std::uint64_t s) { return s == expected.n; });

  std::vector<std::uint8_t> outd(n + 1, 0), ind(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    outd[g.out_degree(v)] = 1;
    ind[g.in_degree(v)] = 1;
  }
  rep.out_degrees = values(outd);
  rep.in_degrees = values(ind);
  rep.regular = rep.out_degrees == std::vector<std::uint32_t>{static_cast<std::uint32_t>(expected.k)} &&
                rep.in_degrees == rep.out_degrees;
  rep.asymmetric = g.is_asymmetric();

  Seen total(n);
  if (kernel == DesignKernel::reference) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        std::uint32_t cin = 0, cout = 0, cu = 0;
        for (std::uint32_t w = 0; w < n; ++w) {
          const bool i = g.has_arc(w, a) && g.has_arc(w, b);
          const bool o = g.has_arc(a, w) && g.has_arc(b, w);
          cin += i;
          cout += o;
          cu += i || o;
        }
        total.record(class_of[a] == class_of[b], a, b, cin, cout, cu, expected);
      }
    }
  } else {
    const std::uint32_t words = (n + 63) / 64;
    std::vector<Bits> out(n, Bits(words, 0)), in(n, Bits(words, 0));
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        if (g.has_arc(u, v)) {
          out[u][v / 64] |= std::uint64_t{1} << (v % 64);
          in[v][u / 64] |= std::uint64_t{1} << (u % 64);
        }
      }
    }
#pragma omp parallel
    {
      Seen local(n);
#pragma omp for schedule(dynamic, 8) nowait
      for (std::int64_t sa = 0; sa < static_cast<std::int64_t>(n); ++sa) {
        const auto a = static_cast<std::uint32_t>(sa);
        for (std::uint32_t b = a + 1; b < n; ++b) {
          std::uint32_t cin = 0, cout = 0, cu = 0;
          for (std::uint32_t k = 0; k < words; ++k) {
            const std::uint64_t i = in[a][k] & in[b][k];
            const std::uint64_t o = out[a][k] & out[b][k];
            cin += std::popcount(i);
            cout += std::popcount(o);
            cu += std::popcount(i | o);
          }
          local.record(class_of[a] == class_of[b], a, b, cin, cout, cu, expected);
        }
      }
#pragma omp critical
      total.merge(local);
    }
  }
  rep.pairs = std::uint64_t{n} * (n - 1) / 2;
  rep.same_in = values(total.same_in);
  rep.same_out = values(total.same_out);
  rep.same_union = values(total.same_union);
  rep.cross_in = values(total.cross_in);
  rep.cross_out = values(total.cross_out);
  rep.cross_union = values(total.cross_union);
  rep.witness = total.witness;
  rep.counts_ok = !rep.witness.has_value();
  return rep;
}

std::vector<std::uint32_t> coset_classes(const Heisenberg& group) {
  std::vector<std::uint32_t> out(group.order());
  for (std::uint32_t v = 0; v < group.order(); ++v) out[v] = group.coset_of_index(v);
  return out;
}

IncidenceStructure::IncidenceStructure(std::uint32_t points, std::vector<std::vector<std::uint32_t>> blocks)
    : points_(points), blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    std::sort(b.begin(), b.end());
    if (!b.empty() && b.back() >= points_) throw std::invalid_argument("block point out of range");
  }
}

bool IncidenceStructure::incident(std::uint32_t block, std::uint32_t point) const {
  const auto& b = blocks_.at(block);
  return std::binary_search(b.begin(), b.end(), point);
}

Digraph IncidenceStructure::incidence_matrix() const {
  if (blocks_.size() != points_) throw std::logic_error("incidence matrix export needs as many blocks as points");
  Digraph m(points_);
  for (std::uint32_t b = 0; b < blocks_.size(); ++b) {
    for (std::uint32_t p : blocks_[b]) m.set_arc(b, p);
  }
  return m;
}

std::vector<std::uint32_t> IncidenceStructure::replication() const {
  std::vector<std::uint32_t> r(points_, 0);
  for (const auto& b : blocks_) {
    for (std::uint32_t p : b) ++r[p];
  }
  return r;
}

IncidenceStructure dev(const Family& family, Fe i) {
  const Heisenberg& g = family.group();
  const auto x = family.connection_set(i, true);
  std::vector<std::vector<std::uint32_t>> blocks(g.order());
  for (std::uint32_t b = 0; b < g.order(); ++b) {
    for (std::uint32_t e : x) blocks[b].push_back(g.mul_index(e, b));
  }
  return IncidenceStructure(g.order(), std::move(blocks));
}

DesignMaps desiso_maps(const Family& family, Fe i) {
  const Field& f = family.field();
  const Heisenberg& g = family.group();
  const std::uint32_t n = g.order();
  const Fe eps = family.epsilon();
  const Fe half = f.inv(f.from_int(2));
  const Fe four_i = f.mul(f.from_int(4), i);

  DesignMaps m;
  m.i = i;
  m.det_a = f.sub(f.one(), f.mul(f.from_int(16), f.mul(eps, f.square(i))));
  if (m.det_a == f.zero()) throw std::logic_error("det(A) vanishes");
  const Fe det_inv = f.inv(m.det_a);
  auto norm_i = [&](Fe a, Fe b) { return f.mul(f.sub(f.square(a), f.mul(eps, f.square(b))), i); };

  m.f.resize(n);
  m.h.resize(n);
  m.h_forward.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    const GroupElement p = g.element(v);
    m.f[v] = g.index({p.x, p.y, f.add(p.z, norm_i(p.x, p.y))});

    // g'' -> g_0
    const Fe delta_prime = f.mul(four_i, f.mul(eps, p.y));
    const Fe sigma = f.mul(four_i, p.x);
    const Fe a0 = f.sub(p.x, delta_prime);
    const Fe b0 = f.sub(p.y, sigma);
    const Fe c0 = f.add(f.sub(f.add(p.z, f.mul(f.mul(a0, b0), half)), f.mul(f.mul(p.x, p.y), half)), norm_i(p.x, p.y));
    m.h_forward[v] = g.index({a0, b0, c0});

    // g_0 -> g'': solve A (a'', b'') = (a_0, b_0), then undo the translation.
    const Fe a2 = f.mul(det_inv, f.add(p.x, f.mul(four_i, f.mul(eps, p.y))));
    const Fe b2 = f.mul(det_inv, f.add(p.y, f.mul(four_i, p.x)));
    const Fe shift = f.add(f.sub(f.mul(f.mul(p.x, p.y), half), f.mul(f.mul(a2, b2), half)), norm_i(a2, b2));
    m.h[v] = g.index({a2, b2, f.sub(p.z, shift)});
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (m.h_forward[m.h[v]] != v) throw std::logic_error("h is not the inverse of the forward block map");
  }
  std::vector<std::uint8_t> hit(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (hit[m.f[v]]++) throw std::logic_error("f is not a bijection");
  }
  return m;
}

bool in_X0_coset(const Family& family, const GroupElement& g, const GroupElement& g0) {
  const Field& f = family.field();
  const Fe half = f.inv(f.from_int(2));
  return f.sub(g.z, g0.z) == f.mul(f.mul(f.sub(g.x, g0.x), f.add(g.y, g0.y)), half);
}

nlohmann::json DesignIsoReport::to_json() const {
  nlohmann::json out{{"q", q}, {"i", i}, {"crit_holds", crit_holds}, {"det_A_nonzero", det_a_nonzero},
                     {"pairs_checked", pairs_checked}};
  if (sampled) out["seed"] = seed;
  return out;
}

DesignIsoReport verify_design_iso(const Family& family, Fe i, PairCheck mode, std::uint64_t samples,
                                  DesignKernel kernel) {
  const Field& f = family.field();
  const Heisenberg& g = family.group();
  const std::uint32_t q = family.q();
  const std::uint32_t n = g.order();
  DesignIsoReport rep;
  rep.q = q;
  rep.i = i.index;

  DesignMaps maps;
  try {
    maps = desiso_maps(family, i);
  } catch (const std::logic_error&) {
    return rep;
  }
  rep.det_a_nonzero = true;

  const Fe half = f.inv(f.from_int(2));
  std::vector<std::uint32_t> hinv(n);
  for (std::uint32_t v = 0; v < n; ++v) hinv[v] = g.inv_index(maps.h[v]);

  auto check_reference = [&](std::uint32_t a, std::uint32_t b) {
    const GroupElement ga = g.element(a);
    const bool lhs = in_X0_coset(family, ga, g.element(b));
    const bool rhs = family.in_X(i, g.mul(g.element(maps.f[a]), g.element(hinv[b])));
    return lhs == rhs;
  };

  if (mode == PairCheck::sampled) {
    rep.sampled = true;
    rep.seed = kDesignSeed;
    std::mt19937_64 rng(kDesignSeed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const std::uint32_t a = pick(rng);
      const std::uint32_t b = pick(rng);
      rep.failures += !check_reference(a, b);
    }
    rep.pairs_checked = samples;
  } else if (kernel == DesignKernel::reference) {
    for (std::uint32_t b = 0; b < n; ++b) {
      for (std::uint32_t a = 0; a < n; ++a) rep.failures += !check_reference(a, b);
    }
    rep.pairs_checked = std::uint64_t{n} * n;
  } else {
    std::vector<Fe> gamma(std::size_t{q} * q);
    std::vector<Fe> shift(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        gamma[a * q + b] = family.gamma(i, Fe{a}, Fe{b});
        shift[a * q + b] = f.mul(f.sub(f.square(Fe{a}), f.mul(family.epsilon(), f.square(Fe{b}))), i);
      }
    }
    std::uint64_t failures = 0;
#pragma omp parallel for schedule(static) reduction(+ : failures)
    for (std::int64_t sb = 0; sb < static_cast<std::int64_t>(n); ++sb) {
      const GroupElement g0 = g.element(static_cast<std::uint32_t>(sb));
      const GroupElement k = g.element(hinv[sb]);
      for (std::uint32_t a = 0; a < q; ++a) {
        const Fe alpha{a};
        const Fe da = f.sub(alpha, g0.x);
        const Fe px = f.add(alpha, k.x);
        const Fe cross = f.mul(alpha, k.y);
        for (std::uint32_t b = 0; b < q; ++b) {
          const Fe beta{b};
          const Fe lhs_z = f.add(g0.z, f.mul(f.mul(da, f.add(beta, g0.y)), half));
          const Fe target = gamma[px.index * q + f.add(beta, k.y).index];
          const Fe sh = shift[a * q + b];
          for (std::uint32_t c = 0; c < q; ++c) {
            const Fe gam{c};
            const bool lhs = gam == lhs_z;
            // f(g) h(g_0)^-1 = (alpha + kx, beta + ky, gamma' + kz + alpha ky)
            const Fe z = f.add(f.add(f.add(gam, sh), k.z), cross);
            const bool rhs = z == target;
            failures += lhs != rhs;
          }
        }
      }
    }
    rep.failures = failures;
    rep.pairs_checked = std::uint64_t{n} * n;
  }
  rep.crit_holds = rep.failures == 0;
  return rep;
}

bool verify_block_images(const Family& family, Fe i) {
  const Heisenberg& g = family.group();
  const DesignMaps maps = desiso_maps(family, i);
  const IncidenceStructure d0 = dev(family, g.field().zero());
  const IncidenceStructure di = dev(family, i);
  for (std::uint32_t b = 0; b < g.order(); ++b) {
    std::vector<std::uint32_t> image;
    for (std::uint32_t p : d0.blocks()[b]) image.push_back(maps.f[p]);
    std::sort(image.begin(), image.end());
    if (image != di.blocks()[maps.h[b]]) return false;
  }
  return true;
}

MembershipReport check_membership_shortcut(const Family& family, PairCheck mode, std::uint64_t samples) {
  const Heisenberg& g = family.group();
  const std::uint32_t n = g.order();
  const Fe zero = g.field().zero();
  MembershipReport rep;
  auto one = [&](std::uint32_t a, std::uint32_t b) {
    const GroupElement ga = g.element(a);
    const GroupElement gb = g.element(b);
    const bool shortcut = in_X0_coset(family, ga, gb);
    const bool direct = family.in_X(zero, g.mul(ga, g.inv(gb)));
    ++rep.pairs;
    rep.disagreements += shortcut != direct;
  };
  if (mode == PairCheck::exhaustive) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) one(a, b);
    }
  } else {
    std::mt19937_64 rng(kDesignSeed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const std::uint32_t a = pick(rng);
      one(a, pick(rng));
    }
  }
  return rep;
}

}  // namespace ddwl
