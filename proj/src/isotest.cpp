#include "ddwl/isotest.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ddwl {

std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::isomorphic:
      return "isomorphic";
    case IsoStatus::non_isomorphic:
      return "non-isomorphic";
    case IsoStatus::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

nlohmann::json IsoCertificate::to_json() const {
  nlohmann::json out{{"type", to_string(status)}};
  if (status == IsoStatus::isomorphic) out["mapping"] = mapping;
  if (!invariant_diff.empty()) out["invariant_diff"] = {{"reason", invariant_diff}};
  out["nodes"] = nodes;
  return out;
}

namespace {

struct BudgetExceeded {};

/// Vertex partition; cell ids are 0..count-1.
struct Cells {
  std::vector<std::uint32_t> cell;
  std::uint32_t count = 0;
};

struct VertexRound {
  std::vector<std::vector<std::uint64_t>> signatures;
  std::vector<std::uint32_t> sizes;
  bool operator==(const VertexRound&) const = default;
};

using NodeTrace = std::vector<VertexRound>;

/// Color refinement of vertex partitions against a fixed pair coloring:
/// v is recolored by its cell and the multiset of (C(v, w), cell(w)).
class Refiner {
 public:
  explicit Refiner(const PairColoring& c) : c_(c) {}

  Cells initial() const {
    const std::uint32_t n = c_.n;
    std::vector<Color> diag(n);
    for (std::uint32_t v = 0; v < n; ++v) diag[v] = c_.at(v, v);
    std::vector<Color> distinct = diag;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Cells p;
    p.cell.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      p.cell[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), diag[v]) - distinct.begin());
    }
    p.count = static_cast<std::uint32_t>(distinct.size());
    return p;
  }

  static Cells individualize(const Cells& p, std::uint32_t v) {
    Cells out = p;
    out.cell[v] = out.count++;
    return out;
  }

  NodeTrace refine(Cells& p) const {
    const std::uint32_t n = c_.n;
    NodeTrace trace;
    std::vector<std::vector<std::uint64_t>> sig(n);
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> order(n);
    for (;;) {
      const std::uint64_t k = p.count;
      for (std::uint32_t v = 0; v < n; ++v) {
        keys.clear();
        for (std::uint32_t w = 0; w < n; ++w) keys.push_back(std::uint64_t{c_.at(v, w)} * k + p.cell[w]);
        std::sort(keys.begin(), keys.end());
        auto& s = sig[v];
        s.clear();
        s.push_back(p.cell[v]);
        for (std::size_t a = 0; a < keys.size();) {
          std::size_t b = a;
          while (b < keys.size() && keys[b] == keys[a]) ++b;
          s.push_back(keys[a]);
          s.push_back(b - a);
          a = b;
        }
      }
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return sig[a] != sig[b] ? sig[a] < sig[b] : a < b;
      });
      VertexRound round;
      std::vector<std::uint32_t> next(n);
      std::uint32_t id = 0;
      for (std::uint32_t k2 = 0; k2 < n; ++k2) {
        const std::uint32_t v = order[k2];
        if (k2 > 0 && sig[v] != sig[order[k2 - 1]]) ++id;
        if (k2 == 0 || sig[v] != sig[order[k2 - 1]]) {
          round.signatures.push_back(sig[v]);
          round.sizes.push_back(0);
        }
        ++round.sizes.back();
        next[v] = id;
      }
      const std::uint32_t count = n == 0 ? 0 : id + 1;
      trace.push_back(std::move(round));
      const bool stable = count == p.count;
      p.cell = std::move(next);
      p.count = count;
      if (stable) return trace;
    }
  }

 private:
  const PairColoring& c_;
};

/// Smallest non-singleton cell, ties by lowest id; nullopt when discrete.
std::optional<std::uint32_t> target_cell(const Cells& p) {
  std::vector<std::uint32_t> size(p.count, 0);
  for (std::uint32_t c : p.cell) ++size[c];
  std::optional<std::uint32_t> best;
  for (std::uint32_t c = 0; c < p.count; ++c) {
    if (size[c] > 1 && (!best || size[c] < size[*best])) best = c;
  }
  return best;
}

std::vector<std::uint32_t> members(const Cells& p, std::uint32_t id) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < p.cell.size(); ++v) {
    if (p.cell[v] == id) out.push_back(v);
  }
  return out;
}

struct Path {
  std::vector<Cells> nodes;
  std::vector<NodeTrace> traces;
  std::vector<std::uint32_t> targets;
  std::vector<std::uint32_t> base;
};

class UnionFind {
 public:
  explicit UnionFind(std::uint32_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }

 private:
  std::vector<std::uint32_t> parent_;
};

PairColoring raw_initial(const Digraph& g) {
  const std::uint32_t n = g.size();
  std::vector<Color> ids(std::size_t{n} * n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      const bool arc = g.has_arc(u, v);
      ids[std::size_t{u} * n + v] = u == v ? (arc ? 1 : 0) : (arc ? 2 : 3);
    }
  }
  PairColoring c;
  c.n = n;
  c.rank = 4;
  c.color = std::move(ids);
  return c;
}

}  // namespace

struct SearchGraph::Impl {
  PairColoring input;
  PairColoring stable;
  RefinementTrace trace;
  std::optional<Path> path;
  std::optional<AutomorphismGroup> aut;

  explicit Impl(PairColoring colors) : input(std::move(colors)) { stable = stabilize(input, Kernel::parallel, &trace); }

  const Path& first_path() {
    if (path) return *path;
    Refiner refiner(stable);
    Path p;
    Cells cells = refiner.initial();
    p.traces.push_back(refiner.refine(cells));
    p.nodes.push_back(cells);
    while (auto t = target_cell(p.nodes.back())) {
      const std::uint32_t v = members(p.nodes.back(), *t).front();
      p.targets.push_back(*t);
      p.base.push_back(v);
      Cells child = Refiner::individualize(p.nodes.back(), v);
      p.traces.push_back(refiner.refine(child));
      p.nodes.push_back(std::move(child));
    }
    path = std::move(p);
    return *path;
  }
};

namespace {

/// Depth-first search for a leaf of `b` matching the first path of `a`.
class Matcher {
 public:
  Matcher(SearchGraph::Impl& a, SearchGraph::Impl& b, const AutomorphismGroup* b_aut, const SearchOptions& opts,
          std::uint64_t& nodes)
      : a_(a), b_(b), path_(a.first_path()), b_aut_(b_aut), b_path_(b_aut ? &b.first_path() : nullptr),
        refiner_(b.stable), opts_(opts), nodes_(nodes) {}

  /// Searches below `cells` (a node of b at `level` whose trace matches) for
  /// a leaf; `on_base` means b's prefix so far equals b's own base.
  std::optional<std::vector<std::uint32_t>> search(const Cells& cells, std::uint32_t level, bool on_base) {
    if (level == path_.base.size()) return leaf(cells);
    const auto cand = members(cells, path_.targets[level]);
    for (std::uint32_t w : prune(cand, level, on_base)) {
      if (auto r = descend(cells, level, w, on_base && b_path_ && level < b_path_->base.size() && w == b_path_->base[level])) {
        return r;
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<std::uint32_t>> descend(const Cells& cells, std::uint32_t level, std::uint32_t w,
                                                    bool on_base) {
    if (++nodes_ > opts_.max_nodes) throw BudgetExceeded{};
    Cells child = Refiner::individualize(cells, w);
    if (refiner_.refine(child) != path_.traces[level + 1]) return std::nullopt;
    return search(child, level + 1, on_base);
  }

 private:
  std::vector<std::uint32_t> prune(const std::vector<std::uint32_t>& cand, std::uint32_t level, bool on_base) const {
    if (!on_base || !b_aut_ || level >= b_aut_->level_orbits.size()) return cand;
    const auto& orbit = b_aut_->level_orbits[level];
    std::vector<std::uint32_t> out;
    const std::uint32_t bp = b_path_->base[level];
    if (std::find(cand.begin(), cand.end(), bp) != cand.end()) out.push_back(bp);
    std::vector<std::uint32_t> seen;
    for (std::uint32_t v : out) seen.push_back(orbit[v]);
    for (std::uint32_t v : cand) {
      if (std::find(seen.begin(), seen.end(), orbit[v]) != seen.end()) continue;
      seen.push_back(orbit[v]);
      out.push_back(v);
    }
    return out;
  }

  std::optional<std::vector<std::uint32_t>> leaf(const Cells& cells) const {
    const std::uint32_t n = a_.input.n;
    const Cells& a_leaf = path_.nodes.back();
    std::vector<std::uint32_t> by_cell(n);
    for (std::uint32_t v = 0; v < n; ++v) by_cell[cells.cell[v]] = v;
    std::vector<std::uint32_t> f(n);
    for (std::uint32_t u = 0; u < n; ++u) f[u] = by_cell[a_leaf.cell[u]];
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        if (a_.input.at(u, v) != b_.input.at(f[u], f[v])) return std::nullopt;
      }
    }
    return f;
  }

  SearchGraph::Impl& a_;
  SearchGraph::Impl& b_;
  const Path& path_;
  const AutomorphismGroup* b_aut_;
  const Path* b_path_;
  Refiner refiner_;
  const SearchOptions& opts_;
  std::uint64_t& nodes_;
};

AutomorphismGroup compute_automorphisms(SearchGraph::Impl& g, const SearchOptions& opts) {
  const std::uint32_t n = g.input.n;
  const Path& path = g.first_path();
  const auto depth = static_cast<std::uint32_t>(path.base.size());
  AutomorphismGroup out;
  out.base = path.base;
  out.orbit_sizes.assign(depth, 0);
  out.level_orbits.assign(depth, {});
  Matcher matcher(g, g, nullptr, opts, out.nodes);
  std::uint64_t order = 1;
  try {
    for (std::uint32_t l = depth; l-- > 0;) {
      UnionFind uf(n);
      for (const auto& gen : out.generators) {
        for (std::uint32_t x = 0; x < n; ++x) uf.unite(x, gen[x]);
      }
      const auto cell = members(path.nodes[l], path.targets[l]);
      const std::uint32_t bp = path.base[l];
      std::vector<std::uint32_t> failed;
      for (std::uint32_t w : cell) {
        if (uf.same(w, bp)) continue;
        if (std::any_of(failed.begin(), failed.end(), [&](std::uint32_t f) { return uf.same(f, w); })) continue;
        if (auto perm = matcher.descend(path.nodes[l], l, w, false)) {
          for (std::uint32_t x = 0; x < n; ++x) uf.unite(x, (*perm)[x]);
          out.generators.push_back(std::move(*perm));
        } else {
          failed.push_back(w);
        }
      }
      std::uint64_t orbit = 0;
      for (std::uint32_t w : cell) orbit += uf.same(w, bp);
      out.orbit_sizes[l] = orbit;
      auto& labels = out.level_orbits[l];
      labels.resize(n);
      for (std::uint32_t x = 0; x < n; ++x) labels[x] = uf.find(x);
      if (__builtin_mul_overflow(order, orbit, &order)) out.overflow = true;
    }
  } catch (const BudgetExceeded&) {
    out.determined = false;
    return out;
  }
  out.determined = true;
  out.order = out.overflow ? 0 : order;
  return out;
}

}  // namespace

SearchGraph::SearchGraph(const Digraph& g) : impl_(std::make_unique<Impl>(raw_initial(g))) {}
SearchGraph::SearchGraph(PairColoring colors) : impl_(std::make_unique<Impl>(std::move(colors))) {}
SearchGraph::~SearchGraph() = default;
SearchGraph::SearchGraph(SearchGraph&&) noexcept = default;
SearchGraph& SearchGraph::operator=(SearchGraph&&) noexcept = default;

std::uint32_t SearchGraph::size() const { return impl_->input.n; }
const PairColoring& SearchGraph::input() const { return impl_->input; }
const PairColoring& SearchGraph::stable() const { return impl_->stable; }
const RefinementTrace& SearchGraph::trace() const { return impl_->trace; }

const AutomorphismGroup& SearchGraph::automorphisms(const SearchOptions& opts) {
  if (!impl_->aut || !impl_->aut->determined) impl_->aut = compute_automorphisms(*impl_, opts);
  return *impl_->aut;
}

IsoCertificate are_isomorphic(SearchGraph& g1, SearchGraph& g2, const SearchOptions& opts) {
  IsoCertificate cert;
  if (g1.size() != g2.size()) {
    cert.status = IsoStatus::non_isomorphic;
    cert.invariant_diff = "vertex counts differ";
    return cert;
  }
  const auto& t1 = g1.trace();
  const auto& t2 = g2.trace();
  for (std::size_t k = 0; k < std::max(t1.size(), t2.size()); ++k) {
    if (k >= t1.size() || k >= t2.size() || !(t1[k] == t2[k])) {
      cert.status = IsoStatus::non_isomorphic;
      cert.invariant_diff = "2-WL refinement round " + std::to_string(k + 1) + " differs";
      return cert;
    }
  }

  SearchGraph::Impl& a = *g1.impl_;
  SearchGraph::Impl& b = *g2.impl_;
  const AutomorphismGroup& b_aut = g2.automorphisms(opts);
  const AutomorphismGroup* prune = b_aut.determined ? &b_aut : nullptr;
  cert.nodes = b_aut.nodes;

  const Path& path = a.first_path();
  Refiner refiner(b.stable);
  Cells root = refiner.initial();
  if (refiner.refine(root) != path.traces[0]) {
    cert.status = IsoStatus::non_isomorphic;
    cert.invariant_diff = "vertex refinement differs";
    return cert;
  }
  std::uint64_t nodes = 0;
  Matcher matcher(a, b, prune, opts, nodes);
  try {
    auto f = matcher.search(root, 0, true);
    cert.nodes += nodes;
    if (f) {
      cert.status = IsoStatus::isomorphic;
      cert.mapping = std::move(*f);
    } else {
      cert.status = IsoStatus::non_isomorphic;
      cert.invariant_diff = "no leaf of the individualization-refinement tree matches";
    }
  } catch (const BudgetExceeded&) {
    cert.nodes += nodes;
    cert.status = IsoStatus::undetermined;
    cert.invariant_diff = "search budget of " + std::to_string(opts.max_nodes) + " nodes exceeded";
  }
  return cert;
}

bool is_isomorphism(const Digraph& g1, const Digraph& g2, const std::vector<std::uint32_t>& perm) {
  const std::uint32_t n = g1.size();
  if (g2.size() != n || perm.size() != n) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (std::uint32_t v : perm) {
    if (v >= n || hit[v]++) return false;
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (g1.has_arc(u, v) != g2.has_arc(perm[u], perm[v])) return false;
    }
  }
  return true;
}

IsoCertificate are_isomorphic(const Digraph& g1, const Digraph& g2, const SearchOptions& opts) {
  SearchGraph a(g1);
  SearchGraph b(g2);
  IsoCertificate cert = are_isomorphic(a, b, opts);
  if (cert.status == IsoStatus::isomorphic && !is_isomorphism(g1, g2, cert.mapping)) {
    throw std::logic_error("search produced a mapping that is not an isomorphism");
  }
  return cert;
}

AutomorphismGroup automorphism_group(const Digraph& g, const SearchOptions& opts) {
  SearchGraph s(g);
  AutomorphismGroup out = s.automorphisms(opts);
  for (const auto& gen : out.generators) {
    if (!is_isomorphism(g, g, gen)) throw std::logic_error("search produced a non-automorphism");
  }
  return out;
}

IsoClassResult iso_class_count(const std::vector<Digraph>& graphs, const SearchOptions& opts) {
  const auto k = static_cast<std::uint32_t>(graphs.size());
  std::vector<SearchGraph> prepared;
  prepared.reserve(k);
  for (const auto& g : graphs) prepared.emplace_back(g);

  IsoClassResult res;
  res.pairwise.assign(k, std::vector<IsoStatus>(k, IsoStatus::undetermined));
  res.tested.assign(k, std::vector<bool>(k, false));
  for (std::uint32_t a = 0; a < k; ++a) res.pairwise[a][a] = IsoStatus::isomorphic;
  UnionFind iso(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a + 1; b < k; ++b) {
      IsoStatus st = IsoStatus::undetermined;
      if (iso.same(a, b)) {
        st = IsoStatus::isomorphic;
      } else {
        for (std::uint32_t c = 0; c < k; ++c) {
          if (c != b && iso.same(a, c) && res.pairwise[c][b] == IsoStatus::non_isomorphic) st = IsoStatus::non_isomorphic;
        }
      }
      if (st == IsoStatus::undetermined) {
        IsoCertificate cert = are_isomorphic(prepared[a], prepared[b], opts);
        if (cert.status == IsoStatus::isomorphic && !is_isomorphism(graphs[a], graphs[b], cert.mapping)) {
          throw std::logic_error("search produced a mapping that is not an isomorphism");
        }
        res.nodes += cert.nodes;
        st = cert.status;
        res.tested[a][b] = res.tested[b][a] = true;
      }
      res.pairwise[a][b] = res.pairwise[b][a] = st;
      if (st == IsoStatus::isomorphic) iso.unite(a, b);
    }
  }
  UnionFind loose(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a + 1; b < k; ++b) {
      if (res.pairwise[a][b] != IsoStatus::non_isomorphic) loose.unite(a, b);
      if (res.pairwise[a][b] == IsoStatus::undetermined) res.exact = false;
    }
  }
  UnionFind& classes = res.exact ? iso : loose;
  std::vector<std::uint32_t> roots;
  res.class_of.resize(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    const std::uint32_t r = classes.find(a);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      res.class_of[a] = static_cast<std::uint32_t>(roots.size());
      roots.push_back(r);
    } else {
      res.class_of[a] = static_cast<std::uint32_t>(it - roots.begin());
    }
  }
  res.classes = static_cast<std::uint32_t>(roots.size());
  return res;
}

}  // namespace ddwl
