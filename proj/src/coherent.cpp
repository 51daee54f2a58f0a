#include "ddwl/coherent.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace ddwl {

namespace {

constexpr std::uint32_t kPairsPerColor = 100;
constexpr std::uint32_t kFullCheckLimit = 64;

using Counts = std::vector<std::pair<std::uint64_t, std::uint64_t>>;  // (r * rank + s, count)

Counts triangle_counts(const PairColoring& c, std::uint32_t u, std::uint32_t v, std::vector<std::uint64_t>& keys) {
  const std::uint64_t r = c.rank;
  keys.clear();
  for (std::uint32_t w = 0; w < c.n; ++w) keys.push_back(std::uint64_t{c.at(u, w)} * r + c.at(w, v));
  std::sort(keys.begin(), keys.end());
  Counts out;
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    out.emplace_back(keys[a], b - a);
    a = b;
  }
  return out;
}

std::string pair_text(std::uint32_t u, std::uint32_t v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

IntersectionTensor::IntersectionTensor(std::uint32_t rank, std::vector<TensorEntry> entries)
    : rank_(rank), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const TensorEntry& a, const TensorEntry& b) {
    return std::tie(a.r, a.s, a.t) < std::tie(b.r, b.s, b.t);
  });
}

std::uint64_t IntersectionTensor::at(Color r, Color s, Color t) const {
  const TensorEntry key{r, s, t, 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const TensorEntry& a, const TensorEntry& b) {
    return std::tie(a.r, a.s, a.t) < std::tie(b.r, b.s, b.t);
  });
  if (it != entries_.end() && it->r == r && it->s == s && it->t == t) return it->c;
  return 0;
}

CoherentConfiguration::CoherentConfiguration(PairColoring stable, TensorCheck check)
    : coloring_(std::move(stable)) {
  const std::uint32_t n = coloring_.n;
  const std::uint32_t r = coloring_.rank;
  const PairColoring& c = coloring_;

  // Representatives and pair lists per color.
  std::vector<std::vector<std::uint32_t>> members(r);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) members[c.at(u, v)].push_back(u * n + v);
  }
  for (Color s = 0; s < r; ++s) {
    if (members[s].empty()) throw std::logic_error("color " + std::to_string(s) + " is unused");
  }

  // Diagonal colors and fibers.
  fiber_index_.assign(r, -1);
  for (Color s = 0; s < r; ++s) {
    const std::uint32_t first = members[s].front();
    if (first / n == first % n) fiber_index_[s] = 0;
  }
  std::int64_t next_fiber = 0;
  for (Color s = 0; s < r; ++s) {
    if (fiber_index_[s] < 0) continue;
    fiber_index_[s] = next_fiber++;
    std::vector<std::uint32_t> cell;
    for (std::uint32_t pos : members[s]) {
      if (pos / n != pos % n) throw std::logic_error("color " + std::to_string(s) + " mixes diagonal and off-diagonal pairs");
      cell.push_back(pos / n);
    }
    fibers_.push_back(std::move(cell));
  }
  vertex_fiber_.assign(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) vertex_fiber_[u] = static_cast<std::uint32_t>(fiber_index_[c.at(u, u)]);

  // Converse, fibers of each color, valencies.
  converse_.assign(r, 0);
  left_.assign(r, 0);
  right_.assign(r, 0);
  valency_.assign(r, 0);
  for (Color s = 0; s < r; ++s) {
    const std::uint32_t pos = members[s].front();
    converse_[s] = c.at(pos % n, pos / n);
    left_[s] = vertex_fiber_[pos / n];
    right_[s] = vertex_fiber_[pos % n];
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      const Color s = c.at(u, v);
      if (c.at(v, u) != converse_[s]) throw std::logic_error("converse of color " + std::to_string(s) + " is not a color at " + pair_text(u, v));
      if (vertex_fiber_[u] != left_[s] || vertex_fiber_[v] != right_[s]) {
        throw std::logic_error("color " + std::to_string(s) + " meets two fibers at " + pair_text(u, v));
      }
    }
  }
  for (Color s = 0; s < r; ++s) {
    const std::uint64_t fiber_size = fibers_[left_[s]].size();
    if (members[s].size() % fiber_size != 0) throw std::logic_error("color " + std::to_string(s) + " is not regular");
    valency_[s] = members[s].size() / fiber_size;
  }

  // Intersection numbers from one pair per color, then checked on others.
  const bool full = check == TensorCheck::full || n <= kFullCheckLimit;
  std::vector<Counts> rep(r);
  std::vector<std::uint64_t> checked(r, 0);
  std::vector<std::string> failure(r);
#pragma omp parallel
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t st = 0; st < static_cast<std::int64_t>(r); ++st) {
      const auto t = static_cast<Color>(st);
      const auto& list = members[t];
      rep[t] = triangle_counts(c, list.front() / n, list.front() % n, keys);
      std::vector<std::uint32_t> sample;
      if (full || list.size() <= kPairsPerColor) {
        sample.assign(list.begin() + 1, list.end());
      } else {
        std::mt19937_64 rng(0xc0ffee + t);
        std::uniform_int_distribution<std::size_t> pick(1, list.size() - 1);
        for (std::uint32_t k = 0; k < kPairsPerColor; ++k) sample.push_back(list[pick(rng)]);
      }
      for (std::uint32_t pos : sample) {
        if (triangle_counts(c, pos / n, pos % n, keys) != rep[t]) {
          failure[t] = "intersection numbers of color " + std::to_string(t) + " differ at " + pair_text(pos / n, pos % n);
          break;
        }
      }
      checked[t] = sample.size() + 1;
    }
  }
  for (const auto& f : failure) {
    if (!f.empty()) throw std::logic_error(f);
  }
  std::vector<TensorEntry> entries;
  for (Color t = 0; t < r; ++t) {
    pairs_checked_ += checked[t];
    for (const auto& [key, count] : rep[t]) {
      entries.push_back({static_cast<Color>(key / r), static_cast<Color>(key % r), t, count});
    }
  }
  tensor_ = IntersectionTensor(r, std::move(entries));
}

nlohmann::json CoherentConfiguration::tensor_json() const {
  nlohmann::json out;
  out["rank"] = rank();
  out["valencies"] = valency_;
  auto rows = nlohmann::json::array();
  for (const auto& e : tensor_.entries()) rows.push_back({e.r, e.s, e.t, e.c});
  out["tensor"] = std::move(rows);
  return out;
}

CoherentConfiguration wl_close(const Digraph& g, TensorCheck check, Kernel kernel) {
  return CoherentConfiguration(stabilize(initial_coloring(g), kernel), check);
}

CoherentConfiguration close_coloring(const PairColoring& colors, TensorCheck check, Kernel kernel) {
  return CoherentConfiguration(stabilize(colors, kernel), check);
}

Partition as_sring_partition(const CoherentConfiguration& cc, const Heisenberg& group) {
  if (cc.n() != group.order()) throw std::invalid_argument("configuration does not live on the group");
  Partition cells(cc.rank());
  for (std::uint32_t g = 0; g < cc.n(); ++g) cells[cc.color(0, g)].push_back(g);
  return normalized(std::move(cells));
}

CoherentConfiguration one_point_extension(const CoherentConfiguration& cc, std::uint32_t v, TensorCheck check) {
  if (v >= cc.n()) throw std::out_of_range("vertex out of range");
  PairColoring start = cc.coloring();
  start.at(v, v) = start.rank;
  start.rank += 1;
  start.rounds = 0;
  return close_coloring(start, check);
}

WlEquivalence wl_equivalent(const Digraph& g1, const Digraph& g2, Kernel kernel) {
  if (g1.size() != g2.size()) throw std::invalid_argument("digraphs differ in vertex count");
  const std::uint32_t n = g1.size();
  const PairColoring stable = stabilize(initial_coloring(g1.disjoint_union(g2)), kernel);
  auto histogram = [&](std::uint32_t offset) {
    std::map<Color, std::uint64_t> h;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) ++h[stable.at(offset + u, offset + v)];
    }
    return std::vector<std::pair<Color, std::uint64_t>>(h.begin(), h.end());
  };
  WlEquivalence out;
  out.left = histogram(0);
  out.right = histogram(n);
  out.union_rank = stable.rank;
  out.equivalent = out.left == out.right;
  return out;
}

bool verify_algebraic_map(const CoherentConfiguration& cc1, const CoherentConfiguration& cc2,
                          const std::vector<Color>& sigma) {
  const std::uint32_t r = cc1.rank();
  if (r != cc2.rank()) throw std::invalid_argument("configurations differ in rank");
  if (sigma.size() != r) throw std::invalid_argument("color map has the wrong length");
  std::vector<std::uint8_t> hit(r, 0);
  for (Color s : sigma) {
    if (s >= r || hit[s]++) throw std::invalid_argument("color map is not a bijection");
  }
  const auto& e1 = cc1.tensor().entries();
  if (e1.size() != cc2.tensor().entries().size()) return false;
  for (const auto& e : e1) {
    if (cc2.tensor().at(sigma[e.r], sigma[e.s], sigma[e.t]) != e.c) return false;
  }
  return true;
}

}  // namespace ddwl
