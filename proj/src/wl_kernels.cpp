#include "ddwl/wl_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace ddwl {

namespace {

// Above this many distinct (a, b) keys the per-thread counter array is
// replaced by sorting the keys of each pair.
constexpr std::uint64_t kDenseKeyLimit = std::uint64_t{1} << 20;

struct SignatureHash {
  std::size_t operator()(const std::vector<std::uint64_t>& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
    for (std::uint64_t x : s) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using LocalIds = std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, SignatureHash>;

// Packed entries hold key << 32 | count, which orders like (key, count).
bool packable(std::uint64_t r) { return r < (std::uint64_t{1} << 16); }

std::vector<std::uint64_t> unpack(const std::vector<std::uint64_t>& sig, bool packed) {
  if (!packed) return sig;
  std::vector<std::uint64_t> out;
  out.reserve(1 + 2 * (sig.size() - 1));
  out.push_back(sig[0]);
  for (std::size_t k = 1; k < sig.size(); ++k) {
    out.push_back(sig[k] >> 32);
    out.push_back(sig[k] & 0xffffffffULL);
  }
  return out;
}

void fill_counts(const PairColoring& out, RoundTable* table) {
  if (!table) return;
  table->counts.assign(out.rank, 0);
  for (Color c : out.color) ++table->counts[c];
}

}  // namespace

std::uint32_t PairColoring::distinct_colors() const {
  std::vector<std::uint8_t> seen(rank, 0);
  std::uint32_t d = 0;
  for (Color c : color) {
    if (!seen[c]) {
      seen[c] = 1;
      ++d;
    }
  }
  return d;
}

PairColoring coloring_from_ids(std::uint32_t n, std::vector<Color> ids) {
  if (ids.size() != std::size_t{n} * n) throw std::invalid_argument("color matrix size mismatch");
  PairColoring c;
  c.n = n;
  c.rank = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  c.color = std::move(ids);
  return c;
}

PairColoring initial_coloring(const Digraph& g) {
  const std::uint32_t n = g.size();
  std::vector<Color> raw(std::size_t{n} * n);
  bool used[4] = {false, false, false, false};
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      Color c;
      if (u == v) {
        c = g.has_arc(u, u) ? 1 : 0;
      } else {
        c = g.has_arc(u, v) ? 2 : 3;
      }
      raw[std::size_t{u} * n + v] = c;
      used[c] = true;
    }
  }
  Color remap[4];
  Color next = 0;
  for (int k = 0; k < 4; ++k) remap[k] = used[k] ? next++ : 0;
  for (auto& c : raw) c = remap[c];
  PairColoring out;
  out.n = n;
  out.color = std::move(raw);
  out.rank = next;
  return out;
}

PairColoring refine_round(const PairColoring& in, RoundTable* table) {
  const std::uint32_t n = in.n;
  const std::size_t nn = std::size_t{n} * n;
  const std::uint64_t r = in.rank;
  const bool dense = r * r <= kDenseKeyLimit;
  const bool packed = packable(r);

  std::vector<Color> transposed(nn);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) transposed[std::size_t{v} * n + u] = in.color[std::size_t{u} * n + v];
  }

  const int max_threads = omp_get_max_threads();
  std::vector<LocalIds> locals(static_cast<std::size_t>(max_threads));
  std::vector<std::uint32_t> local_id(nn);
  std::vector<std::uint32_t> row_owner(n);

#pragma omp parallel
  {
    const int tid = omp_get_thread_num();
    LocalIds& ids = locals[static_cast<std::size_t>(tid)];
    std::vector<std::uint32_t> counter(dense ? r * r : 0, 0);
    std::vector<std::uint64_t> touched;
    std::vector<std::uint64_t> keys;
    std::vector<std::uint64_t> scaled(n);
    std::vector<std::uint64_t> sig;
    touched.reserve(n);
    keys.reserve(n);

#pragma omp for schedule(dynamic, 4)
    for (std::int64_t su = 0; su < static_cast<std::int64_t>(n); ++su) {
      const auto u = static_cast<std::uint32_t>(su);
      row_owner[u] = static_cast<std::uint32_t>(tid);
      const Color* row = in.color.data() + std::size_t{u} * n;
      for (std::uint32_t w = 0; w < n; ++w) scaled[w] = row[w] * r;

      for (std::uint32_t v = 0; v < n; ++v) {
        const Color* col = transposed.data() + std::size_t{v} * n;
        sig.clear();
        sig.push_back(row[v]);
        if (dense) {
          touched.clear();
          for (std::uint32_t w = 0; w < n; ++w) {
            const std::uint64_t key = scaled[w] + col[w];
            if (counter[key]++ == 0) touched.push_back(key);
          }
          std::sort(touched.begin(), touched.end());
          for (std::uint64_t key : touched) {
            if (packed) {
              sig.push_back((key << 32) | counter[key]);
            } else {
              sig.push_back(key);
              sig.push_back(counter[key]);
            }
            counter[key] = 0;
          }
        } else {
          keys.clear();
          for (std::uint32_t w = 0; w < n; ++w) keys.push_back(scaled[w] + col[w]);
          std::sort(keys.begin(), keys.end());
          for (std::size_t a = 0; a < keys.size();) {
            std::size_t b = a;
            while (b < keys.size() && keys[b] == keys[a]) ++b;
            if (packed) {
              sig.push_back((keys[a] << 32) | (b - a));
            } else {
              sig.push_back(keys[a]);
              sig.push_back(b - a);
            }
            a = b;
          }
        }
        auto [it, inserted] = ids.try_emplace(sig, static_cast<std::uint32_t>(ids.size()));
        local_id[std::size_t{u} * n + v] = it->second;
      }
    }
  }

  // Canonical naming: distinct signatures in lexicographic order.
  struct Ref {
    const std::vector<std::uint64_t>* sig;
    std::uint32_t thread;
    std::uint32_t local;
  };
  std::vector<Ref> refs;
  for (std::size_t t = 0; t < locals.size(); ++t) {
    for (const auto& [sig, id] : locals[t]) refs.push_back({&sig, static_cast<std::uint32_t>(t), id});
  }
  std::sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) { return *a.sig < *b.sig; });

  std::vector<std::vector<std::uint32_t>> remap(locals.size());
  for (std::size_t t = 0; t < locals.size(); ++t) remap[t].resize(locals[t].size());
  std::uint32_t next = 0;
  if (table) {
    table->input_rank = r;
    table->signatures.clear();
  }
  for (std::size_t k = 0; k < refs.size(); ++k) {
    if (k > 0 && *refs[k].sig != *refs[k - 1].sig) ++next;
    if (table && (k == 0 || *refs[k].sig != *refs[k - 1].sig)) table->signatures.push_back(unpack(*refs[k].sig, packed));
    remap[refs[k].thread][refs[k].local] = next;
  }

  PairColoring out;
  out.n = n;
  out.rank = refs.empty() ? 0 : next + 1;
  out.rounds = in.rounds + 1;
  out.color.resize(nn);
#pragma omp parallel for schedule(static)
  for (std::int64_t su = 0; su < static_cast<std::int64_t>(n); ++su) {
    const auto u = static_cast<std::size_t>(su);
    const auto& map = remap[row_owner[u]];
    for (std::size_t v = 0; v < n; ++v) out.color[u * n + v] = map[local_id[u * n + v]];
  }
  fill_counts(out, table);
  return out;
}

PairColoring refine_round_reference(const PairColoring& in, RoundTable* table) {
  const std::uint32_t n = in.n;
  const std::uint64_t r = in.rank;
  using Entry = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;  // (a, b, count)
  using Key = std::pair<Color, std::vector<Entry>>;

  std::vector<Key> keys(std::size_t{n} * n);
  std::vector<std::pair<Color, Color>> pairs(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t w = 0; w < n; ++w) pairs[w] = {in.at(u, w), in.at(w, v)};
      std::sort(pairs.begin(), pairs.end());
      Key& key = keys[std::size_t{u} * n + v];
      key.first = in.at(u, v);
      for (std::size_t a = 0; a < pairs.size();) {
        std::size_t b = a;
        while (b < pairs.size() && pairs[b] == pairs[a]) ++b;
        key.second.emplace_back(pairs[a].first, pairs[a].second, b - a);
        a = b;
      }
    }
  }

  std::map<Key, Color> names;
  for (const auto& k : keys) names.emplace(k, 0);
  Color next = 0;
  for (auto& [k, c] : names) c = next++;

  if (table) {
    table->input_rank = r;
    table->signatures.clear();
    for (const auto& [k, c] : names) {
      std::vector<std::uint64_t> sig{k.first};
      for (const auto& [a, b, cnt] : k.second) {
        sig.push_back(a * r + b);
        sig.push_back(cnt);
      }
      table->signatures.push_back(std::move(sig));
    }
  }

  PairColoring out;
  out.n = n;
  out.rank = next;
  out.rounds = in.rounds + 1;
  out.color.resize(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) out.color[k] = names.at(keys[k]);
  fill_counts(out, table);
  return out;
}

PairColoring stabilize(PairColoring in, Kernel kernel, RefinementTrace* trace) {
  std::uint32_t current = in.distinct_colors();
  for (;;) {
    RoundTable table;
    PairColoring next = kernel == Kernel::parallel ? refine_round(in, trace ? &table : nullptr)
                                                   : refine_round_reference(in, trace ? &table : nullptr);
    if (trace) trace->push_back(std::move(table));
    const bool stable = next.rank == current;
    current = next.rank;
    in = std::move(next);
    if (stable) return in;
  }
}

}  // namespace ddwl
