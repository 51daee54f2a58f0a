#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ddwl {

/// Default cap on vertex count for dense structures (11^3).
inline constexpr std::uint32_t kDefaultMaxVertices = 1331;

/// Dense digraph on vertices [0, n), loops allowed.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::uint32_t n, std::string label = {});

  static Digraph complete(std::uint32_t n);
  static Digraph directed_cycle(std::uint32_t n);

  std::uint32_t size() const { return n_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool has_arc(std::uint32_t u, std::uint32_t v) const { return arcs_[std::size_t{u} * n_ + v] != 0; }
  void set_arc(std::uint32_t u, std::uint32_t v, bool present = true) {
    arcs_[std::size_t{u} * n_ + v] = present ? 1 : 0;
  }
  std::span<const std::uint8_t> row(std::uint32_t u) const {
    return {arcs_.data() + std::size_t{u} * n_, n_};
  }

  std::uint32_t out_degree(std::uint32_t u) const;
  std::uint32_t in_degree(std::uint32_t v) const;
  std::uint64_t arc_count() const;
  bool has_loops() const;
  /// No pair u != v with both (u, v) and (v, u) arcs.
  bool is_asymmetric() const;

  Digraph without_loops() const;
  /// Image under the vertex map perm: arc (u, v) becomes (perm[u], perm[v]).
  Digraph permuted(std::span<const std::uint32_t> perm) const;
  /// Same arc set with vertices of `other` shifted by size().
  Digraph disjoint_union(const Digraph& other) const;

  /// Line 1: n; then n lines of n '0'/'1' characters, row-major, '\n' endings.
  std::string to_text() const;
  void write_text(std::ostream& os) const;
  /// Throws std::invalid_argument on malformed input.
  static Digraph from_text(std::istream& is);

  bool operator==(const Digraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint8_t> arcs_;
  std::string label_;
};

}  // namespace ddwl
