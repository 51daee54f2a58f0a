#include "ddwl/digraph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ddwl {

Digraph::Digraph(std::uint32_t n, std::string label)
    : n_(n), arcs_(std::size_t{n} * n, 0), label_(std::move(label)) {}

Digraph Digraph::complete(std::uint32_t n) {
  Digraph g(n, "K" + std::to_string(n));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u != v) g.set_arc(u, v);
    }
  }
  return g;
}

Digraph Digraph::directed_cycle(std::uint32_t n) {
  Digraph g(n, "C" + std::to_string(n));
  for (std::uint32_t u = 0; u < n; ++u) g.set_arc(u, (u + 1) % n);
  return g;
}

std::uint32_t Digraph::out_degree(std::uint32_t u) const {
  std::uint32_t d = 0;
  for (auto a : row(u)) d += a;
  return d;
}

std::uint32_t Digraph::in_degree(std::uint32_t v) const {
  std::uint32_t d = 0;
  for (std::uint32_t u = 0; u < n_; ++u) d += has_arc(u, v) ? 1 : 0;
  return d;
}

std::uint64_t Digraph::arc_count() const {
  std::uint64_t c = 0;
  for (auto a : arcs_) c += a;
  return c;
}

bool Digraph::has_loops() const {
  for (std::uint32_t u = 0; u < n_; ++u) {
    if (has_arc(u, u)) return true;
  }
  return false;
}

bool Digraph::is_asymmetric() const {
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = u + 1; v < n_; ++v) {
      if (has_arc(u, v) && has_arc(v, u)) return false;
    }
  }
  return true;
}

Digraph Digraph::without_loops() const {
  Digraph g = *this;
  for (std::uint32_t u = 0; u < n_; ++u) g.set_arc(u, u, false);
  return g;
}

Digraph Digraph::permuted(std::span<const std::uint32_t> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
  Digraph g(n_, label_);
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (has_arc(u, v)) g.set_arc(perm[u], perm[v]);
    }
  }
  return g;
}

Digraph Digraph::disjoint_union(const Digraph& other) const {
  Digraph g(n_ + other.n_);
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (has_arc(u, v)) g.set_arc(u, v);
    }
  }
  for (std::uint32_t u = 0; u < other.n_; ++u) {
    for (std::uint32_t v = 0; v < other.n_; ++v) {
      if (other.has_arc(u, v)) g.set_arc(n_ + u, n_ + v);
    }
  }
  return g;
}

void Digraph::write_text(std::ostream& os) const {
  os << n_ << '\n';
  std::string line(n_, '0');
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = 0; v < n_; ++v) line[v] = has_arc(u, v) ? '1' : '0';
    os << line << '\n';
  }
}

std::string Digraph::to_text() const {
  std::ostringstream os;
  write_text(os);
  return os.str();
}

Digraph Digraph::from_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("missing vertex count");
  std::uint32_t n = 0;
  try {
    std::size_t pos = 0;
    const unsigned long parsed = std::stoul(line, &pos);
    if (pos != line.size()) throw std::invalid_argument("trailing characters");
    n = static_cast<std::uint32_t>(parsed);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad vertex count line: '" + line + "'");
  }
  Digraph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!std::getline(is, line)) throw std::invalid_argument("missing row " + std::to_string(u));
    if (line.size() != n) throw std::invalid_argument("row " + std::to_string(u) + " has wrong length");
    for (std::uint32_t v = 0; v < n; ++v) {
      if (line[v] == '1') {
        g.set_arc(u, v);
      } else if (line[v] != '0') {
        throw std::invalid_argument("row " + std::to_string(u) + " contains a non-0/1 character");
      }
    }
  }
  return g;
}

}  // namespace ddwl
