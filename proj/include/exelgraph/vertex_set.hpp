#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "exelgraph/graph.hpp"

namespace exelgraph {

/// Subset of E⁰, stored as a membership vector sized to the graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : bits_(n, false) {}
  VertexSet(std::size_t n, std::initializer_list<Vertex> members) : bits_(n, false) {
    for (auto v : members) insert(v);
  }

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    s.bits_.assign(n, true);
    return s;
  }
  static VertexSet from_mask(std::size_t n, std::uint64_t mask) {
    VertexSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.bits_[i] = (mask >> i) & 1U;
    return s;
  }
  std::uint64_t mask() const {
    if (bits_.size() > 64) throw std::length_error("vertex set too large for a 64-bit mask");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) m |= std::uint64_t{1} << i;
    return m;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(Vertex v) const { return bits_[v.idx()]; }
  void insert(Vertex v) { bits_[v.idx()] = true; }
  void erase(Vertex v) { bits_[v.idx()] = false; }

  std::size_t size() const {
    std::size_t n = 0;
    for (bool b : bits_) n += b;
    return n;
  }
  bool empty() const { return size() == 0; }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.emplace_back(i);
    return out;
  }

  VertexSet complement() const {
    VertexSet s(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = !bits_[i];
    return s;
  }

  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }

  friend VertexSet operator&(const VertexSet& a, const VertexSet& b) {
    VertexSet s(a.bits_.size());
    for (std::size_t i = 0; i < a.bits_.size(); ++i) s.bits_[i] = a.bits_[i] && b.bits_[i];
    return s;
  }
  friend VertexSet operator|(const VertexSet& a, const VertexSet& b) {
    VertexSet s(a.bits_.size());
    for (std::size_t i = 0; i < a.bits_.size(); ++i) s.bits_[i] = a.bits_[i] || b.bits_[i];
    return s;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Orders by size, then by sorted member list.
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    const auto sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.members() < b.members();
  }

 private:
  std::vector<bool> bits_;
};

inline std::vector<std::string> names(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (auto v : s.members()) out.push_back(g.name(v));
  return out;
}

inline VertexSet vertex_set(const Graph& g, std::initializer_list<std::string_view> ids) {
  VertexSet s(g.num_vertices());
  for (auto id : ids) {
    auto v = g.find_vertex(id);
    if (!v) throw std::invalid_argument("unknown vertex '" + std::string(id) + "'");
    s.insert(*v);
  }
  return s;
}

}  // namespace exelgraph
