#pragma once

// Domain types for simple (undirected, loop-free) multiaspect graphs.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "magc/error.hpp"

namespace magc {

/// Cardinalities and indices. Vertex counts are products of aspect sizes and
/// leave 64 bits quickly, so everything index-valued is arbitrary precision.
using Natural = boost::multiprecision::cpp_int;

/// A single coordinate or aspect size. Always >= 1 when valid.
using Coord = std::uint64_t;

inline std::string to_string(const Natural& n) { return n.str(); }

/// Converts to uint64, throwing TooLarge when the value does not fit.
inline std::uint64_t to_u64(const Natural& n, std::string_view what) {
  if (n < 0 || n > Natural(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(Errc::TooLarge, std::string(what) + " = " + n.str() + " exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(n);
}

inline std::string join_coords(std::span<const Coord> coords) {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(coords[i]);
  }
  out += ')';
  return out;
}

/// The companion tuple: sizes of the p aspects, in aspect order.
class CompanionTuple {
 public:
  explicit CompanionTuple(std::vector<Coord> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw Error(Errc::InvalidTuple, "companion tuple needs at least one aspect");
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (sizes_[i] == 0) {
        throw Error(Errc::InvalidTuple, "aspect " + std::to_string(i + 1) + " has size 0");
      }
    }
  }
  CompanionTuple(std::initializer_list<Coord> sizes) : CompanionTuple(std::vector<Coord>(sizes)) {}

  /// p aspects, each of size n.
  static CompanionTuple uniform(std::size_t p, Coord n) { return CompanionTuple(std::vector<Coord>(p, n)); }

  std::size_t order() const noexcept { return sizes_.size(); }
  Coord size(std::size_t aspect) const { return sizes_.at(aspect); }
  std::span<const Coord> sizes() const noexcept { return sizes_; }

  bool is_uniform() const noexcept {
    return std::all_of(sizes_.begin(), sizes_.end(), [&](Coord n) { return n == sizes_.front(); });
  }

  Natural num_vertices() const {
    Natural n = 1;
    for (Coord s : sizes_) n *= s;
    return n;
  }

  Natural num_possible_edges() const {
    const Natural n = num_vertices();
    return (n * n - n) / 2;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(sizes_[i]);
    }
    return out;
  }

  friend bool operator==(const CompanionTuple&, const CompanionTuple&) = default;
  friend auto operator<=>(const CompanionTuple&, const CompanionTuple&) = default;

 private:
  std::vector<Coord> sizes_;
};

inline Natural num_vertices(const CompanionTuple& tau) { return tau.num_vertices(); }
inline Natural num_possible_edges(const CompanionTuple& tau) { return tau.num_possible_edges(); }

/// A p-tuple of 1-based coordinates. Comparison is lexicographic, which is
/// also the order of vertex ranks under any companion tuple.
struct CompositeVertex {
  std::vector<Coord> coords;

  CompositeVertex() = default;
  explicit CompositeVertex(std::vector<Coord> c) : coords(std::move(c)) {}
  CompositeVertex(std::initializer_list<Coord> c) : coords(c) {}

  std::size_t arity() const noexcept { return coords.size(); }
  Coord max_coord() const noexcept {
    return coords.empty() ? 0 : *std::max_element(coords.begin(), coords.end());
  }
  std::string str() const { return join_coords(coords); }

  friend bool operator==(const CompositeVertex&, const CompositeVertex&) = default;
  friend auto operator<=>(const CompositeVertex&, const CompositeVertex&) = default;
};

inline bool is_valid_vertex(const CompositeVertex& v, const CompanionTuple& tau) noexcept {
  if (v.arity() != tau.order()) return false;
  for (std::size_t i = 0; i < v.arity(); ++i) {
    if (v.coords[i] < 1 || v.coords[i] > tau.size(i)) return false;
  }
  return true;
}

/// Throws ArityMismatch or CoordOutOfRange naming `context`.
inline void check_vertex(const CompositeVertex& v, const CompanionTuple& tau, const std::string& context) {
  if (v.arity() != tau.order()) {
    throw Error(Errc::ArityMismatch, context + ": vertex " + v.str() + " has " + std::to_string(v.arity()) +
                                         " coordinates, tau has " + std::to_string(tau.order()) + " aspects");
  }
  if (!is_valid_vertex(v, tau)) {
    throw Error(Errc::CoordOutOfRange, context + ": vertex " + v.str() + " outside tau=(" + tau.str() + ")");
  }
}

/// Unordered pair of composite vertices, stored canonically with lo < hi.
struct CompositeEdge {
  CompositeVertex lo;
  CompositeVertex hi;

  static CompositeEdge between(CompositeVertex u, CompositeVertex v) {
    if (v < u) std::swap(u, v);
    return CompositeEdge{std::move(u), std::move(v)};
  }

  std::string str() const { return lo.str() + "-" + hi.str(); }

  friend bool operator==(const CompositeEdge&, const CompositeEdge&) = default;
  friend auto operator<=>(const CompositeEdge&, const CompositeEdge&) = default;
};

using RawEdge = std::pair<CompositeVertex, CompositeVertex>;

/// A simple MAG: companion tuple plus a canonical edge set. Edges are kept
/// sorted by (lo, hi), which coincides with ascending per-MAG edge index.
class Mag {
 public:
  explicit Mag(CompanionTuple tau) : tau_(std::move(tau)) {}

  const CompanionTuple& tau() const noexcept { return tau_; }
  std::span<const CompositeEdge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool contains(const CompositeEdge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
  bool contains(const CompositeVertex& u, const CompositeVertex& v) const {
    return contains(CompositeEdge::between(u, v));
  }

  /// Takes ownership of edges that are already valid for tau, canonical,
  /// sorted and unique. Used by decoders that produce edges in index order.
  static Mag from_canonical(CompanionTuple tau, std::vector<CompositeEdge> edges) {
    Mag g(std::move(tau));
    g.edges_ = std::move(edges);
    return g;
  }

  friend bool operator==(const Mag&, const Mag&) = default;

 private:
  CompanionTuple tau_;
  std::vector<CompositeEdge> edges_;
};

/// Builds a Mag from an arbitrary edge list. Symmetric duplicates collapse.
inline Mag validate_mag(const CompanionTuple& tau, std::span<const RawEdge> raw) {
  std::vector<CompositeEdge> edges;
  edges.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& [u, v] = raw[k];
    const std::string ctx = "edge #" + std::to_string(k + 1) + " " + u.str() + "-" + v.str();
    check_vertex(u, tau, ctx);
    check_vertex(v, tau, ctx);
    if (u == v) throw Error(Errc::SelfLoop, ctx);
    edges.push_back(CompositeEdge::between(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Mag::from_canonical(tau, std::move(edges));
}

inline Mag validate_mag(const CompanionTuple& tau, std::span<const CompositeEdge> edges) {
  std::vector<RawEdge> raw;
  raw.reserve(edges.size());
  for (const auto& e : edges) raw.emplace_back(e.lo, e.hi);
  return validate_mag(tau, std::span<const RawEdge>(raw));
}

/// Labeled undirected graph on {1..n} without self-loops; edges sorted, u < v.
struct ClassicalGraph {
  std::uint64_t n = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;

  friend bool operator==(const ClassicalGraph&, const ClassicalGraph&) = default;
};

inline ClassicalGraph validate_graph(std::uint64_t n, std::vector<std::pair<std::uint64_t, std::uint64_t>> edges) {
  for (auto& [u, v] : edges) {
    const std::string ctx = "edge " + std::to_string(u) + "-" + std::to_string(v);
    if (u < 1 || v < 1 || u > n || v > n) throw Error(Errc::CoordOutOfRange, ctx + " outside 1.." + std::to_string(n));
    if (u == v) throw Error(Errc::SelfLoop, ctx);
    if (v < u) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return ClassicalGraph{n, std::move(edges)};
}

}  // namespace magc
