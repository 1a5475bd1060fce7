#pragma once

// Per-MAG recursive labeling.
//
// Vertices are ranked in mixed radix with the rightmost coordinate varying
// fastest, so rank order equals lexicographic tuple order. Composite edges
// are the unordered pairs {a < b} of ranks listed row by row:
//
//   index(a, b) = (a - 1) * N - a * (a - 1) / 2 + (b - a)
//
// which is the position of (a, b) in the lexicographic list of ordered pairs
// once self-loops and the later of each symmetric pair are removed.

#include <optional>
#include <string>
#include <vector>

#include "magc/core.hpp"

namespace magc {

/// 1-based rank of v among all composite vertices of tau.
inline Natural vertex_rank(const CompositeVertex& v, const CompanionTuple& tau) {
  check_vertex(v, tau, "vertex_rank");
  Natural r = 0;
  for (std::size_t i = 0; i < tau.order(); ++i) {
    r *= tau.size(i);
    r += v.coords[i] - 1;
  }
  return r + 1;
}

/// Inverse of vertex_rank.
inline CompositeVertex rank_vertex(const Natural& rank, const CompanionTuple& tau) {
  const Natural n = tau.num_vertices();
  if (rank < 1 || rank > n) {
    throw Error(Errc::IndexOutOfRange, "vertex rank " + rank.str() + " outside 1.." + n.str());
  }
  std::vector<Coord> coords(tau.order());
  Natural rest = rank - 1;
  for (std::size_t i = tau.order(); i-- > 0;) {
    const Coord base = tau.size(i);
    coords[i] = static_cast<Coord>(rest % base) + 1;
    rest /= base;
  }
  return CompositeVertex(std::move(coords));
}

/// Steps v to its successor in rank order. Returns false (leaving v at the
/// first vertex) after the last vertex.
inline bool advance_vertex(CompositeVertex& v, const CompanionTuple& tau) {
  for (std::size_t i = tau.order(); i-- > 0;) {
    if (v.coords[i] < tau.size(i)) {
      ++v.coords[i];
      return true;
    }
    v.coords[i] = 1;
  }
  return false;
}

inline CompositeVertex first_vertex(const CompanionTuple& tau) {
  return CompositeVertex(std::vector<Coord>(tau.order(), 1));
}

/// All vertices in rank order. Throws TooLarge beyond `limit`.
inline std::vector<CompositeVertex> all_vertices(const CompanionTuple& tau, std::uint64_t limit = 1u << 24) {
  const Natural n = tau.num_vertices();
  if (n > limit) throw Error(Errc::TooLarge, "tau=(" + tau.str() + ") has " + n.str() + " vertices");
  std::vector<CompositeVertex> out;
  out.reserve(static_cast<std::size_t>(n));
  CompositeVertex v = first_vertex(tau);
  do {
    out.push_back(v);
  } while (advance_vertex(v, tau));
  return out;
}

namespace detail {

// First index of row a (pairs (a, b) with b > a).
inline Natural row_start(const Natural& a, const Natural& n) { return (a - 1) * n - a * (a - 1) / 2 + 1; }

}  // namespace detail

/// Index of the pair of ranks (a, b), a < b, in 1..M.
inline Natural pair_index(const Natural& a, const Natural& b, const Natural& n) {
  return (a - 1) * n - a * (a - 1) / 2 + (b - a);
}

/// Inverse of pair_index for 1 <= j <= M.
inline std::pair<Natural, Natural> index_pair(const Natural& j, const Natural& n) {
  // Largest a in [1, n-1] with row_start(a) <= j.
  Natural lo = 1;
  Natural hi = n - 1;
  while (lo < hi) {
    Natural mid = (lo + hi + 1) / 2;
    if (detail::row_start(mid, n) <= j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const Natural b = lo + (j - detail::row_start(lo, n)) + 1;
  return {lo, b};
}

/// Per-MAG edge index in 1..M; nullopt stands for the sentinel 0 returned
/// when an endpoint is outside tau or the pair is a self-loop.
inline std::optional<Natural> edge_index(const CompositeVertex& u, const CompositeVertex& v,
                                         const CompanionTuple& tau) {
  if (!is_valid_vertex(u, tau) || !is_valid_vertex(v, tau) || u == v) return std::nullopt;
  Natural a = vertex_rank(u, tau);
  Natural b = vertex_rank(v, tau);
  if (b < a) std::swap(a, b);
  return pair_index(a, b, tau.num_vertices());
}

inline std::optional<Natural> edge_index(const CompositeEdge& e, const CompanionTuple& tau) {
  return edge_index(e.lo, e.hi, tau);
}

/// Edge with index j; nullopt stands for the sentinel <0> outside 1..M.
inline std::optional<CompositeEdge> index_edge(const Natural& j, const CompanionTuple& tau) {
  if (j < 1 || j > tau.num_possible_edges()) return std::nullopt;
  const auto [a, b] = index_pair(j, tau.num_vertices());
  return CompositeEdge{rank_vertex(a, tau), rank_vertex(b, tau)};
}

/// Walks composite edges of tau in ascending index order without big-integer
/// arithmetic. Valid while !done().
class EdgeCursor {
 public:
  explicit EdgeCursor(CompanionTuple tau) : tau_(std::move(tau)), lo_(first_vertex(tau_)), hi_(lo_) {
    done_ = !advance_vertex(hi_, tau_);
  }

  bool done() const noexcept { return done_; }
  const CompositeVertex& lo() const noexcept { return lo_; }
  const CompositeVertex& hi() const noexcept { return hi_; }
  const CompanionTuple& tau() const noexcept { return tau_; }

  void next() {
    if (advance_vertex(hi_, tau_)) return;
    if (!advance_vertex(lo_, tau_)) {
      done_ = true;
      return;
    }
    hi_ = lo_;
    if (!advance_vertex(hi_, tau_)) done_ = true;
  }

 private:
  CompanionTuple tau_;
  CompositeVertex lo_;
  CompositeVertex hi_;
  bool done_ = false;
};

/// Mag containing every possible composite edge of tau.
inline Mag complete_mag(const CompanionTuple& tau) {
  std::vector<CompositeEdge> edges;
  for (EdgeCursor c(tau); !c.done(); c.next()) edges.push_back(CompositeEdge{c.lo(), c.hi()});
  return Mag::from_canonical(tau, std::move(edges));
}

}  // namespace magc
