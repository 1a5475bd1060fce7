#pragma once

// Topological checks on MAGs: degrees, 2-paths, composite diameter, the
// least-neighbor star property, rigidity, and a seeded random MAG sampler.
// All graph work happens on the isomorphic classical graph, stored as bitset
// adjacency rows indexed by vertex rank - 1.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magc/core.hpp"
#include "magc/ordering.hpp"
#include "magc/random.hpp"

namespace magc {

inline constexpr std::uint64_t kMaxAnalysisVertices = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kDefaultAutomorphismLimit = std::uint64_t{1} << 10;

class Adjacency {
 public:
  explicit Adjacency(const Mag& g) : tau_(g.tau()) {
    const Natural n = g.tau().num_vertices();
    if (n > kMaxAnalysisVertices) {
      throw Error(Errc::TooLarge, "analysis supports at most 65536 composite vertices, tau=(" + tau_.str() + ") has " +
                                      n.str());
    }
    n_ = static_cast<std::size_t>(n);
    words_ = (n_ + 63) / 64;
    rows_.assign(n_ * words_, 0);
    for (const auto& e : g.edges()) {
      const auto u = static_cast<std::size_t>(vertex_rank(e.lo, tau_)) - 1;
      const auto v = static_cast<std::size_t>(vertex_rank(e.hi, tau_)) - 1;
      set(u, v);
      set(v, u);
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  const CompanionTuple& tau() const noexcept { return tau_; }

  bool adjacent(std::size_t u, std::size_t v) const noexcept { return (row(u)[v / 64] >> (v % 64)) & 1u; }
  const std::uint64_t* row(std::size_t u) const noexcept { return rows_.data() + u * words_; }

  std::size_t degree(std::size_t u) const noexcept {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(u)[w]));
    return d;
  }

  std::size_t common_neighbors(std::size_t u, std::size_t v) const noexcept {
    std::size_t c = 0;
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return c;
  }

  std::vector<std::size_t> neighbors(std::size_t u) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = row(u)[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::size_t index_of(const CompositeVertex& v) const { return static_cast<std::size_t>(vertex_rank(v, tau_)) - 1; }

 private:
  void set(std::size_t u, std::size_t v) noexcept { rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

  CompanionTuple tau_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Degrees

inline std::size_t degree(const Mag& g, const CompositeVertex& v) {
  check_vertex(v, g.tau(), "degree");
  std::size_t d = 0;
  for (const auto& e : g.edges()) d += (e.lo == v || e.hi == v) ? 1 : 0;
  return d;
}

struct DegreeDeviation {
  double max_deviation = 0;  // max_v |d(v) - (N - 1) / 2|
  double bound = 0;          // c * sqrt(N * (delta + lg N))
  bool within_bound = false;
};

inline DegreeDeviation degree_deviation_report(const Adjacency& adj, double c = 2.0, double delta = 0.0) {
  const auto n = static_cast<double>(adj.size());
  DegreeDeviation out;
  const double mean = (n - 1) / 2;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    out.max_deviation = std::max(out.max_deviation, std::abs(static_cast<double>(adj.degree(v)) - mean));
  }
  out.bound = c * std::sqrt(n * (delta + std::log2(n)));
  out.within_bound = out.max_deviation <= out.bound;
  return out;
}

inline DegreeDeviation degree_deviation_report(const Mag& g, double c = 2.0, double delta = 0.0) {
  return degree_deviation_report(Adjacency(g), c, delta);
}

// ---------------------------------------------------------------------------
// 2-paths

inline std::size_t two_path_count(const Adjacency& adj, std::size_t u, std::size_t v) {
  if (u == v) throw Error(Errc::SelfPair, "two_path_count needs distinct vertices");
  return adj.common_neighbors(u, v);
}

inline std::size_t two_path_count(const Mag& g, const CompositeVertex& u, const CompositeVertex& v) {
  check_vertex(u, g.tau(), "two_path_count");
  check_vertex(v, g.tau(), "two_path_count");
  if (u == v) throw Error(Errc::SelfPair, "two_path_count(" + u.str() + ", " + v.str() + ")");
  const Adjacency adj(g);
  return adj.common_neighbors(adj.index_of(u), adj.index_of(v));
}

struct TwoPathRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

/// Min and max 2-path counts over all unordered pairs; N >= 2.
inline TwoPathRange two_path_range(const Adjacency& adj) {
  TwoPathRange r{SIZE_MAX, 0};
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = u + 1; v < adj.size(); ++v) {
      const std::size_t c = adj.common_neighbors(u, v);
      r.min = std::min(r.min, c);
      r.max = std::max(r.max, c);
    }
  }
  if (r.min == SIZE_MAX) r.min = 0;
  return r;
}

// ---------------------------------------------------------------------------
// Composite diameter

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Adjacency& adj, std::size_t source) {
  const std::size_t n = adj.size();
  const std::size_t words = adj.words();
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::vector<std::uint64_t> visited(words, 0);
  std::vector<std::uint64_t> frontier(words, 0);
  std::vector<std::uint64_t> next(words, 0);
  visited[source / 64] |= std::uint64_t{1} << (source % 64);
  frontier = visited;
  dist[source] = 0;
  for (std::size_t level = 1;; ++level) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = frontier[w];
      while (bits != 0) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* r = adj.row(u);
        for (std::size_t k = 0; k < words; ++k) next[k] |= r[k];
      }
    }
    bool any = false;
    for (std::size_t w = 0; w < words; ++w) {
      next[w] &= ~visited[w];
      visited[w] |= next[w];
      any = any || next[w] != 0;
      std::uint64_t bits = next[w];
      while (bits != 0) {
        dist[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] = level;
        bits &= bits - 1;
      }
    }
    if (!any) break;
    frontier.swap(next);
  }
  return dist;
}

/// Largest shortest-path length over all pairs; nullopt when disconnected.
inline std::optional<std::size_t> composite_diameter(const Adjacency& adj) {
  std::size_t diameter = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    for (std::size_t d : bfs_distances(adj, s)) {
      if (d == SIZE_MAX) return std::nullopt;
      diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

inline std::optional<std::size_t> composite_diameter(const Mag& g) { return composite_diameter(Adjacency(g)); }

// ---------------------------------------------------------------------------
// Star property

/// The first min(k, degree) neighbors of v in rank order (0-based ranks).
inline std::vector<std::size_t> least_neighbors(const Adjacency& adj, std::size_t v, std::size_t k) {
  std::vector<std::size_t> out = adj.neighbors(v);
  if (out.size() > k) out.resize(k);
  return out;
}

inline std::vector<CompositeVertex> least_neighbors(const Mag& g, const CompositeVertex& v, std::size_t k) {
  check_vertex(v, g.tau(), "least_neighbors");
  const Adjacency adj(g);
  std::vector<CompositeVertex> out;
  for (std::size_t u : least_neighbors(adj, adj.index_of(v), k)) out.push_back(rank_vertex(u + 1, g.tau()));
  return out;
}

struct StarCheck {
  bool holds = true;
  /// First failing ordered pair (u, v) as 0-based ranks, scanning u then v.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

/// For every u != v: adjacent, or some vertex among the k least neighbors of
/// v is adjacent to u as well.
inline StarCheck star_property_check(const Adjacency& adj, std::size_t k) {
  const std::size_t n = adj.size();
  const std::size_t words = adj.words();
  std::vector<std::uint64_t> masks(n * words, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i : least_neighbors(adj, v, k)) masks[v * words + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || adj.adjacent(u, v)) continue;
      bool found = false;
      const std::uint64_t* ru = adj.row(u);
      for (std::size_t w = 0; w < words && !found; ++w) found = (ru[w] & masks[v * words + w]) != 0;
      if (!found) return StarCheck{false, std::make_pair(u, v)};
    }
  }
  return StarCheck{};
}

/// Default k = ceil((lg N)^2).
inline std::size_t default_star_k(std::size_t n) {
  if (n < 2) return 1;
  const double lg = std::log2(static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(lg * lg - 1e-9)));
}

// ---------------------------------------------------------------------------
// Rigidity

/// A permutation of vertex ranks: image[r] is the 0-based rank that r maps to.
struct Permutation {
  std::vector<std::size_t> image;

  bool is_identity() const {
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i] != i) return false;
    }
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

inline bool is_automorphism(const Adjacency& adj, const Permutation& pi) {
  const std::size_t n = adj.size();
  if (pi.image.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t x : pi.image) {
    if (x >= n || hit[x]) return false;
    hit[x] = true;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (adj.adjacent(u, v) != adj.adjacent(pi.image[u], pi.image[v])) return false;
    }
  }
  return true;
}

namespace detail {

// Ordered partition of the vertex set into cells.
using Partition = std::vector<std::vector<std::size_t>>;

// Refines to the coarsest equitable partition finer than `cells`, splitting
// each cell by the vector of neighbor counts into every current cell. New
// cells keep their parent's position and are ordered by signature, so two
// partitions refined in lockstep stay aligned. The trace records every split
// signature; equal traces are necessary for the pair to be isomorphic.
inline void refine(const Adjacency& adj, Partition& cells, std::vector<std::vector<std::size_t>>& trace) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> cell_of(n);
  for (;;) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (std::size_t v : cells[c]) cell_of[v] = c;
    }
    Partition next;
    next.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() == 1) {
        next.push_back(cells[c]);
        continue;
      }
      std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
      keyed.reserve(cells[c].size());
      for (std::size_t v : cells[c]) {
        std::vector<std::size_t> sig(cells.size(), 0);
        for (std::size_t u : adj.neighbors(v)) ++sig[cell_of[u]];
        keyed.emplace_back(std::move(sig), v);
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i;
        std::vector<std::size_t> cell;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) cell.push_back(keyed[j++].second);
        std::vector<std::size_t> record = keyed[i].first;
        record.push_back(c);
        record.push_back(cell.size());
        trace.push_back(std::move(record));
        next.push_back(std::move(cell));
        i = j;
      }
    }
    const bool stable = next.size() == cells.size();
    cells = std::move(next);
    if (stable) return;
  }
}

inline Partition individualize(const Partition& cells, std::size_t cell, std::size_t v) {
  Partition out;
  out.reserve(cells.size() + 1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c != cell) {
      out.push_back(cells[c]);
      continue;
    }
    out.push_back({v});
    std::vector<std::size_t> rest;
    for (std::size_t x : cells[c]) {
      if (x != v) rest.push_back(x);
    }
    out.push_back(std::move(rest));
  }
  return out;
}

inline bool same_shape(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c].size() != b[c].size()) return false;
  }
  return true;
}

// Searches for an automorphism mapping the left ordered partition onto the
// right one; returns the first non-identity automorphism encountered.
inline std::optional<Permutation> search(const Adjacency& adj, const Partition& left, const Partition& right) {
  if (left.size() == adj.size()) {
    Permutation pi{std::vector<std::size_t>(adj.size())};
    for (std::size_t c = 0; c < left.size(); ++c) pi.image[left[c][0]] = right[c][0];
    if (!pi.is_identity() && is_automorphism(adj, pi)) return pi;
    return std::nullopt;
  }
  std::size_t cell = 0;
  while (left[cell].size() == 1) ++cell;
  const std::size_t v = left[cell][0];

  std::vector<std::vector<std::size_t>> left_trace;
  Partition l = individualize(left, cell, v);
  refine(adj, l, left_trace);

  // Try images other than v first: those branches yield non-identity maps.
  std::vector<std::size_t> images = right[cell];
  std::stable_partition(images.begin(), images.end(), [v](std::size_t w) { return w != v; });
  for (std::size_t w : images) {
    std::vector<std::vector<std::size_t>> right_trace;
    Partition r = individualize(right, cell, w);
    refine(adj, r, right_trace);
    if (right_trace != left_trace || !same_shape(l, r)) continue;
    if (auto found = search(adj, l, r)) return found;
  }
  return std::nullopt;
}

}  // namespace detail

/// Non-identity automorphism of the MAG's vertex adjacency, if any. Search
/// uses equitable refinement with individualization and backtracking; every
/// hit is re-verified against the adjacency before being returned.
inline std::optional<Permutation> find_nontrivial_automorphism(const Adjacency& adj,
                                                               std::uint64_t limit = kDefaultAutomorphismLimit) {
  if (adj.size() > limit) {
    throw Error(Errc::SearchLimitExceeded,
                std::to_string(adj.size()) + " vertices exceeds automorphism search limit " + std::to_string(limit));
  }
  if (adj.size() < 2) return std::nullopt;
  detail::Partition unit{std::vector<std::size_t>(adj.size())};
  for (std::size_t v = 0; v < adj.size(); ++v) unit[0][v] = v;
  std::vector<std::vector<std::size_t>> trace;
  detail::refine(adj, unit, trace);
  return detail::search(adj, unit, unit);
}

inline std::optional<Permutation> find_nontrivial_automorphism(const Mag& g,
                                                               std::uint64_t limit = kDefaultAutomorphismLimit) {
  if (g.tau().num_vertices() > limit) {
    throw Error(Errc::SearchLimitExceeded, g.tau().num_vertices().str() +
                                               " vertices exceeds automorphism search limit " + std::to_string(limit));
  }
  return find_nontrivial_automorphism(Adjacency(g), limit);
}

// ---------------------------------------------------------------------------
// Random MAGs

/// Each possible edge, in index order, is present with probability `density`
/// using one draw of the counter-mode generator per edge.
inline Mag random_mag(const CompanionTuple& tau, std::uint64_t seed, double density) {
  if (!(density >= 0.0 && density <= 1.0)) throw Error(Errc::Parse, "density must lie in [0, 1]");
  CounterRng rng(seed);
  std::vector<CompositeEdge> edges;
  for (EdgeCursor c(tau); !c.done(); c.next()) {
    if (rng.bernoulli(density)) edges.push_back(CompositeEdge{c.lo(), c.hi()});
  }
  return Mag::from_canonical(tau, std::move(edges));
}

// ---------------------------------------------------------------------------
// Report

struct TopologyParams {
  double c = 2.0;
  double delta = 0.0;
  std::optional<std::size_t> star_k;  // default ceil((lg N)^2)
  std::uint64_t automorphism_limit = kDefaultAutomorphismLimit;
};

struct TopologyReport {
  std::size_t n_vertices = 0;
  std::size_t edge_count = 0;
  DegreeDeviation degrees;
  std::optional<std::size_t> diameter;
  TwoPathRange two_paths;
  std::size_t star_k = 0;
  StarCheck star;
  /// Empty when the automorphism search was skipped (N above the limit).
  std::optional<bool> rigid;
  std::optional<Permutation> witness_automorphism;
};

inline TopologyReport topology_report(const Mag& g, const TopologyParams& params = {}) {
  const Adjacency adj(g);
  TopologyReport r;
  r.n_vertices = adj.size();
  r.edge_count = g.edge_count();
  r.degrees = degree_deviation_report(adj, params.c, params.delta);
  r.diameter = composite_diameter(adj);
  r.two_paths = two_path_range(adj);
  r.star_k = params.star_k.value_or(default_star_k(adj.size()));
  r.star = star_property_check(adj, r.star_k);
  if (adj.size() <= params.automorphism_limit) {
    r.witness_automorphism = find_nontrivial_automorphism(adj, params.automorphism_limit);
    r.rigid = !r.witness_automorphism.has_value();
  }
  return r;
}

}  // namespace magc
