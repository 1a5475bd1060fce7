#pragma once

// Family-wide composite-edge labeling for all MAGs of order p whose aspects
// share one size s >= n0.
//
// The family sequence is built in blocks. Block n0 is the per-MAG sequence of
// the size-n0 MAG; block s > n0 appends, in the per-MAG order at size s, the
// edges that first exist at size s (some coordinate equals s). Hence the
// first M(s) = C(s^p, 2) family indices are exactly the edges of the size-s
// MAG (the prefix property), and indices are independent of s.

#include <optional>
#include <string>

#include "magc/core.hpp"
#include "magc/ordering.hpp"

namespace magc {

struct FamilySpec {
  std::size_t p = 1;
  Coord n0 = 1;

  FamilySpec(std::size_t order, Coord initial_size) : p(order), n0(initial_size) {
    if (p < 1) throw Error(Errc::InvalidTuple, "family order p must be >= 1");
    if (n0 < 1) throw Error(Errc::InvalidTuple, "family initial size n0 must be >= 1");
  }

  CompanionTuple tuple(Coord s) const { return CompanionTuple::uniform(p, s); }

  /// Cumulative family index count through size s: C(s^p, 2).
  Natural cumulative(Coord s) const { return s < n0 ? Natural(0) : tuple(s).num_possible_edges(); }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline Coord first_appearance_size(const CompositeEdge& e, const FamilySpec& spec) {
  return std::max({spec.n0, e.lo.max_coord(), e.hi.max_coord()});
}

namespace detail {

// Number of vertices with every coordinate <= t that precede v
// lexicographically. Coordinates of v may exceed t.
inline Natural old_vertices_before(const CompositeVertex& v, Coord t) {
  const std::size_t p = v.arity();
  Natural total = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const Coord below = std::min<Coord>(v.coords[i] - 1, t);
    Natural block = below;
    for (std::size_t k = i + 1; k < p; ++k) block *= t;
    total += block;
    if (v.coords[i] > t) break;
  }
  return total;
}

inline bool is_old(const CompositeVertex& v, Coord t) {
  return std::all_of(v.coords.begin(), v.coords.end(), [t](Coord c) { return c <= t; });
}

// Number of edges of the size-t MAG whose per-MAG position at size t + 1 is
// at or before the edge {lo < hi} (both read at size t + 1).
inline Natural old_edges_up_to(const CompositeVertex& lo, const CompositeVertex& hi, Coord t, std::size_t p) {
  Natural k = 1;
  for (std::size_t i = 0; i < p; ++i) k *= t;
  const Natural la = old_vertices_before(lo, t);
  Natural count = la * (k - 1) - la * (la - 1) / 2;
  if (is_old(lo, t)) {
    const Natural lb = old_vertices_before(hi, t) + (is_old(hi, t) ? 1 : 0);
    count += lb - la - 1;
  }
  return count;
}

inline void check_family_vertex(const CompositeVertex& v, const FamilySpec& spec) {
  if (v.arity() != spec.p) {
    throw Error(Errc::ArityMismatch, "vertex " + v.str() + " has " + std::to_string(v.arity()) +
                                         " coordinates, family order is " + std::to_string(spec.p));
  }
  for (Coord c : v.coords) {
    if (c < 1) throw Error(Errc::NonPositiveCoord, "vertex " + v.str() + " has a coordinate < 1");
  }
}

}  // namespace detail

/// Family-wide index of {u, v}; always >= 1.
inline Natural family_edge_index(const CompositeVertex& u, const CompositeVertex& v, const FamilySpec& spec) {
  detail::check_family_vertex(u, spec);
  detail::check_family_vertex(v, spec);
  if (u == v) throw Error(Errc::SelfLoop, "family_edge_index: " + u.str() + "-" + v.str());
  const CompositeEdge e = CompositeEdge::between(u, v);
  const Coord s = first_appearance_size(e, spec);
  const CompanionTuple tau = spec.tuple(s);
  const Natural local = *edge_index(e, tau);
  if (s == spec.n0) return local;
  return spec.cumulative(s - 1) + local - detail::old_edges_up_to(e.lo, e.hi, s - 1, spec.p);
}

inline Natural family_edge_index(const CompositeEdge& e, const FamilySpec& spec) {
  return family_edge_index(e.lo, e.hi, spec);
}

/// Inverse of family_edge_index; nullopt (the sentinel <0>) exactly for j = 0.
inline std::optional<CompositeEdge> family_index_edge(const Natural& j, const FamilySpec& spec) {
  if (j < 1) return std::nullopt;

  // Smallest s >= n0 with cumulative(s) >= j: gallop, then bisect.
  Coord lo = spec.n0;
  Coord hi = spec.n0;
  Coord step = 1;
  while (spec.cumulative(hi) < j) {
    lo = hi + 1;
    hi += step;
    step *= 2;
  }
  while (lo < hi) {
    const Coord mid = lo + (hi - lo) / 2;
    if (spec.cumulative(mid) >= j) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const Coord s = lo;
  const CompanionTuple tau = spec.tuple(s);
  if (s == spec.n0) return index_edge(j, tau);

  // Position within the block of new edges; find the smallest per-MAG index
  // at size s preceded (inclusive) by exactly `target` new edges.
  const Natural target = j - spec.cumulative(s - 1);
  const Natural n = tau.num_vertices();
  auto new_up_to = [&](const Natural& local) {
    const auto [a, b] = index_pair(local, n);
    return local - detail::old_edges_up_to(rank_vertex(a, tau), rank_vertex(b, tau), s - 1, spec.p);
  };
  Natural left = target;
  Natural right = tau.num_possible_edges();
  while (left < right) {
    Natural mid = (left + right) / 2;
    if (new_up_to(mid) >= target) {
      right = mid;
    } else {
      left = mid + 1;
    }
  }
  return index_edge(left, tau);
}

}  // namespace magc
