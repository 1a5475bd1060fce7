#pragma once

// The canonical MAG <-> classical graph isomorphism: composite vertex v maps
// to the classical vertex vertex_rank(v).

#include "magc/core.hpp"
#include "magc/ordering.hpp"

namespace magc {

inline ClassicalGraph mag_to_graph(const Mag& g) {
  ClassicalGraph out;
  out.n = to_u64(g.tau().num_vertices(), "number of composite vertices");
  out.edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    // lo < hi lexicographically, hence rank(lo) < rank(hi) and the output
    // stays sorted.
    out.edges.emplace_back(static_cast<std::uint64_t>(vertex_rank(e.lo, g.tau())),
                           static_cast<std::uint64_t>(vertex_rank(e.hi, g.tau())));
  }
  return out;
}

inline Mag graph_to_mag(const ClassicalGraph& graph, const CompanionTuple& tau) {
  const Natural n = tau.num_vertices();
  if (Natural(graph.n) != n) {
    throw Error(Errc::SizeMismatch, "graph has " + std::to_string(graph.n) + " vertices, tau=(" + tau.str() +
                                        ") has " + n.str());
  }
  std::vector<CompositeEdge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [u, v] : graph.edges) {
    if (u < 1 || v < 1 || u > graph.n || v > graph.n) {
      throw Error(Errc::CoordOutOfRange, "graph edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    if (u == v) throw Error(Errc::SelfLoop, "graph edge " + std::to_string(u) + "-" + std::to_string(v));
    edges.push_back(CompositeEdge::between(rank_vertex(u, tau), rank_vertex(v, tau)));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Mag::from_canonical(tau, std::move(edges));
}

}  // namespace magc
