#pragma once

// Text formats.
//
//   MagFile:    magv1 / tau=<n1>,...,<np> / edge=(a1,...,ap)-(b1,...,bp)
//   Graph file: graphv1 / n=<N> / edge=<u>-<v>
//
// Blank lines and lines starting with '#' are ignored. Writers emit edges in
// ascending index order, so write(read(write(g))) == write(g).

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "magc/core.hpp"

namespace magc {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::Parse, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                 std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::uint64_t> parse_u64_list(std::string_view text, std::string_view what) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_u64(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Non-empty, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const std::string_view line = trim(text.substr(start, nl - start));
    if (!line.empty() && line.front() != '#') out.emplace_back(line_no, std::string(line));
    start = nl + 1;
  }
  return out;
}

}  // namespace detail

/// "2,2" -> (2,2). Sizes must be >= 1.
inline CompanionTuple parse_tau(std::string_view text) {
  const auto sizes = detail::parse_u64_list(text, "tau");
  for (auto n : sizes) {
    if (n < 1) throw Error(Errc::InvalidTuple, "aspect sizes must be >= 1, got tau=" + std::string(text));
  }
  return CompanionTuple(sizes);
}

/// "(1,2)" -> composite vertex; range checks are left to the caller.
inline CompositeVertex parse_vertex(std::string_view text) {
  text = detail::trim(text);
  if (text.size() < 3 || text.front() != '(' || text.back() != ')') {
    throw Error(Errc::Parse, "expected a vertex like (1,2), got '" + std::string(text) + "'");
  }
  return CompositeVertex(detail::parse_u64_list(text.substr(1, text.size() - 2), "vertex coordinate"));
}

/// "(1,2)-(2,1)" -> the ordered pair as written.
inline RawEdge parse_edge_text(std::string_view text) {
  text = detail::trim(text);
  const std::size_t dash = text.find(")-(");
  if (dash == std::string_view::npos) {
    throw Error(Errc::Parse, "expected an edge like (1,2)-(2,1), got '" + std::string(text) + "'");
  }
  return {parse_vertex(text.substr(0, dash + 1)), parse_vertex(text.substr(dash + 2))};
}

inline Mag read_mag_file(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty() || lines[0].second != "magv1") throw Error(Errc::Parse, "MagFile must start with 'magv1'");
  if (lines.size() < 2 || !lines[1].second.starts_with("tau=")) {
    throw Error(Errc::Parse, "MagFile line after 'magv1' must be 'tau=...'");
  }
  const CompanionTuple tau = parse_tau(std::string_view(lines[1].second).substr(4));
  std::vector<RawEdge> raw;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& [no, line] = lines[k];
    if (!line.starts_with("edge=")) {
      throw Error(Errc::Parse, "MagFile line " + std::to_string(no) + ": expected 'edge=...', got '" + line + "'");
    }
    raw.push_back(parse_edge_text(std::string_view(line).substr(5)));
  }
  return validate_mag(tau, std::span<const RawEdge>(raw));
}

inline std::string write_mag_file(const Mag& g) {
  std::string out = "magv1\ntau=" + g.tau().str() + "\n";
  for (const auto& e : g.edges()) out += "edge=" + e.str() + "\n";
  return out;
}

inline ClassicalGraph read_graph_file(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty() || lines[0].second != "graphv1") throw Error(Errc::Parse, "graph file must start with 'graphv1'");
  if (lines.size() < 2 || !lines[1].second.starts_with("n=")) {
    throw Error(Errc::Parse, "graph file line after 'graphv1' must be 'n=...'");
  }
  const std::uint64_t n = detail::parse_u64(std::string_view(lines[1].second).substr(2), "n");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& [no, line] = lines[k];
    const std::size_t dash = line.find('-');
    if (!line.starts_with("edge=") || dash == std::string::npos) {
      throw Error(Errc::Parse, "graph file line " + std::to_string(no) + ": expected 'edge=u-v', got '" + line + "'");
    }
    const std::string_view body = std::string_view(line).substr(5);
    const std::size_t d = body.find('-');
    edges.emplace_back(detail::parse_u64(body.substr(0, d), "vertex"), detail::parse_u64(body.substr(d + 1), "vertex"));
  }
  return validate_graph(n, std::move(edges));
}

inline std::string write_graph_file(const ClassicalGraph& g) {
  std::string out = "graphv1\nn=" + std::to_string(g.n) + "\n";
  for (const auto& [u, v] : g.edges) out += "edge=" + std::to_string(u) + "-" + std::to_string(v) + "\n";
  return out;
}

}  // namespace magc
