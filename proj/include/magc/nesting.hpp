#pragma once

// Nesting families driven by bit sources, subMAG predicates, and the
// bit-driven companion tuple with its recovery procedure.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "magc/bits.hpp"
#include "magc/codec.hpp"
#include "magc/core.hpp"
#include "magc/family.hpp"
#include "magc/random.hpp"

namespace magc {

/// Deterministic stream of bits 1, 2, 3, ... standing in for the binary
/// expansion of a real number.
class BitSource {
 public:
  enum class Kind { Seeded, Buffer, Pattern };

  /// Bits of the counter-mode SplitMix64 stream, most significant bit of
  /// each word first.
  static BitSource seeded(std::uint64_t seed) {
    BitSource s(Kind::Seeded, "seed:" + std::to_string(seed));
    s.seed_ = seed;
    return s;
  }

  /// A finite buffer; reading past its end raises SourceExhausted.
  static BitSource from_bits(BitString bits, std::string id) {
    BitSource s(Kind::Buffer, std::move(id));
    s.buffer_ = std::move(bits);
    return s;
  }

  static BitSource from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Parse, "cannot open bit file " + path);
    std::stringstream text;
    text << in.rdbuf();
    return from_bits(BitString::parse(text.str()), "file:" + path);
  }

  /// The pattern repeated forever, e.g. "1" or "10".
  static BitSource pattern(const std::string& text) {
    BitSource s(Kind::Pattern, "pattern:" + text);
    s.buffer_ = BitString::parse(text);
    if (s.buffer_.empty()) throw Error(Errc::EmptyBits, "constant pattern must contain at least one bit");
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& id() const noexcept { return id_; }
  /// 1-based index of the next bit to be emitted.
  std::uint64_t position() const noexcept { return pos_ + 1; }

  bool next() {
    const std::uint64_t i = pos_;
    switch (kind_) {
      case Kind::Seeded: {
        ++pos_;
        return ((splitmix64_at(seed_, i / 64) >> (63 - i % 64)) & 1u) != 0;
      }
      case Kind::Buffer:
        if (i >= buffer_.size()) {
          throw Error(Errc::SourceExhausted, id_ + " has only " + std::to_string(buffer_.size()) + " bits, bit " +
                                                 std::to_string(i + 1) + " requested");
        }
        ++pos_;
        return buffer_[i];
      case Kind::Pattern:
        ++pos_;
        return buffer_[i % buffer_.size()];
    }
    return false;
  }

  BitString take(std::size_t n) {
    BitString out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(next());
    return out;
  }

 private:
  BitSource(Kind kind, std::string id) : kind_(kind), id_(std::move(id)) {}

  Kind kind_;
  std::string id_;
  std::uint64_t seed_ = 0;
  BitString buffer_;
  std::uint64_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// SubMAG relations. Vertex sets are full products {1..n_1} x ... x {1..n_p},
// so V(a) is a subset of V(b) iff a's sizes are componentwise <= b's.

namespace detail {

inline void check_same_order(const Mag& a, const Mag& b) {
  if (a.tau().order() != b.tau().order()) {
    throw Error(Errc::ArityMismatch, "subMAG test between orders " + std::to_string(a.tau().order()) + " and " +
                                         std::to_string(b.tau().order()));
  }
}

inline bool vertices_within(const CompanionTuple& a, const CompanionTuple& b) {
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (a.size(i) > b.size(i)) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_submag(const Mag& a, const Mag& b) {
  detail::check_same_order(a, b);
  if (!detail::vertices_within(a.tau(), b.tau())) return false;
  return std::includes(b.edges().begin(), b.edges().end(), a.edges().begin(), a.edges().end());
}

inline bool is_vertex_induced_submag(const Mag& a, const Mag& b) {
  if (!is_submag(a, b)) return false;
  for (const auto& e : b.edges()) {
    if (is_valid_vertex(e.lo, a.tau()) && is_valid_vertex(e.hi, a.tau()) && !a.contains(e)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Nesting families

struct NestingFamily {
  FamilySpec spec;
  Coord s_max;
  std::vector<Mag> members;  // sizes n0, n0 + 1, ..., s_max
  std::string source_id;

  const Mag& member(Coord s) const { return members.at(static_cast<std::size_t>(s - spec.n0)); }
};

/// Member s is driven by the first C(s^p, 2) bits of the source through the
/// family labeling; consecutive members are vertex-induced subMAGs.
inline NestingFamily grow_family(BitSource& source, const FamilySpec& spec, Coord s_max) {
  if (s_max < spec.n0) {
    throw Error(Errc::InvalidTuple, "s_max=" + std::to_string(s_max) + " below n0=" + std::to_string(spec.n0));
  }
  const std::size_t total = detail::edge_count_as_size(spec.tuple(s_max));
  const BitString bits = source.take(total);

  NestingFamily family{spec, s_max, {}, source.id()};
  std::vector<CompositeEdge> present;
  std::size_t j = 0;
  IndexedEdgeCursor cursor(spec.tuple(s_max), Indexer::family(spec.n0));
  for (Coord s = spec.n0; s <= s_max; ++s) {
    const std::size_t shell_end = static_cast<std::size_t>(spec.cumulative(s));
    for (; j < shell_end; ++j, cursor.next()) {
      if (bits[j]) present.push_back(CompositeEdge{cursor.lo(), cursor.hi()});
    }
    std::vector<CompositeEdge> edges = present;
    std::sort(edges.begin(), edges.end());
    family.members.push_back(Mag::from_canonical(spec.tuple(s), std::move(edges)));
  }
  return family;
}

// ---------------------------------------------------------------------------
// Bit-driven companion tuples: aspect i has size 2 iff bit i is 1, else 1.

inline CompanionTuple build_bitdriven_tau(const BitString& bits) {
  if (bits.empty()) throw Error(Errc::EmptyBits, "bit-driven companion tuple needs at least one bit");
  std::vector<Coord> sizes(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) sizes[i] = bits[i] ? 2 : 1;
  return CompanionTuple(std::move(sizes));
}

struct BitRecovery {
  BitString bits;
  /// 1-based aspects of size 2 whose second value never occurs in a
  /// present edge.
  std::vector<std::size_t> unwitnessed;
};

/// Accumulates the distinct i-th coordinates over endpoints of present
/// edges; bit i is 1 iff at least two distinct values are known. Value 1
/// belongs to every aspect, so it counts as known from the start and a
/// witnessed coordinate 2 alone sets the bit.
class BitRecoverer {
 public:
  explicit BitRecoverer(const CompanionTuple& tau) : tau_(tau), witnessed_(tau.order(), false) {}

  void observe(const CompositeVertex& v) {
    for (std::size_t i = 0; i < witnessed_.size(); ++i) {
      if (v.coords[i] >= 2) witnessed_[i] = true;
    }
  }

  void observe(const CompositeVertex& lo, const CompositeVertex& hi, bool present) {
    if (!present) return;
    observe(lo);
    observe(hi);
  }

  BitRecovery result() const {
    BitRecovery out;
    for (std::size_t i = 0; i < witnessed_.size(); ++i) {
      out.bits.push_back(witnessed_[i]);
      if (tau_.size(i) >= 2 && !witnessed_[i]) out.unwitnessed.push_back(i + 1);
    }
    return out;
  }

 private:
  CompanionTuple tau_;
  std::vector<bool> witnessed_;
};

inline BitRecovery recover_bits(const EdgeSetString& s) {
  BitRecoverer r(s.tau);
  for (const auto& entry : s.entries) r.observe(entry.edge.lo, entry.edge.hi, entry.present);
  return r.result();
}

/// Recovers from a serialized <E>, parsing it incrementally.
inline BitRecovery recover_bits(const BitString& edge_set_string) {
  std::optional<BitRecoverer> r;
  const EdgeSetParser* self = nullptr;
  EdgeSetParser parser([&](std::uint64_t, const CompositeVertex& lo, const CompositeVertex& hi, bool z) {
    if (!r) r.emplace(*self->tau());
    r->observe(lo, hi, z);
  });
  self = &parser;
  for (std::size_t i = 0; i < edge_set_string.size(); ++i) parser.feed(edge_set_string[i]);
  parser.finish();
  if (!r) r.emplace(*parser.tau());
  return r->result();
}

/// Encodes <E> of g and recovers the bits from it as one pipeline, without
/// holding the whole string in memory.
inline BitRecovery recover_bits_streaming(const Mag& g) {
  std::optional<BitRecoverer> r;
  const EdgeSetParser* self = nullptr;
  EdgeSetParser parser([&](std::uint64_t, const CompositeVertex& lo, const CompositeVertex& hi, bool z) {
    if (!r) r.emplace(*self->tau());
    r->observe(lo, hi, z);
  });
  self = &parser;
  write_edge_set_string(g, Indexer::per_mag(), [&parser](bool b) { parser.feed(b); });
  parser.finish();
  if (!r) r.emplace(*parser.tau());
  return r->result();
}

/// Throws UnwitnessedAspect unless the recovery is complete and equals
/// `expected`.
inline void check_recovery(const BitRecovery& got, const BitString& expected) {
  if (!got.unwitnessed.empty()) {
    throw Error(Errc::UnwitnessedAspect, "aspect " + std::to_string(got.unwitnessed.front()) +
                                             " has size 2 but no present edge uses coordinate 2");
  }
  if (got.bits != expected) {
    throw Error(Errc::UnwitnessedAspect, "recovered " + got.bits.str() + ", expected " + expected.str());
  }
}

}  // namespace magc
