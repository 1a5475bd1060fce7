#pragma once

// Bit-exact encodings.
//
//   natural      Elias delta, n >= 1 (0 is reserved for sentinels)
//   <tau>        delta(p) delta(n_1) ... delta(n_p)
//   x            characteristic string: bit j set iff edge e_j is present
//   <E>          <tau>, then for j = 1..M: delta of every coordinate of
//                e_j.lo and e_j.hi, followed by the literal bit z_j

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magc/bits.hpp"
#include "magc/core.hpp"
#include "magc/family.hpp"
#include "magc/ordering.hpp"

namespace magc {

// ---------------------------------------------------------------------------
// Self-delimiting naturals

inline void encode_natural(std::uint64_t n, BitString& out) {
  if (n == 0) throw Error(Errc::ZeroNotEncodable, "Elias delta encodes naturals >= 1");
  const unsigned len = static_cast<unsigned>(std::bit_width(n));
  const unsigned len_len = static_cast<unsigned>(std::bit_width(len));
  out.append_bits(0, len_len - 1);
  out.append_bits(len, len_len);
  out.append_bits(n, len - 1);
}

inline BitString encode_natural(std::uint64_t n) {
  BitString out;
  encode_natural(n, out);
  return out;
}

inline std::size_t natural_code_length(std::uint64_t n) {
  if (n == 0) throw Error(Errc::ZeroNotEncodable, "Elias delta encodes naturals >= 1");
  const unsigned len = static_cast<unsigned>(std::bit_width(n));
  const unsigned len_len = static_cast<unsigned>(std::bit_width(len));
  return 2 * len_len - 1 + len - 1;
}

inline std::uint64_t decode_natural(BitReader& in) {
  unsigned zeros = 0;
  while (!in.read()) {
    if (++zeros > 6) throw Error(Errc::MalformedCode, "delta length prefix too long");
  }
  const std::uint64_t len = (std::uint64_t{1} << zeros) | in.read_bits(zeros);
  if (len > 64) throw Error(Errc::MalformedCode, "delta code wider than 64 bits");
  const unsigned rest = static_cast<unsigned>(len - 1);
  return (std::uint64_t{1} << rest) | in.read_bits(rest);
}

/// Push-style Elias delta decoder: feed bits one at a time.
class DeltaDecoder {
 public:
  /// Returns the decoded value once the final bit of a codeword arrives.
  std::optional<std::uint64_t> feed(bool bit) {
    switch (phase_) {
      case Phase::Zeros:
        if (!bit) {
          if (++zeros_ > 6) throw Error(Errc::MalformedCode, "delta length prefix too long");
          return std::nullopt;
        }
        acc_ = 1;
        pending_ = zeros_;
        phase_ = Phase::Length;
        if (pending_ == 0) return finish_length();
        return std::nullopt;
      case Phase::Length:
        acc_ = (acc_ << 1) | (bit ? 1u : 0u);
        if (--pending_ == 0) return finish_length();
        return std::nullopt;
      case Phase::Payload:
        acc_ = (acc_ << 1) | (bit ? 1u : 0u);
        if (--pending_ == 0) return emit(acc_);
        return std::nullopt;
    }
    return std::nullopt;
  }

  bool idle() const noexcept { return phase_ == Phase::Zeros && zeros_ == 0; }

 private:
  enum class Phase { Zeros, Length, Payload };

  std::optional<std::uint64_t> finish_length() {
    if (acc_ > 64) throw Error(Errc::MalformedCode, "delta code wider than 64 bits");
    pending_ = static_cast<unsigned>(acc_ - 1);
    acc_ = 1;
    if (pending_ == 0) return emit(1);
    phase_ = Phase::Payload;
    return std::nullopt;
  }

  std::optional<std::uint64_t> emit(std::uint64_t v) {
    phase_ = Phase::Zeros;
    zeros_ = 0;
    return v;
  }

  Phase phase_ = Phase::Zeros;
  unsigned zeros_ = 0;
  unsigned pending_ = 0;
  std::uint64_t acc_ = 0;
};

// ---------------------------------------------------------------------------
// Companion tuples

inline void encode_companion_tuple(const CompanionTuple& tau, BitString& out) {
  encode_natural(tau.order(), out);
  for (Coord n : tau.sizes()) encode_natural(n, out);
}

inline BitString encode_companion_tuple(const CompanionTuple& tau) {
  BitString out;
  encode_companion_tuple(tau, out);
  return out;
}

inline CompanionTuple decode_companion_tuple(BitReader& in) {
  const std::uint64_t p = decode_natural(in);
  // Each size needs at least one bit; reject impossible arities up front.
  if (p > in.remaining()) throw Error(Errc::MalformedCode, "tuple arity " + std::to_string(p) + " exceeds stream");
  std::vector<Coord> sizes(p);
  for (auto& n : sizes) n = decode_natural(in);
  return CompanionTuple(std::move(sizes));
}

inline CompanionTuple decode_companion_tuple(const BitString& bits) {
  BitReader in(bits);
  CompanionTuple tau = decode_companion_tuple(in);
  if (!in.at_end()) throw Error(Errc::MalformedCode, "trailing bits after companion tuple");
  return tau;
}

// ---------------------------------------------------------------------------
// Indexers

/// Selects the edge labeling: per-MAG (given tau) or family-wide (p, n0).
class Indexer {
 public:
  static Indexer per_mag() { return Indexer(false, 1); }
  static Indexer family(Coord n0) { return Indexer(true, n0); }

  bool is_family() const noexcept { return family_; }
  Coord n0() const noexcept { return n0_; }

  /// Family indexing requires equal aspect sizes >= n0.
  void check(const CompanionTuple& tau) const {
    if (!family_) return;
    if (!tau.is_uniform()) {
      throw Error(Errc::IndexerMismatch, "family indexer needs equal aspect sizes, got (" + tau.str() + ")");
    }
    if (tau.size(0) < n0_) {
      throw Error(Errc::IndexerMismatch,
                  "aspect size " + std::to_string(tau.size(0)) + " below family n0=" + std::to_string(n0_));
    }
  }

  FamilySpec spec_for(const CompanionTuple& tau) const { return FamilySpec(tau.order(), n0_); }

  Natural index_of(const CompositeEdge& e, const CompanionTuple& tau) const {
    if (family_) return family_edge_index(e, spec_for(tau));
    auto j = edge_index(e, tau);
    if (!j) throw Error(Errc::CoordOutOfRange, "edge " + e.str() + " not in tau=(" + tau.str() + ")");
    return *j;
  }

  std::string str() const { return family_ ? "family(n0=" + std::to_string(n0_) + ")" : "per-mag"; }

 private:
  Indexer(bool family, Coord n0) : family_(family), n0_(n0) {
    if (n0_ < 1) throw Error(Errc::InvalidTuple, "family n0 must be >= 1");
  }

  bool family_;
  Coord n0_;
};

/// Walks e_1, e_2, ..., e_M of tau in the indexer's order.
class IndexedEdgeCursor {
 public:
  IndexedEdgeCursor(const CompanionTuple& tau, const Indexer& indexer)
      : family_(indexer.is_family()),
        n0_(indexer.n0()),
        p_(tau.order()),
        s_max_(tau.size(0)),
        s_(family_ ? indexer.n0() : tau.size(0)),
        cursor_(family_ ? CompanionTuple::uniform(tau.order(), s_) : tau) {
    indexer.check(tau);
    skip_old();
  }

  bool done() const noexcept { return cursor_.done() && s_ >= s_max_; }
  const CompositeVertex& lo() const noexcept { return cursor_.lo(); }
  const CompositeVertex& hi() const noexcept { return cursor_.hi(); }

  void next() {
    cursor_.next();
    skip_old();
  }

 private:
  // Within a family block s > n0, skip edges that already existed at s - 1.
  void skip_old() {
    for (;;) {
      if (cursor_.done()) {
        if (!family_ || s_ >= s_max_) return;
        ++s_;
        cursor_ = EdgeCursor(CompanionTuple::uniform(p_, s_));
        continue;
      }
      if (!family_ || s_ == n0_ || cursor_.lo().max_coord() == s_ || cursor_.hi().max_coord() == s_) return;
      cursor_.next();
    }
  }

  bool family_;
  Coord n0_;
  std::size_t p_;
  Coord s_max_;
  Coord s_;
  EdgeCursor cursor_;
};

// ---------------------------------------------------------------------------
// Characteristic strings

namespace detail {

inline std::size_t edge_count_as_size(const CompanionTuple& tau) {
  return static_cast<std::size_t>(to_u64(tau.num_possible_edges(), "number of possible edges"));
}

inline Mag mag_from_bits(const BitString& x, const CompanionTuple& tau, const Indexer& indexer) {
  const Natural m = tau.num_possible_edges();
  if (Natural(x.size()) != m) {
    throw Error(Errc::LengthMismatch,
                "characteristic string has " + std::to_string(x.size()) + " bits, tau=(" + tau.str() + ") needs " + m.str());
  }
  std::vector<CompositeEdge> edges;
  std::size_t j = 0;
  for (IndexedEdgeCursor c(tau, indexer); !c.done(); c.next(), ++j) {
    if (x[j]) edges.push_back(CompositeEdge{c.lo(), c.hi()});
  }
  if (indexer.is_family()) std::sort(edges.begin(), edges.end());
  return Mag::from_canonical(tau, std::move(edges));
}

}  // namespace detail

/// Edge j is present iff bit j (1-based) of x is 1, under the per-MAG order.
inline Mag char_string_to_mag(const BitString& x, const CompanionTuple& tau) {
  return detail::mag_from_bits(x, tau, Indexer::per_mag());
}

/// Family variant: bit j drives family index j for the size-s member.
inline Mag char_string_family(const BitString& x, const FamilySpec& spec, Coord s) {
  return detail::mag_from_bits(x, spec.tuple(s), Indexer::family(spec.n0));
}

inline BitString mag_to_char_string(const Mag& g, const Indexer& indexer = Indexer::per_mag()) {
  indexer.check(g.tau());
  BitString x(detail::edge_count_as_size(g.tau()));
  for (const auto& e : g.edges()) {
    x.set(static_cast<std::size_t>(indexer.index_of(e, g.tau()) - 1));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Edge-set strings

struct EdgeSetEntry {
  CompositeEdge edge;
  bool present = false;

  friend bool operator==(const EdgeSetEntry&, const EdgeSetEntry&) = default;
};

/// The decoded form of <E>: entry j - 1 describes e_j.
struct EdgeSetString {
  CompanionTuple tau;
  std::vector<EdgeSetEntry> entries;
};

/// Streams <E> of g bit by bit into `sink(bool)`.
template <class Sink>
void write_edge_set_string(const Mag& g, const Indexer& indexer, Sink&& sink) {
  const CompanionTuple& tau = g.tau();
  indexer.check(tau);
  BitString header = encode_companion_tuple(tau);
  for (std::size_t i = 0; i < header.size(); ++i) sink(header[i]);

  // Coordinates never exceed their aspect size, so cache each code once.
  std::vector<std::vector<BitString>> codes(tau.order());
  auto code_of = [&](std::size_t aspect, Coord c) -> const BitString& {
    auto& row = codes[aspect];
    if (row.size() < c) row.resize(c);
    if (row[c - 1].empty()) row[c - 1] = encode_natural(c);
    return row[c - 1];
  };
  auto emit_vertex = [&](const CompositeVertex& v) {
    for (std::size_t i = 0; i < v.arity(); ++i) {
      const BitString& code = code_of(i, v.coords[i]);
      for (std::size_t k = 0; k < code.size(); ++k) sink(code[k]);
    }
  };

  const auto edges = g.edges();
  auto next_present = edges.begin();
  for (IndexedEdgeCursor c(tau, indexer); !c.done(); c.next()) {
    emit_vertex(c.lo());
    emit_vertex(c.hi());
    bool present;
    if (indexer.is_family()) {
      present = g.contains(CompositeEdge{c.lo(), c.hi()});
    } else {
      // Per-MAG order is the canonical edge order: merge.
      present = next_present != edges.end() && next_present->lo == c.lo() && next_present->hi == c.hi();
      if (present) ++next_present;
    }
    sink(present);
  }
}

inline BitString encode_edge_set_string(const Mag& g, const Indexer& indexer = Indexer::per_mag()) {
  BitString out;
  write_edge_set_string(g, indexer, [&out](bool b) { out.push_back(b); });
  return out;
}

/// Incremental parser for <E>. Feed every bit, then call finish(). The
/// callback receives (entry number from 1, lo, hi, z) as entries complete.
class EdgeSetParser {
 public:
  using EntryFn = std::function<void(std::uint64_t, const CompositeVertex&, const CompositeVertex&, bool)>;

  explicit EdgeSetParser(EntryFn on_entry) : on_entry_(std::move(on_entry)) {}

  void feed(bool bit) {
    ++consumed_;
    if (stage_ == Stage::Done) throw Error(Errc::MalformedCode, "trailing bits after final edge entry");
    if (stage_ == Stage::Presence) {
      ++entry_;
      on_entry_(entry_, lo_, hi_, bit);
      coord_ = 0;
      stage_ = (Natural(entry_) == total_) ? Stage::Done : Stage::Coords;
      return;
    }
    const auto value = delta_.feed(bit);
    if (!value) return;
    switch (stage_) {
      case Stage::Arity:
        arity_ = *value;
        sizes_.clear();
        stage_ = Stage::Sizes;
        break;
      case Stage::Sizes:
        sizes_.push_back(*value);
        if (sizes_.size() == arity_) start_entries();
        break;
      case Stage::Coords: {
        const std::size_t p = sizes_.size();
        CompositeVertex& v = coord_ < p ? lo_ : hi_;
        const std::size_t aspect = coord_ % p;
        if (*value > sizes_[aspect]) {
          throw Error(Errc::MalformedCode, "entry " + std::to_string(entry_ + 1) + ": coordinate " +
                                               std::to_string(*value) + " exceeds aspect size");
        }
        v.coords[aspect] = *value;
        if (++coord_ == 2 * p) stage_ = Stage::Presence;
        break;
      }
      default:
        break;
    }
  }

  void finish() const {
    if (stage_ != Stage::Done) {
      throw Error(Errc::MalformedCode, "edge-set string truncated after " + std::to_string(consumed_) + " bits");
    }
  }

  /// Available once the header has been read.
  const std::optional<CompanionTuple>& tau() const noexcept { return tau_; }

 private:
  enum class Stage { Arity, Sizes, Coords, Presence, Done };

  void start_entries() {
    tau_.emplace(sizes_);
    total_ = tau_->num_possible_edges();
    lo_ = CompositeVertex(std::vector<Coord>(sizes_.size(), 1));
    hi_ = lo_;
    coord_ = 0;
    stage_ = total_ == 0 ? Stage::Done : Stage::Coords;
  }

  EntryFn on_entry_;
  DeltaDecoder delta_;
  Stage stage_ = Stage::Arity;
  std::uint64_t arity_ = 0;
  std::vector<Coord> sizes_;
  std::optional<CompanionTuple> tau_;
  Natural total_ = 0;
  std::uint64_t entry_ = 0;
  std::size_t coord_ = 0;
  std::uint64_t consumed_ = 0;
  CompositeVertex lo_;
  CompositeVertex hi_;
};

/// Structural parse of <E> (no ordering check).
inline EdgeSetString parse_edge_set_string(const BitString& bits) {
  std::vector<EdgeSetEntry> entries;
  EdgeSetParser parser([&](std::uint64_t, const CompositeVertex& lo, const CompositeVertex& hi, bool z) {
    entries.push_back(EdgeSetEntry{CompositeEdge{lo, hi}, z});
  });
  for (std::size_t i = 0; i < bits.size(); ++i) parser.feed(bits[i]);
  parser.finish();
  return EdgeSetString{*parser.tau(), std::move(entries)};
}

/// Decodes <E>, checking that e_j is the indexer's j-th edge for every j.
inline Mag decode_edge_set_string(const BitString& bits, const Indexer& indexer = Indexer::per_mag()) {
  const EdgeSetParser* self = nullptr;
  std::optional<IndexedEdgeCursor> expected;
  std::vector<CompositeEdge> edges;
  EdgeSetParser parser([&](std::uint64_t j, const CompositeVertex& lo, const CompositeVertex& hi, bool z) {
    // Entries only arrive after the header, so the tuple is known here.
    if (!expected) expected.emplace(*self->tau(), indexer);
    if (expected->done() || expected->lo() != lo || expected->hi() != hi) {
      throw Error(Errc::IndexerMismatch, "entry " + std::to_string(j) + " lists " + lo.str() + "-" + hi.str() +
                                             ", " + indexer.str() + " order expects " +
                                             (expected->done() ? std::string("nothing")
                                                               : expected->lo().str() + "-" + expected->hi().str()));
    }
    expected->next();
    if (z) edges.push_back(CompositeEdge{lo, hi});
  });
  self = &parser;
  for (std::size_t i = 0; i < bits.size(); ++i) parser.feed(bits[i]);
  parser.finish();
  const CompanionTuple& tau = *parser.tau();
  indexer.check(tau);
  if (indexer.is_family()) std::sort(edges.begin(), edges.end());
  return Mag::from_canonical(tau, std::move(edges));
}

}  // namespace magc
