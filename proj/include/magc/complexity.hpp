#pragma once

// Compression-based upper-bound estimates of prefix complexity. Nothing here
// computes K; every number is the length of a verified lossless encoding
// plus a fixed adapter header, i.e. an upper bound up to an additive
// constant.

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magc/analysis.hpp"
#include "magc/bits.hpp"
#include "magc/codec.hpp"
#include "magc/core.hpp"
#include "magc/random.hpp"

namespace magc {

// ---------------------------------------------------------------------------
// Built-in dictionary compressor
//
// Stream: delta(n), then tokens until n bits are produced.
//   0 delta(k) b_1..b_k          literal run of k bits
//   1 delta(len - 15) delta(d)   copy len >= 16 bits starting d bits back
// Copies may overlap the bits they produce. Empty input encodes as empty.

namespace lz {

inline constexpr std::size_t kMinMatch = 16;
inline constexpr std::size_t kMaxCandidates = 64;

inline std::vector<std::uint8_t> unpack(const BitString& x) {
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] ? 1 : 0;
  return out;
}

}  // namespace lz

inline BitString builtin_compress(const BitString& input) {
  BitString out;
  if (input.empty()) return out;
  const std::vector<std::uint8_t> x = lz::unpack(input);
  const std::size_t n = x.size();
  encode_natural(n, out);

  std::vector<std::vector<std::uint32_t>> table(std::size_t{1} << lz::kMinMatch);
  auto window = [&](std::size_t i) {
    std::uint32_t w = 0;
    for (std::size_t k = 0; k < lz::kMinMatch; ++k) w = (w << 1) | x[i + k];
    return w;
  };
  auto remember = [&](std::size_t i) {
    if (i + lz::kMinMatch <= n) table[window(i)].push_back(static_cast<std::uint32_t>(i));
  };

  std::size_t run_start = 0;
  auto flush_literals = [&](std::size_t end) {
    if (end == run_start) return;
    out.push_back(false);
    encode_natural(end - run_start, out);
    for (std::size_t k = run_start; k < end; ++k) out.push_back(x[k] != 0);
  };

  std::size_t i = 0;
  while (i < n) {
    std::size_t best_len = 0;
    std::size_t best_from = 0;
    if (i + lz::kMinMatch <= n) {
      const auto& bucket = table[window(i)];
      std::size_t tried = 0;
      for (auto it = bucket.rbegin(); it != bucket.rend() && tried < lz::kMaxCandidates; ++it, ++tried) {
        const std::size_t j = *it;
        std::size_t len = 0;
        while (i + len < n && x[j + len] == x[i + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_from = j;
        }
        if (i + best_len == n) break;
      }
    }
    if (best_len >= lz::kMinMatch) {
      flush_literals(i);
      out.push_back(true);
      encode_natural(best_len - lz::kMinMatch + 1, out);
      encode_natural(i - best_from, out);
      for (std::size_t k = 0; k < best_len; ++k) remember(i + k);
      i += best_len;
      run_start = i;
    } else {
      remember(i);
      ++i;
    }
  }
  flush_literals(n);
  return out;
}

inline BitString builtin_decompress(const BitString& stream) {
  BitString out;
  if (stream.empty()) return out;
  try {
    BitReader in(stream);
    const std::uint64_t n = decode_natural(in);
    if (n > 64 * stream.size() + (std::uint64_t{1} << 20) && n > stream.size() * stream.size()) {
      throw Error(Errc::MalformedStream, "declared length implausible");
    }
    out.reserve(static_cast<std::size_t>(n));
    while (out.size() < n) {
      if (!in.read()) {
        const std::uint64_t k = decode_natural(in);
        if (k > n - out.size()) throw Error(Errc::MalformedStream, "literal run overruns declared length");
        for (std::uint64_t t = 0; t < k; ++t) out.push_back(in.read());
      } else {
        const std::uint64_t len = decode_natural(in) + lz::kMinMatch - 1;
        const std::uint64_t back = decode_natural(in);
        if (back > out.size()) throw Error(Errc::MalformedStream, "copy reaches before stream start");
        if (len > n - out.size()) throw Error(Errc::MalformedStream, "copy overruns declared length");
        const std::size_t from = out.size() - static_cast<std::size_t>(back);
        for (std::uint64_t t = 0; t < len; ++t) out.push_back(out[from + static_cast<std::size_t>(t)]);
      }
    }
    if (!in.at_end()) throw Error(Errc::MalformedStream, "trailing bits after final token");
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedStream) throw;
    throw Error(Errc::MalformedStream, e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adapters

class CompressorAdapter {
 public:
  virtual ~CompressorAdapter() = default;
  virtual std::string id() const = 0;
  virtual BitString compress(const BitString& x) const = 0;
  virtual BitString decompress(const BitString& y) const = 0;
  /// Bits charged on top of the payload to name the adapter.
  virtual std::size_t header_bits() const { return 2; }
};

/// delta(n) followed by the raw bits: K(x) <= l(x) + O(lg l(x)).
class LiteralAdapter final : public CompressorAdapter {
 public:
  std::string id() const override { return "literal"; }

  BitString compress(const BitString& x) const override {
    BitString out;
    if (x.empty()) return out;
    encode_natural(x.size(), out);
    out.append(x);
    return out;
  }

  BitString decompress(const BitString& y) const override {
    if (y.empty()) return {};
    BitReader in(y);
    const std::uint64_t n = decode_natural(in);
    if (n != in.remaining()) throw Error(Errc::MalformedStream, "literal length mismatch");
    BitString out;
    while (!in.at_end()) out.push_back(in.read());
    return out;
  }
};

class BuiltinAdapter final : public CompressorAdapter {
 public:
  std::string id() const override { return "lz"; }
  BitString compress(const BitString& x) const override { return builtin_compress(x); }
  BitString decompress(const BitString& y) const override { return builtin_decompress(y); }
};

namespace detail {

// Shorter of literal and builtin, behind one selector bit. Occupies the rest
// of the stream.
inline void compress_tail(const BitString& x, BitString& out) {
  const BitString lit = LiteralAdapter().compress(x);
  const BitString packed = builtin_compress(x);
  if (packed.size() < lit.size()) {
    out.push_back(true);
    out.append(packed);
  } else {
    out.push_back(false);
    out.append(lit);
  }
}

inline BitString decompress_tail(BitReader& in, const BitString& stream) {
  const bool packed = in.read();
  BitString rest;
  for (std::size_t i = in.position(); i < stream.size(); ++i) rest.push_back(stream[i]);
  return packed ? builtin_decompress(rest) : LiteralAdapter().decompress(rest);
}

}  // namespace detail

/// Codec-aware compressor: when the input is a well-formed edge-set string
/// under its indexer, stores <tau> and the compressed characteristic string
/// instead, rebuilding <E> on decompression. Other inputs fall back to the
/// generic path.
class EdgeSetAdapter final : public CompressorAdapter {
 public:
  explicit EdgeSetAdapter(Indexer indexer = Indexer::per_mag()) : indexer_(indexer) {}

  std::string id() const override { return "edgeset"; }

  BitString compress(const BitString& s) const override {
    BitString out;
    if (auto g = try_decode(s)) {
      out.push_back(true);
      encode_companion_tuple(g->tau(), out);
      detail::compress_tail(mag_to_char_string(*g, indexer_), out);
    } else {
      out.push_back(false);
      detail::compress_tail(s, out);
    }
    return out;
  }

  BitString decompress(const BitString& y) const override {
    BitReader in(y);
    if (!in.read()) return detail::decompress_tail(in, y);
    const CompanionTuple tau = decode_companion_tuple(in);
    const BitString x = detail::decompress_tail(in, y);
    return encode_edge_set_string(detail::mag_from_bits(x, tau, indexer_), indexer_);
  }

 private:
  std::optional<Mag> try_decode(const BitString& s) const {
    try {
      // Cheap screen: every entry costs at least 2p + 1 bits.
      BitReader in(s);
      const CompanionTuple tau = decode_companion_tuple(in);
      if (tau.num_possible_edges() * (2 * tau.order() + 1) > in.remaining()) return std::nullopt;
      return decode_edge_set_string(s, indexer_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Indexer indexer_;
};

// ---------------------------------------------------------------------------
// External adapters: subprocesses speaking the framed byte protocol
//   8-byte big-endian bit count, then the bits packed MSB-first, zero padded
// on both stdin and stdout.

inline std::string frame_bits(const BitString& bits) {
  std::string out(8 + (bits.size() + 7) / 8, '\0');
  const std::uint64_t n = bits.size();
  for (int k = 0; k < 8; ++k) out[static_cast<std::size_t>(k)] = static_cast<char>((n >> (56 - 8 * k)) & 0xFF);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[8 + i / 8] = static_cast<char>(static_cast<unsigned char>(out[8 + i / 8]) | (0x80u >> (i % 8)));
  }
  return out;
}

inline BitString unframe_bits(std::string_view bytes) {
  if (bytes.size() < 8) throw Error(Errc::MalformedStream, "frame shorter than its 8-byte header");
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < 8; ++k) n = (n << 8) | static_cast<unsigned char>(bytes[k]);
  if ((n + 7) / 8 != bytes.size() - 8) {
    throw Error(Errc::MalformedStream, "frame declares " + std::to_string(n) + " bits but carries " +
                                           std::to_string(bytes.size() - 8) + " payload bytes");
  }
  BitString out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(((static_cast<unsigned char>(bytes[8 + i / 8]) >> (7 - i % 8)) & 1u) != 0);
  }
  return out;
}

namespace detail {

class TempFile {
 public:
  TempFile() {
    std::string pattern = "/tmp/magc-XXXXXX";
    fd_ = ::mkstemp(pattern.data());
    if (fd_ < 0) throw Error(Errc::AdapterRoundTripFailure, "cannot create temporary file");
    path_ = pattern;
  }
  ~TempFile() {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  int fd() const noexcept { return fd_; }

  void write_all(const std::string& data) const {
    std::size_t done = 0;
    while (done < data.size()) {
      const ssize_t w = ::write(fd_, data.data() + done, data.size() - done);
      if (w <= 0) throw Error(Errc::AdapterRoundTripFailure, "write to temporary file failed");
      done += static_cast<std::size_t>(w);
    }
    ::lseek(fd_, 0, SEEK_SET);
  }

  std::string read_all() const {
    ::lseek(fd_, 0, SEEK_SET);
    std::string out;
    std::array<char, 4096> buf{};
    for (;;) {
      const ssize_t r = ::read(fd_, buf.data(), buf.size());
      if (r < 0) throw Error(Errc::AdapterRoundTripFailure, "read from temporary file failed");
      if (r == 0) break;
      out.append(buf.data(), static_cast<std::size_t>(r));
    }
    return out;
  }

 private:
  int fd_ = -1;
  std::string path_;
};

/// Runs argv with `input` on stdin and returns stdout; nonzero exit fails.
inline std::string run_filter(const std::vector<std::string>& argv, const std::string& input) {
  if (argv.empty()) throw Error(Errc::AdapterRoundTripFailure, "empty adapter command");
  TempFile in;
  TempFile out;
  in.write_all(input);
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(Errc::AdapterRoundTripFailure, "fork failed");
  if (pid == 0) {
    ::dup2(in.fd(), STDIN_FILENO);
    ::dup2(out.fd(), STDOUT_FILENO);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error(Errc::AdapterRoundTripFailure, "adapter command '" + argv[0] + "' exited abnormally");
  }
  return out.read_all();
}

}  // namespace detail

class SubprocessAdapter final : public CompressorAdapter {
 public:
  SubprocessAdapter(std::string id, std::vector<std::string> compress_argv, std::vector<std::string> decompress_argv)
      : id_(std::move(id)), compress_argv_(std::move(compress_argv)), decompress_argv_(std::move(decompress_argv)) {}

  std::string id() const override { return id_; }
  BitString compress(const BitString& x) const override {
    return unframe_bits(detail::run_filter(compress_argv_, frame_bits(x)));
  }
  BitString decompress(const BitString& y) const override {
    return unframe_bits(detail::run_filter(decompress_argv_, frame_bits(y)));
  }

 private:
  std::string id_;
  std::vector<std::string> compress_argv_;
  std::vector<std::string> decompress_argv_;
};

using AdapterSet = std::vector<std::unique_ptr<CompressorAdapter>>;

inline AdapterSet default_adapters(const Indexer& indexer = Indexer::per_mag()) {
  AdapterSet out;
  out.push_back(std::make_unique<LiteralAdapter>());
  out.push_back(std::make_unique<BuiltinAdapter>());
  out.push_back(std::make_unique<EdgeSetAdapter>(indexer));
  return out;
}

// ---------------------------------------------------------------------------
// Estimates

struct AdapterOutcome {
  std::string id;
  std::optional<std::size_t> bits;  // payload + header; empty when disqualified
  std::string failure;
};

struct KEstimate {
  std::size_t bits = 0;  // upper-bound estimate
  std::string adapter;
  std::vector<AdapterOutcome> outcomes;
};

/// Minimum over adapters of (compressed length + header). An adapter whose
/// output does not decompress back to x is disqualified.
inline KEstimate k_upper_bound(const BitString& x, std::span<const std::unique_ptr<CompressorAdapter>> adapters) {
  KEstimate est;
  std::optional<std::size_t> best;
  for (const auto& adapter : adapters) {
    AdapterOutcome outcome{adapter->id(), std::nullopt, {}};
    try {
      const BitString y = adapter->compress(x);
      if (adapter->decompress(y) != x) {
        outcome.failure = "round trip mismatch";
      } else {
        outcome.bits = y.size() + adapter->header_bits();
      }
    } catch (const std::exception& e) {
      outcome.failure = e.what();
    }
    if (outcome.bits && (!best || *outcome.bits < *best)) {
      best = outcome.bits;
      est.adapter = outcome.id;
    }
    est.outcomes.push_back(std::move(outcome));
  }
  if (!best) throw Error(Errc::AdapterRoundTripFailure, "every compressor adapter failed its round trip");
  est.bits = *best;
  return est;
}

inline KEstimate k_upper_bound(const BitString& x) { return k_upper_bound(x, default_adapters()); }

struct InformationReport {
  std::size_t x_bits = 0;         // characteristic string
  std::size_t edge_set_bits = 0;  // <E>
  std::size_t tau_bits = 0;       // <tau>
  KEstimate k_x;
  KEstimate k_edge_set;
  KEstimate k_tau;
  std::size_t length_gap = 0;     // edge_set_bits - x_bits, depends on tau only
  std::size_t estimate_gap = 0;   // |k_x - k_edge_set|
  std::size_t gap_threshold = 0;  // k_tau + slack
  bool flagged = false;           // estimate_gap > gap_threshold
  std::string indexer;
};

inline InformationReport information_report(const Mag& g, const Indexer& indexer, const AdapterSet& adapters,
                                            std::size_t slack = 64) {
  const BitString x = mag_to_char_string(g, indexer);
  const BitString e = encode_edge_set_string(g, indexer);
  const BitString t = encode_companion_tuple(g.tau());
  InformationReport r;
  r.indexer = indexer.str();
  r.x_bits = x.size();
  r.edge_set_bits = e.size();
  r.tau_bits = t.size();
  r.k_x = k_upper_bound(x, adapters);
  r.k_edge_set = k_upper_bound(e, adapters);
  r.k_tau = k_upper_bound(t, adapters);
  r.length_gap = r.edge_set_bits - r.x_bits;
  r.estimate_gap = r.k_x.bits > r.k_edge_set.bits ? r.k_x.bits - r.k_edge_set.bits : r.k_edge_set.bits - r.k_x.bits;
  r.gap_threshold = r.k_tau.bits + slack;
  r.flagged = r.estimate_gap > r.gap_threshold;
  return r;
}

inline InformationReport information_report(const Mag& g, const Indexer& indexer = Indexer::per_mag(),
                                            std::size_t slack = 64) {
  return information_report(g, indexer, default_adapters(indexer), slack);
}

/// Fraction of strings whose estimate is at least length - deficiency.
inline double fraction_incompressible(std::span<const BitString> strings, double deficiency,
                                      std::span<const std::unique_ptr<CompressorAdapter>> adapters) {
  if (strings.empty()) return 0.0;
  std::size_t pass = 0;
  for (const auto& x : strings) {
    if (static_cast<double>(k_upper_bound(x, adapters).bits) >= static_cast<double>(x.size()) - deficiency) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(strings.size());
}

/// Samples `trials` density-1/2 MAGs (trial t uses derive_seed(seed, t)) and
/// returns the fraction whose characteristic string estimate is at least
/// M - deficiency.
inline double fraction_estimate(const CompanionTuple& tau, std::size_t trials, double deficiency,
                                std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::Parse, "fraction_estimate needs at least one trial");
  const AdapterSet adapters = default_adapters();
  std::vector<BitString> strings;
  strings.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    strings.push_back(mag_to_char_string(random_mag(tau, derive_seed(seed, t), 0.5)));
  }
  return fraction_incompressible(strings, deficiency, adapters);
}

}  // namespace magc
