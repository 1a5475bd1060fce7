#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "magc/error.hpp"

namespace magc {

/// Finite bit sequence. Index 0 holds the leftmost bit, i.e. the "first
/// digit" of a characteristic string.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false) : bits_(n, value) {}

  /// Parses the ASCII text format: '0'/'1', whitespace ignored.
  static BitString parse(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '0' || c == '1') {
        out.bits_.push_back(c == '1');
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw Error(Errc::Parse, "invalid character '" + std::string(1, c) + "' at offset " + std::to_string(i) +
                                     " in bit string");
      }
    }
    return out;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_[i] = value; }
  void push_back(bool b) { bits_.push_back(b); }
  void reserve(std::size_t n) { bits_.reserve(n); }

  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  /// Appends the low `width` bits of `value`, most significant first.
  void append_bits(std::uint64_t value, unsigned width) {
    for (unsigned k = width; k-- > 0;) bits_.push_back(((value >> k) & 1u) != 0);
  }

  BitString prefix(std::size_t n) const {
    BitString out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, bits_.size())));
    return out;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (bool b : bits_) c += b ? 1 : 0;
    return c;
  }

  std::string str() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

/// Sequential reader over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& bits, std::size_t pos = 0) : bits_(&bits), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_->size() - pos_; }
  bool at_end() const noexcept { return pos_ >= bits_->size(); }

  bool read() {
    if (at_end()) throw Error(Errc::MalformedCode, "unexpected end of bit stream at bit " + std::to_string(pos_));
    return (*bits_)[pos_++];
  }

  std::uint64_t read_bits(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned k = 0; k < width; ++k) v = (v << 1) | (read() ? 1u : 0u);
    return v;
  }

 private:
  const BitString* bits_;
  std::size_t pos_;
};

}  // namespace magc
