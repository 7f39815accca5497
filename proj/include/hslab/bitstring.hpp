#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hslab/error.hpp"

namespace hslab {

// Fixed-length bit sequence. Bit 0 is the first (most significant) bit; fields
// appended later sit to the right. Packed MSB-first into bytes, zero padded.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t width) : width_(width), bytes_((width + 7) / 8, 0) {}

  static BitString from_uint(std::uint64_t value, std::size_t width) {
    BitString b;
    b.append(value, width);
    return b;
  }

  std::size_t width() const { return width_; }
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  bool bit(std::size_t i) const {
    if (i >= width_) throw UsageError("BitString::bit out of range");
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }

  void set_bit(std::size_t i, bool v) {
    if (i >= width_) throw UsageError("BitString::set_bit out of range");
    const auto mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
    if (v) bytes_[i / 8] |= mask; else bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
  }

  // Appends the low `width` bits of `value`, most significant first.
  void append(std::uint64_t value, std::size_t width) {
    if (width > 64) throw UsageError("BitString::append: width > 64");
    if (width < 64 && (value >> width) != 0) throw UsageError("BitString::append: value wider than field");
    const std::size_t start = width_;
    width_ += width;
    bytes_.resize((width_ + 7) / 8, 0);
    if (start % 8 == 0 && width % 8 == 0) {
      for (std::size_t k = 0; k < width / 8; ++k)
        bytes_[start / 8 + k] = static_cast<std::uint8_t>(value >> (width - 8 * (k + 1)));
      return;
    }
    for (std::size_t k = 0; k < width; ++k) set_bit(start + k, (value >> (width - 1 - k)) & 1u);
  }

  // Reads `width` bits starting at `pos` as an unsigned integer.
  std::uint64_t read(std::size_t pos, std::size_t width) const {
    if (width > 64 || pos + width > width_) throw UsageError("BitString::read out of range");
    std::uint64_t v = 0;
    if (pos % 8 == 0 && width % 8 == 0) {
      for (std::size_t k = 0; k < width / 8; ++k) v = (v << 8) | bytes_[pos / 8 + k];
      return v;
    }
    for (std::size_t k = 0; k < width; ++k) v = (v << 1) | static_cast<std::uint64_t>(bit(pos + k));
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(width_);
    for (std::size_t i = 0; i < width_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
  }

  // Hex of the sequence read as a big-endian number, ceil(width/4) digits.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t ndig = (width_ + 3) / 4;
    const std::size_t pad = 4 * ndig - width_;
    std::string s;
    s.reserve(ndig);
    for (std::size_t d = 0; d < ndig; ++d) {
      unsigned v = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t logical = 4 * d + k;
        v <<= 1;
        if (logical >= pad) v |= bit(logical - pad) ? 1u : 0u;
      }
      s.push_back(digits[v]);
    }
    return s;
  }

  static BitString from_string(std::string_view bits) {
    BitString b(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw DecodeError("bit string: invalid character");
      b.set_bit(i, bits[i] == '1');
    }
    return b;
  }

  // Parses hex into exactly `width` bits; shorter input is left padded with
  // zeros, bits beyond `width` must be zero.
  static BitString from_hex(std::string_view hex, std::size_t width) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw DecodeError("hex: empty input");
    std::vector<bool> raw;
    raw.reserve(hex.size() * 4);
    for (char c : hex) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw DecodeError(std::string("hex: invalid character '") + c + "'");
      for (int k = 3; k >= 0; --k) raw.push_back((v >> k) & 1);
    }
    BitString b(width);
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i) {
      // align right: raw[n-1] is the last bit of b
      if (n - i > width) {
        if (raw[i]) throw DecodeError("hex: value does not fit the element width");
        continue;
      }
      b.set_bit(width - (n - i), raw[i]);
    }
    return b;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace hslab
