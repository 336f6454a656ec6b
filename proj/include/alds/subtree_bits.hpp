// Fixed-size bitset over the 2^d subtrees at the jump depth.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alds {

class SubtreeBits {
 public:
  SubtreeBits() = default;
  explicit SubtreeBits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static SubtreeBits for_depth(int depth) { return SubtreeBits(std::size_t{1} << depth); }

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1u) != 0; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void set_range(std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) set(i);
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const { return count() != 0; }

  /// Hex encoding: character i holds bits 4i..4i+3, bit 4i in the low bit of
  /// the nibble ("little-endian nibble order"). Sizes below 4 pad with zeros.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out((size_ + 3) / 4, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (test(i)) {
        const auto nib = static_cast<unsigned>(out[i / 4] >= 'a' ? out[i / 4] - 'a' + 10
                                                                 : out[i / 4] - '0');
        out[i / 4] = kDigits[nib | (1u << (i % 4))];
      }
    return out;
  }

  static SubtreeBits from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() != (size + 3) / 4)
      throw std::invalid_argument("bitset hex length " + std::to_string(hex.size()) +
                                  " does not match " + std::to_string(size) + " bits");
    SubtreeBits b(size);
    for (std::size_t c = 0; c < hex.size(); ++c) {
      const char ch = hex[c];
      unsigned nib = 0;
      if (ch >= '0' && ch <= '9') nib = static_cast<unsigned>(ch - '0');
      else if (ch >= 'a' && ch <= 'f') nib = static_cast<unsigned>(ch - 'a' + 10);
      else if (ch >= 'A' && ch <= 'F') nib = static_cast<unsigned>(ch - 'A' + 10);
      else throw std::invalid_argument(std::string("bad hex digit '") + ch + "'");
      for (unsigned j = 0; j < 4; ++j) {
        if (((nib >> j) & 1u) == 0) continue;
        const std::size_t i = 4 * c + j;
        if (i >= size) throw std::invalid_argument("bitset hex sets a padding bit");
        b.set(i);
      }
    }
    return b;
  }

  bool operator==(const SubtreeBits&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace alds
