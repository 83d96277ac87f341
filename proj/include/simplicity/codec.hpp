#pragma once

// Maximally compact positional code for ranked lists.
//
// Code words are enumerated in canonical order: "", "0", "1", "00", "01",
// "10", "11", "000", ... Rank r receives the word of length floor(log2(r+1))
// whose binary value is r + 1 - 2^len. The code is not prefix-free, so a
// word's length is its full cost: no delimiter is ever charged.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace simplicity::codec {

// 0-based position in a ranked list; rank 0 is the most salient item.
using Rank = std::uint64_t;

struct CodeWord {
  std::vector<bool> bits;

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }

  friend bool operator==(const CodeWord&, const CodeWord&) = default;
};

inline constexpr Rank kMaxRank = std::numeric_limits<Rank>::max() - 1;

inline unsigned code_level(Rank r) {
  if (r > kMaxRank) throw std::out_of_range("rank too large for the positional code");
  return static_cast<unsigned>(std::bit_width(r + 1)) - 1;
}

inline CodeWord encode_rank(Rank r) {
  const unsigned len = code_level(r);
  const Rank value = r + 1 - (Rank{1} << len);
  CodeWord w;
  w.bits.resize(len);
  for (unsigned i = 0; i < len; ++i) w.bits[len - 1 - i] = ((value >> i) & 1U) != 0;
  return w;
}

inline Rank decode(const CodeWord& w) {
  if (w.size() >= 64) throw std::out_of_range("code word too long to decode into a 64-bit rank");
  Rank value = 0;
  for (bool b : w.bits) value = (value << 1) | (b ? 1U : 0U);
  return (Rank{1} << w.size()) - 1 + value;
}

inline ComplexityBits code_length(Rank r) { return static_cast<ComplexityBits>(code_level(r)); }

inline std::string to_string(const CodeWord& w) {
  std::string s;
  s.reserve(w.size());
  for (bool b : w.bits) s.push_back(b ? '1' : '0');
  return s;
}

inline CodeWord parse_code_word(std::string_view text) {
  CodeWord w;
  w.bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw ParseError("code word position " + std::to_string(i), "expected '0' or '1'");
    w.bits.push_back(text[i] == '1');
  }
  return w;
}

} // namespace simplicity::codec
