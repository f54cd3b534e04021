// Copyright 2026 The qretro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qretro {

/// Fixed-width bit string. Text form is big-endian: the leftmost character is
/// the most significant bit, so "01" has value 1 and bit(0) == 0.
class BitString {
 public:
  static constexpr unsigned kMaxWidth = 63;

  BitString() = default;
  BitString(std::uint64_t value, unsigned width);

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument.
  static BitString parse(std::string_view text);

  std::uint64_t value() const { return value_; }
  unsigned width() const { return width_; }

  /// Bit at position `i` counted from the left (0 = most significant).
  bool bit(unsigned i) const;

  std::string str() const;

  /// Concatenation, `*this` on the left.
  BitString concat(const BitString& right) const;

  BitString operator^(const BitString& other) const;
  BitString operator~() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  unsigned width_ = 1;
};

/// Parity of the GF(2) dot product of two raw bit patterns.
inline bool gf2_dot(std::uint64_t a, std::uint64_t b) {
  return __builtin_parityll(a & b) != 0;
}

inline std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

}  // namespace qretro
