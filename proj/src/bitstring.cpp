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

#include "qretro/bitstring.hpp"

#include <stdexcept>

namespace qretro {

BitString::BitString(std::uint64_t value, unsigned width) : value_(value), width_(width) {
  if (width == 0 || width > kMaxWidth) {
    throw std::invalid_argument("bit string width must be in [1, 63], got " +
                                std::to_string(width));
  }
  if (value > low_mask(width)) {
    throw std::invalid_argument("bit string value " + std::to_string(value) +
                                " does not fit in " + std::to_string(width) + " bits");
  }
}

BitString BitString::parse(std::string_view text) {
  if (text.empty() || text.size() > kMaxWidth) {
    throw std::invalid_argument("bit string must have 1..63 characters: '" +
                                std::string(text) + "'");
  }
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string contains a character other than 0/1: '" +
                                  std::string(text) + "'");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BitString(v, static_cast<unsigned>(text.size()));
}

bool BitString::bit(unsigned i) const {
  if (i >= width_) throw std::out_of_range("bit index out of range");
  return ((value_ >> (width_ - 1 - i)) & 1U) != 0;
}

std::string BitString::str() const {
  std::string s(width_, '0');
  for (unsigned i = 0; i < width_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

BitString BitString::concat(const BitString& right) const {
  return BitString((value_ << right.width_) | right.value_, width_ + right.width_);
}

BitString BitString::operator^(const BitString& other) const {
  if (other.width_ != width_) throw std::invalid_argument("xor of bit strings with different widths");
  return BitString(value_ ^ other.value_, width_);
}

BitString BitString::operator~() const { return BitString(~value_ & low_mask(width_), width_); }

}  // namespace qretro
