#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sophdepth {

/// Finite binary string. Stored as a sequence of '0'/'1' characters so that
/// printing, hashing and concatenation stay trivial.
///
/// Ordering is length-lexicographic: ε < 0 < 1 < 00 < 01 < 10 < 11 < 000 ...
class BitString {
 public:
  BitString() = default;

  /// Throws std::invalid_argument on any character other than '0'/'1'.
  static BitString parse(std::string_view text) {
    for (char ch : text) {
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument("invalid bit string: '" + std::string(text) + "'");
      }
    }
    BitString out;
    out.bits_.assign(text);
    return out;
  }

  /// Parse, treating "-" as the empty string (used by the text formats).
  static BitString parse_field(std::string_view text) {
    if (text == "-") return {};
    return parse(text);
  }

  /// `width` low bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width) {
    BitString out;
    out.bits_.resize(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
      if ((value >> (width - 1 - i)) & 1U) out.bits_[i] = '1';
    }
    return out;
  }

  /// Standard binary numeral; bin(0) = "0".
  static BitString binary(std::uint64_t value) {
    if (value == 0) return parse("0");
    std::size_t width = 0;
    for (std::uint64_t v = value; v != 0; v >>= 1) ++width;
    return from_uint(value, width);
  }

  static BitString zeros(std::size_t n) {
    BitString out;
    out.bits_.assign(n, '0');
    return out;
  }

  /// The `index`-th string (0-based) in length-lexicographic order.
  static BitString nth(std::uint64_t index) {
    std::size_t len = 0;
    while (index + 1 >= (std::uint64_t{2} << len)) ++len;
    return from_uint(index + 1 - (std::uint64_t{1} << len), len);
  }

  /// Inverse of nth(). Only meaningful for strings shorter than 64 bits.
  [[nodiscard]] std::uint64_t rank() const {
    return (std::uint64_t{1} << size()) - 1 + to_uint();
  }

  [[nodiscard]] std::uint64_t to_uint() const {
    std::uint64_t v = 0;
    for (char ch : bits_) v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    return v;
  }

  [[nodiscard]] std::size_t size() const { return bits_.size(); }
  [[nodiscard]] bool empty() const { return bits_.empty(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }

  [[nodiscard]] BitString substr(std::size_t pos, std::size_t len = std::string::npos) const {
    BitString out;
    out.bits_ = bits_.substr(pos, len);
    return out;
  }

  [[nodiscard]] bool starts_with(const BitString& prefix) const {
    return bits_.size() >= prefix.bits_.size() &&
           bits_.compare(0, prefix.bits_.size(), prefix.bits_) == 0;
  }

  /// The string with trailing zeros removed.
  [[nodiscard]] BitString strip_trailing_zeros() const {
    BitString out = *this;
    while (!out.bits_.empty() && out.bits_.back() == '0') out.bits_.pop_back();
    return out;
  }

  [[nodiscard]] const std::string& str() const { return bits_; }

  /// "-" for the empty string, the bits otherwise.
  [[nodiscard]] std::string field() const { return bits_.empty() ? std::string("-") : bits_; }

  friend BitString operator+(BitString lhs, const BitString& rhs) {
    lhs.append(rhs);
    return lhs;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    const int cmp = a.bits_.compare(b.bits_);
    if (cmp < 0) return std::strong_ordering::less;
    if (cmp > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BitString& b) {
    return os << (b.empty() ? std::string("ε") : b.bits_);
  }

 private:
  std::string bits_;
};

inline BitString operator""_bits(const char* text, std::size_t len) {
  return BitString::parse(std::string_view(text, len));
}

/// Number of digits of the binary numeral of `value` (|bin(0)| = 1).
inline std::size_t binary_length(std::uint64_t value) {
  std::size_t n = 1;
  while (value >>= 1) ++n;
  return n;
}

/// ⌈log2 value⌉, with ceil_log2(0) = ceil_log2(1) = 0.
inline std::size_t ceil_log2(std::uint64_t value) {
  std::size_t n = 0;
  while ((std::uint64_t{1} << n) < value) ++n;
  return n;
}

/// Calls `fn` on every bit string of length exactly `len`, in lexicographic order.
template <class Fn>
void for_each_of_length(std::size_t len, Fn&& fn) {
  const std::uint64_t count = std::uint64_t{1} << len;
  for (std::uint64_t v = 0; v < count; ++v) fn(BitString::from_uint(v, len));
}

/// Calls `fn` on every bit string of length ≤ `max_len`, in length-lex order.
template <class Fn>
void for_each_up_to(std::size_t max_len, Fn&& fn) {
  for (std::size_t len = 0; len <= max_len; ++len) for_each_of_length(len, fn);
}

}  // namespace sophdepth

template <>
struct std::hash<sophdepth::BitString> {
  std::size_t operator()(const sophdepth::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str()) ^ b.size();
  }
};
