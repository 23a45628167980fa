#include "pcnfee/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pcnfee {

PathCount checked_add(PathCount a, PathCount b) {
  PathCount out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("path count overflow in addition");
  }
  return out;
}

PathCount checked_mul(PathCount a, PathCount b) {
  PathCount out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("path count overflow in multiplication");
  }
  return out;
}

BigInt to_bigint(PathCount value) {
  const auto hi = static_cast<unsigned long>(value >> 64);
  const auto lo = static_cast<unsigned long>(value & std::numeric_limits<std::uint64_t>::max());
  BigInt out(hi);
  out <<= 64;
  out += BigInt(lo);
  return out;
}

std::string to_string(PathCount value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational rational_from_string(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: " + text);
  }
  q.canonicalize();
  return q;
}

}  // namespace pcnfee
