#pragma once

#include <gmpxx.h>

#include <string>

namespace pcnfee {

/// Exact rational used for every betweenness share and reward value.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Number of distinct minimum-cost paths. Arithmetic on it goes through
/// checked_add / checked_mul, which throw std::overflow_error instead of
/// wrapping.
__extension__ typedef unsigned __int128 PathCount;

PathCount checked_add(PathCount a, PathCount b);
PathCount checked_mul(PathCount a, PathCount b);

BigInt to_bigint(PathCount value);
std::string to_string(PathCount value);

/// "num/den" in lowest terms; integers print without the denominator.
std::string to_string(const Rational& value);
Rational rational_from_string(const std::string& text);

inline Rational make_rational(PathCount num, PathCount den) {
  Rational q(to_bigint(num), to_bigint(den));
  q.canonicalize();
  return q;
}

}  // namespace pcnfee
