#pragma once

#include <cstdint>
#include <string>

namespace rset {

// Exact potential sums can exceed 64 bits (psi values scaled by 2^r), so all
// conditional-expectation accounting runs on 128-bit integers.
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
std::string to_string(i128 v);

// A nonnegative rational with a power-of-two denominator: num / 2^log2_den.
// Every exact expectation in this library is dyadic because bucket counts are
// powers of two, so this is all the rational arithmetic we need.
struct Dyadic {
  u128 num = 0;
  unsigned log2_den = 0;

  // Strips common factors of two.
  void normalize();

  double to_double() const;
  // Lowest-terms "p/q" (or "p" when integral) with decimal p and q.
  std::string str() const;

  bool operator==(const Dyadic& o) const;
  bool operator<(const Dyadic& o) const;
  bool operator<=(const Dyadic& o) const;
};

Dyadic make_dyadic(u128 num, unsigned log2_den);
Dyadic dyadic_add(Dyadic a, Dyadic b);

}  // namespace rset
