#include "rset/int128.hpp"

#include <algorithm>

namespace rset {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

void Dyadic::normalize() {
  if (num == 0) {
    log2_den = 0;
    return;
  }
  while (log2_den > 0 && (num & 1) == 0) {
    num >>= 1;
    --log2_den;
  }
}

double Dyadic::to_double() const {
  double x = static_cast<double>(num);
  for (unsigned i = 0; i < log2_den; ++i) x /= 2.0;
  return x;
}

std::string Dyadic::str() const {
  Dyadic r = *this;
  r.normalize();
  if (r.log2_den == 0) return to_string(r.num);
  if (r.log2_den < 127) {
    return to_string(r.num) + "/" + to_string(u128{1} << r.log2_den);
  }
  return to_string(r.num) + "/2^" + std::to_string(r.log2_den);
}

bool Dyadic::operator==(const Dyadic& o) const {
  Dyadic a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.num == b.num && a.log2_den == b.log2_den;
}

bool Dyadic::operator<(const Dyadic& o) const {
  // Compare num_a / 2^da < num_b / 2^db by shifting to the common denominator.
  unsigned d = std::max(log2_den, o.log2_den);
  u128 a = num << (d - log2_den);
  u128 b = o.num << (d - o.log2_den);
  return a < b;
}

bool Dyadic::operator<=(const Dyadic& o) const { return *this < o || *this == o; }

Dyadic make_dyadic(u128 num, unsigned log2_den) {
  Dyadic d{num, log2_den};
  d.normalize();
  return d;
}

Dyadic dyadic_add(Dyadic a, Dyadic b) {
  unsigned d = std::max(a.log2_den, b.log2_den);
  Dyadic r{(a.num << (d - a.log2_den)) + (b.num << (d - b.log2_den)), d};
  r.normalize();
  return r;
}

}  // namespace rset
