#include "rset/gf2.hpp"

#include <bit>
#include <string>

#include "rset/errors.hpp"

namespace rset {

namespace {

// Smallest irreducible polynomial of each degree 1..32.
constexpr uint64_t kModuli[33] = {
    0,
    0x3ull,         // b=1
    0x7ull,         // b=2
    0xbull,         // b=3
    0x13ull,        // b=4
    0x25ull,        // b=5
    0x43ull,        // b=6
    0x83ull,        // b=7
    0x11bull,       // b=8
    0x203ull,       // b=9
    0x409ull,       // b=10
    0x805ull,       // b=11
    0x1009ull,      // b=12
    0x201bull,      // b=13
    0x4021ull,      // b=14
    0x8003ull,      // b=15
    0x1002bull,     // b=16
    0x20009ull,     // b=17
    0x40009ull,     // b=18
    0x80027ull,     // b=19
    0x100009ull,    // b=20
    0x200005ull,    // b=21
    0x400003ull,    // b=22
    0x800021ull,    // b=23
    0x100001bull,   // b=24
    0x2000009ull,   // b=25
    0x400001bull,   // b=26
    0x8000027ull,   // b=27
    0x10000003ull,  // b=28
    0x20000005ull,  // b=29
    0x40000003ull,  // b=30
    0x80000009ull,  // b=31
    0x10000008dull  // b=32
};

uint64_t poly_rem(uint64_t p, uint64_t q) {
  int dq = std::bit_width(q) - 1;
  while (p != 0 && std::bit_width(p) - 1 >= dq)
    p ^= q << (std::bit_width(p) - 1 - dq);
  return p;
}

}  // namespace

bool is_irreducible(int b, uint64_t modulus) {
  if (b < 1 || b > 32) return false;
  if (std::bit_width(modulus) - 1 != b) return false;
  // Trial division by every polynomial of degree 1..b/2.
  for (int d = 1; d <= b / 2; ++d)
    for (uint64_t q = uint64_t{1} << d; q < (uint64_t{2} << d); ++q)
      if (poly_rem(modulus, q) == 0) return false;
  return true;
}

FieldSpec FieldSpec::standard(int b) {
  if (b < 1 || b > 32)
    throw InvalidInput("FieldSpec: unsupported width b=" + std::to_string(b) +
                       " (supported: 1..32)");
  return FieldSpec{b, kModuli[b]};
}

FieldSpec FieldSpec::with_modulus(int b, uint64_t modulus) {
  if (!is_irreducible(b, modulus))
    throw InvalidInput("FieldSpec: modulus is not an irreducible polynomial of degree " +
                       std::to_string(b));
  return FieldSpec{b, modulus};
}

uint32_t field_mul(const FieldSpec& spec, uint32_t a, uint32_t b) {
  // Carry-less multiply into 64 bits, then reduce.
  uint64_t acc = 0;
  uint64_t aa = a;
  uint32_t bb = b;
  while (bb != 0) {
    if (bb & 1) acc ^= aa;
    aa <<= 1;
    bb >>= 1;
  }
  return static_cast<uint32_t>(poly_rem(acc, spec.modulus));
}

uint32_t field_pow(const FieldSpec& spec, uint32_t a, uint64_t e) {
  uint32_t r = 1;
  while (e != 0) {
    if (e & 1) r = field_mul(spec, r, a);
    a = field_mul(spec, a, a);
    e >>= 1;
  }
  return r;
}

MulTable::MulTable(const FieldSpec& spec) : spec_(spec) {
  if (spec.b <= 12) {
    shift_ = spec.b;
    size_t n = size_t{1} << spec.b;
    table_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        table_[(a << shift_) | b] =
            field_mul(spec_, static_cast<uint32_t>(a), static_cast<uint32_t>(b));
  }
}

uint32_t MulTable::fallback(uint32_t a, uint32_t b) const {
  return field_mul(spec_, a, b);
}

}  // namespace rset
