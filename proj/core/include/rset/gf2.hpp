#pragma once

#include <cstdint>
#include <vector>

namespace rset {

// Binary field GF(2^b) given by an irreducible modulus polynomial of degree b
// (bit pattern includes the x^b term). Addition is XOR.
struct FieldSpec {
  int b = 1;
  uint64_t modulus = 0x3;

  // Uses the built-in modulus table. Fails loudly for b outside [1, 32].
  static FieldSpec standard(int b);
  // Custom modulus; irreducibility is verified by exhaustive factor check.
  static FieldSpec with_modulus(int b, uint64_t modulus);

  uint64_t order() const { return uint64_t{1} << b; }
};

// Carry-less product of a and b reduced by spec.modulus.
uint32_t field_mul(const FieldSpec& spec, uint32_t a, uint32_t b);
inline uint32_t field_add(uint32_t a, uint32_t b) { return a ^ b; }
uint32_t field_pow(const FieldSpec& spec, uint32_t a, uint64_t e);

bool is_irreducible(int b, uint64_t modulus);

// Dense multiplication table, built on demand for small b (hot loops).
class MulTable {
 public:
  explicit MulTable(const FieldSpec& spec);
  uint32_t mul(uint32_t a, uint32_t b) const {
    return table_.empty() ? fallback(a, b) : table_[(a << shift_) | b];
  }
  bool dense() const { return !table_.empty(); }

 private:
  uint32_t fallback(uint32_t a, uint32_t b) const;
  FieldSpec spec_;
  int shift_ = 0;
  std::vector<uint32_t> table_;
};

}  // namespace rset
