#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rset/gf2.hpp"

namespace rset {

// k-wise independent family over GF(2^b): h(x) = a_0 + a_1 x + ... + a_{k-1}
// x^{k-1}, with the bucket of x being the low bucket_bits bits of h(x).
// A point is "selected" when its bucket is 0, which happens with probability
// exactly 1/f for f = 2^bucket_bits under a uniform seed.
struct FamilyParams {
  int k = 2;
  FieldSpec field;
  int bucket_bits = 1;   // b_out; f = 2^b_out buckets
  int domain_size = 2;   // palette size N, must satisfy N <= 2^b

  static FamilyParams make(int k, FieldSpec field, int bucket_bits,
                           int domain_size);

  int seed_bits() const { return k * field.b; }  // r
  uint64_t buckets() const { return uint64_t{1} << bucket_bits; }
};

// Seed = the k coefficients, committed prefix-first. Bit i of the seed is bit
// (b-1 - i%b) of coefficient a_{i/b}: a_0 occupies the most significant
// positions and is fixed first. Uncommitted bits are stored as zero.
struct Seed {
  std::vector<uint32_t> coefficients;
  int fixed_prefix_bits = 0;

  static Seed empty(const FamilyParams& p);
  // Fully fixed seed from explicit coefficients.
  static Seed of(const FamilyParams& p, std::vector<uint32_t> coeffs);
  // Fully fixed seed from the canonical r-bit integer (bit r-1 = seed bit 0).
  static Seed from_bits(const FamilyParams& p, uint64_t bits);

  bool fully_fixed(const FamilyParams& p) const {
    return fixed_prefix_bits == p.seed_bits();
  }
  // Extends the committed prefix by `width` bits taken from `value`
  // (most significant of the width first).
  Seed extended(const FamilyParams& p, uint64_t value, int width) const;

  // Lowercase hex, ceil(k*b/4) digits, a_0 first.
  std::string hex(const FamilyParams& p) const;
  static Seed from_hex(const FamilyParams& p, const std::string& hex);
};

// Bucket of domain point x under a fully fixed seed.
uint32_t evaluate(const FamilyParams& params, const Seed& seed, uint32_t x);

// Exact joint law of bucket tuples at the given distinct domain points under
// a uniform seed, by full 2^(k*b) enumeration. counts is indexed by
// sum_i bucket_i * f^i in point order.
struct JointDistribution {
  int num_points = 0;
  uint64_t buckets = 1;
  std::vector<uint64_t> counts;
  uint64_t total_seeds = 1;

  bool is_uniform() const;
};

JointDistribution joint_distribution(const FamilyParams& params,
                                     const std::vector<uint32_t>& points);

}  // namespace rset
