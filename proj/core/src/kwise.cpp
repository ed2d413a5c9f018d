#include "rset/kwise.hpp"

#include <algorithm>
#include <bit>

#include "rset/errors.hpp"

namespace rset {

FamilyParams FamilyParams::make(int k, FieldSpec field, int bucket_bits,
                                int domain_size) {
  if (k < 1) throw InvalidInput("FamilyParams: k must be >= 1");
  if (bucket_bits < 0 || bucket_bits > field.b)
    throw InvalidInput("FamilyParams: bucket_bits must be in [0, b]");
  if (domain_size < 1) throw InvalidInput("FamilyParams: empty domain");
  if (field.b < 64 && (uint64_t{1} << field.b) < static_cast<uint64_t>(domain_size))
    throw DomainTooSmall("FamilyParams: 2^b < domain_size");
  if (static_cast<long long>(k) * field.b > 65536)
    throw InvalidInput("FamilyParams: unreasonable seed length");
  return FamilyParams{k, field, bucket_bits, domain_size};
}

Seed Seed::empty(const FamilyParams& p) {
  Seed s;
  s.coefficients.assign(p.k, 0);
  s.fixed_prefix_bits = 0;
  return s;
}

Seed Seed::of(const FamilyParams& p, std::vector<uint32_t> coeffs) {
  if (static_cast<int>(coeffs.size()) != p.k)
    throw InvalidInput("Seed: expected k coefficients");
  for (uint32_t c : coeffs)
    if (p.field.b < 32 && c >= (uint32_t{1} << p.field.b))
      throw InvalidInput("Seed: coefficient outside field");
  Seed s;
  s.coefficients = std::move(coeffs);
  s.fixed_prefix_bits = p.seed_bits();
  return s;
}

Seed Seed::from_bits(const FamilyParams& p, uint64_t bits) {
  const int r = p.seed_bits();
  if (r > 62) throw InvalidInput("Seed::from_bits: seed longer than 62 bits");
  Seed s = Seed::empty(p);
  for (int i = 0; i < r; ++i) {
    uint64_t bit = (bits >> (r - 1 - i)) & 1;
    if (bit) s.coefficients[i / p.field.b] |= uint32_t{1} << (p.field.b - 1 - i % p.field.b);
  }
  s.fixed_prefix_bits = r;
  return s;
}

Seed Seed::extended(const FamilyParams& p, uint64_t value, int width) const {
  if (width < 0 || fixed_prefix_bits + width > p.seed_bits())
    throw InvalidInput("Seed: prefix extension exceeds seed length");
  if (width < 64 && value >= (uint64_t{1} << width))
    throw InvalidInput("Seed: candidate value wider than chunk");
  Seed s = *this;
  const int b = p.field.b;
  for (int i = 0; i < width; ++i) {
    int pos = fixed_prefix_bits + i;
    if ((value >> (width - 1 - i)) & 1)
      s.coefficients[pos / b] |= uint32_t{1} << (b - 1 - pos % b);
  }
  s.fixed_prefix_bits += width;
  return s;
}

std::string Seed::hex(const FamilyParams& p) const {
  const int r = p.seed_bits();
  const int digits = (r + 3) / 4;
  std::vector<int> nib(digits, 0);
  const int b = p.field.b;
  for (int i = 0; i < r; ++i) {
    int bit = (coefficients[i / b] >> (b - 1 - i % b)) & 1;
    // seed bit 0 is the most significant bit of the first nibble
    if (bit) nib[i / 4] |= 1 << (3 - i % 4);
  }
  std::string out(digits, '0');
  for (int d = 0; d < digits; ++d) out[d] = "0123456789abcdef"[nib[d]];
  return out;
}

Seed Seed::from_hex(const FamilyParams& p, const std::string& hex) {
  const int r = p.seed_bits();
  const int digits = (r + 3) / 4;
  if (static_cast<int>(hex.size()) != digits)
    throw ParseError("seed hex: expected " + std::to_string(digits) + " digits");
  Seed s = Seed::empty(p);
  const int b = p.field.b;
  for (int i = 0; i < digits * 4; ++i) {
    char c = hex[i / 4];
    int nib;
    if (c >= '0' && c <= '9')
      nib = c - '0';
    else if (c >= 'a' && c <= 'f')
      nib = c - 'a' + 10;
    else
      throw ParseError("seed hex: invalid digit");
    int bit = (nib >> (3 - i % 4)) & 1;
    if (bit) {
      if (i >= r) throw ParseError("seed hex: nonzero padding bits");
      s.coefficients[i / b] |= uint32_t{1} << (b - 1 - i % b);
    }
  }
  s.fixed_prefix_bits = r;
  return s;
}

uint32_t evaluate(const FamilyParams& params, const Seed& seed, uint32_t x) {
  if (!seed.fully_fixed(params))
    throw SeedNotCommitted("evaluate: seed has uncommitted bits");
  if (x >= static_cast<uint32_t>(params.domain_size))
    throw InvalidInput("evaluate: point outside domain");
  // Horner: a_0 + x(a_1 + x(a_2 + ...)).
  uint32_t acc = seed.coefficients[params.k - 1];
  for (int i = params.k - 2; i >= 0; --i)
    acc = field_add(field_mul(params.field, acc, x), seed.coefficients[i]);
  uint32_t mask = params.bucket_bits >= 32
                      ? ~uint32_t{0}
                      : (uint32_t{1} << params.bucket_bits) - 1;
  return acc & mask;
}

bool JointDistribution::is_uniform() const {
  if (counts.empty()) return true;
  uint64_t expected = total_seeds / counts.size();
  if (expected * counts.size() != total_seeds) return false;
  return std::all_of(counts.begin(), counts.end(),
                     [&](uint64_t c) { return c == expected; });
}

JointDistribution joint_distribution(const FamilyParams& params,
                                     const std::vector<uint32_t>& points) {
  if (static_cast<int>(points.size()) > params.k)
    throw TooManyPoints("joint_distribution: more points than independence degree");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= static_cast<uint32_t>(params.domain_size))
      throw InvalidInput("joint_distribution: point outside domain");
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw InvalidInput("joint_distribution: points must be distinct");
  }
  const int r = params.seed_bits();
  if (r > 26)
    throw EnumerationBudgetExceeded(
        "joint_distribution: 2^" + std::to_string(r) + " seeds exceed budget");
  JointDistribution out;
  out.num_points = static_cast<int>(points.size());
  out.buckets = params.buckets();
  out.total_seeds = uint64_t{1} << r;
  size_t cells = 1;
  for (int i = 0; i < out.num_points; ++i) cells *= out.buckets;
  out.counts.assign(cells, 0);
  if (points.empty()) {
    out.counts[0] = out.total_seeds;
    return out;
  }
  for (uint64_t bits = 0; bits < out.total_seeds; ++bits) {
    Seed s = Seed::from_bits(params, bits);
    size_t idx = 0, stride = 1;
    for (uint32_t p : points) {
      idx += stride * evaluate(params, s, p);
      stride *= out.buckets;
    }
    ++out.counts[idx];
  }
  return out;
}

}  // namespace rset
