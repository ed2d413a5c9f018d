#include "rset/oracle.hpp"

#include <string>
#include <vector>

#include "rset/errors.hpp"

namespace rset {

namespace {

// h(p) = XOR_i a_i * p^i with precomputed point powers; a different
// evaluation route than the engine's Horner scheme.
struct PowerEval {
  PowerEval(const FamilyParams& f) : mul(f.field), k(f.k) {
    powers.resize(f.domain_size);
    for (int p = 0; p < f.domain_size; ++p) {
      powers[p].resize(k);
      for (int i = 0; i < k; ++i)
        powers[p][i] = field_pow(f.field, static_cast<uint32_t>(p),
                                 static_cast<uint64_t>(i));
    }
  }
  uint32_t eval(const std::vector<uint32_t>& coeffs, uint32_t p) const {
    uint32_t acc = 0;
    for (int i = 0; i < k; ++i) acc ^= mul.mul(coeffs[i], powers[p][i]);
    return acc;
  }
  MulTable mul;
  int k;
  std::vector<std::vector<uint32_t>> powers;
};

}  // namespace

Dyadic enumerate_expectation(const Graph& g, const Coloring& col,
                             const SamplerParams& params, Statistic stat) {
  if (!validate_coloring(g, col))
    throw NotProper("enumerate_expectation: coloring is not proper");
  if (col.palette_size > params.family.domain_size)
    throw DomainTooSmall("enumerate_expectation: palette exceeds hash domain");
  const int r = params.seed_bits();
  if (r > params.budget_log2 || r > 62)
    throw EnumerationBudgetExceeded("enumerate_expectation: 2^" +
                                    std::to_string(r) + " seeds exceed budget");
  PowerEval pe(params.family);
  const uint32_t bucket_mask =
      params.family.bucket_bits >= 32
          ? ~uint32_t{0}
          : (uint32_t{1} << params.family.bucket_bits) - 1;
  const uint64_t seeds = uint64_t{1} << r;
  std::vector<uint32_t> coeffs(params.family.k);
  std::vector<char> sel(col.palette_size);
  u128 total = 0;
  for (uint64_t bits = 0; bits < seeds; ++bits) {
    Seed s = Seed::from_bits(params.family, bits);
    for (int c = 0; c < col.palette_size; ++c)
      sel[c] =
          (pe.eval(s.coefficients, static_cast<uint32_t>(c)) & bucket_mask) == 0;
    u128 value = 0;
    if (stat == Statistic::SampledEdges || stat == Statistic::Psi) {
      uint64_t ea = 0;
      for (auto [u, v] : g.edges())
        if (sel[col.color[u]] && sel[col.color[v]]) ++ea;
      value += ea;
    }
    if (stat != Statistic::SampledEdges) {
      uint64_t bad = 0, uncov = 0;
      for (int u = 0; u < g.vertex_count(); ++u) {
        if (static_cast<uint64_t>(g.degree(u)) < params.degree_threshold)
          continue;
        bool any = false;
        for (int w : g.neighbors(u))
          if (sel[col.color[w]]) {
            any = true;
            break;
          }
        if (!any) {
          ++uncov;
          if (!sel[col.color[u]]) ++bad;
        }
      }
      if (stat == Statistic::BadCount) value = bad;
      if (stat == Statistic::UncoveredCount) value = uncov;
      if (stat == Statistic::Psi) value += params.weight * bad;
    }
    total += value;
  }
  return make_dyadic(total, r);
}

bool verify_monotone_trace(const FixTrace& trace) {
  if (trace.r < 0) throw InvalidTrace("negative seed length");
  int expect_lo = 0;
  for (size_t i = 0; i < trace.chunks.size(); ++i) {
    const ChunkDecision& c = trace.chunks[i];
    if (c.index != static_cast<int>(i)) throw InvalidTrace("chunk index gap");
    if (c.bit_lo != expect_lo || c.bit_hi <= c.bit_lo || c.bit_hi > trace.r)
      throw InvalidTrace("chunk bit range does not partition the seed");
    int width = c.bit_hi - c.bit_lo;
    if (c.sums.size() != (uint64_t{1} << width))
      throw InvalidTrace("candidate count does not match chunk width");
    if (c.chosen >= c.sums.size()) throw InvalidTrace("chosen candidate out of range");
    expect_lo = c.bit_hi;
  }
  if (!trace.chunks.empty() && expect_lo != trace.r)
    throw InvalidTrace("chunks do not cover the seed");

  u128 parent_sum = trace.root_sum;
  int parent_bits = 0;
  for (const ChunkDecision& c : trace.chunks) {
    uint64_t argmin = 0;
    for (uint64_t cand = 1; cand < c.sums.size(); ++cand)
      if (c.sums[cand] < c.sums[argmin]) argmin = cand;
    if (c.chosen != argmin) return false;
    // E[psi | prefix up to here] <= E[psi | parent prefix]:
    // sums have denominators 2^(r - bit_hi) and 2^(r - parent_bits).
    int shift = c.bit_hi - parent_bits;
    if ((c.sums[c.chosen] << shift) > parent_sum) return false;
    parent_sum = c.sums[c.chosen];
    parent_bits = c.bit_hi;
  }
  return true;
}

bool verify_martingale(const FixTrace& trace) {
  u128 parent = trace.root_sum;
  for (const ChunkDecision& c : trace.chunks) {
    u128 sum = 0;
    for (u128 s : c.sums) sum += s;
    if (sum != parent) return false;
    parent = c.sums[c.chosen];
  }
  return true;
}

// level may exceed params.k; that asks for a stronger independence than the
// family provides and is how fault-injection tests drive this to false.
bool verify_kwise(const FamilyParams& params, int level) {
  if (level < 0) level = params.k;
  const int r = params.seed_bits();
  if (r > 26)
    throw EnumerationBudgetExceeded("verify_kwise: 2^" + std::to_string(r) +
                                    " seeds exceed budget");
  const int n_points = params.domain_size;
  const uint64_t f = params.buckets();
  const uint32_t bucket_mask =
      params.bucket_bits >= 32 ? ~uint32_t{0}
                               : (uint32_t{1} << params.bucket_bits) - 1;

  // All subsets of sizes 1..level, flattened, each with its own histogram.
  struct Combo {
    std::vector<int> pts;
    size_t hist_offset;
    size_t cells;
  };
  std::vector<Combo> combos;
  size_t hist_total = 0;
  for (int s = 1; s <= level && s <= n_points; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      size_t cells = 1;
      for (int i = 0; i < s; ++i) cells *= f;
      combos.push_back(Combo{idx, hist_total, cells});
      hist_total += cells;
      int i = s - 1;
      while (i >= 0 && idx[i] == n_points - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<uint64_t> hist(hist_total, 0);

  PowerEval pe(params);
  const uint64_t seeds = uint64_t{1} << r;
  std::vector<uint32_t> bucket(n_points);
  for (uint64_t bits = 0; bits < seeds; ++bits) {
    Seed s = Seed::from_bits(params, bits);
    for (int p = 0; p < n_points; ++p)
      bucket[p] = pe.eval(s.coefficients, static_cast<uint32_t>(p)) & bucket_mask;
    for (const Combo& c : combos) {
      size_t pos = 0, stride = 1;
      for (int p : c.pts) {
        pos += stride * bucket[p];
        stride *= f;
      }
      ++hist[c.hist_offset + pos];
    }
  }
  for (const Combo& c : combos) {
    uint64_t expected = seeds / c.cells;
    if (expected * c.cells != seeds) return false;
    for (size_t i = 0; i < c.cells; ++i)
      if (hist[c.hist_offset + i] != expected) return false;
  }
  return true;
}

}  // namespace rset
