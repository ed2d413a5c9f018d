#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "rset/graph.hpp"
#include "rset/int128.hpp"
#include "rset/kwise.hpp"

namespace rset {

// Exact rational exponent for the degree threshold f * Delta^epsilon.
struct Rational {
  int num = 1;
  int den = 3;
};

struct SamplerOptions {
  Rational epsilon{1, 3};
  double confidence = 1.0;            // the constant c
  std::optional<int> k_override;
  int w_exponent = 4;                 // W = n^w_exponent
  int budget_log2 = 24;               // max enumerated evaluations per call
};

// Everything the sampler and derandomizer need for one invocation.
struct SamplerParams {
  FamilyParams family;
  Rational epsilon{1, 3};
  double confidence = 1.0;
  uint64_t f = 2;               // buckets, power of two, f^2 <= Delta
  uint64_t degree_threshold = 1;  // ceil(f * Delta^epsilon)
  u128 weight = 1;              // W, the bad-vertex weight
  int budget_log2 = 24;

  int seed_bits() const { return family.seed_bits(); }
};

// f = 2^floor(log2 sqrt(Delta)); threshold = ceil(f * Delta^eps) computed
// exactly from the rational epsilon; k = max(4, even-rounded paper formula)
// unless overridden; W = n^w_exponent. domain_size is the palette the hash
// domain must cover.
SamplerParams select_parameters(int n, int delta, const SamplerOptions& opts,
                                int domain_size);

// Tail bound 8*((k*mu + k^2)/lambda^2)^(k/2), clamped to [0,1] for reporting.
double bellare_rompel_bound(int k, double mu, double lambda);

// Exact potential bookkeeping for one fixed seed.
struct PotentialState {
  uint64_t sampled_edges = 0;    // E_A = |E(G[Z])|
  uint64_t bad_count = 0;        // u not in Z, deg >= threshold, N(u) ∩ Z empty
  uint64_t uncovered_count = 0;  // deg >= threshold, N(u) ∩ Z empty (u may be in Z)
  u128 psi = 0;                  // E_A + W * bad_count
};

PotentialState psi_of_seed(const Graph& g, const Coloring& col,
                           const SamplerParams& params, const Seed& seed);

VertexSet selected_vertices(const Graph& g, const Coloring& col,
                            const SamplerParams& params, const Seed& seed);

// Chunked commitment order over the r seed bits.
struct ChunkSchedule {
  int chunk_bits = 1;
  int r = 0;
  int chunks() const { return (r + chunk_bits - 1) / chunk_bits; }
  int bit_lo(int i) const { return i * chunk_bits; }
  int bit_hi(int i) const { return std::min(r, (i + 1) * chunk_bits); }
  int width(int i) const { return bit_hi(i) - bit_lo(i); }

  static ChunkSchedule make(int r, int chunk_bits);
};

// Term-level conditional sums. A term is a set of distinct colors together
// with the event that all of them are selected (edge terms) or none of them
// is (bad-vertex terms). Sums are exact: sum over all suffix completions of
// the event indicator, times the term multiplicity.
enum class TermKind { AllSelected, NoneSelected };

u128 conditional_term_sum(const FamilyParams& family, int bucket_bits,
                          int budget_log2, TermKind kind,
                          const std::vector<uint32_t>& points,
                          const Seed& prefix, const MulTable& mul);

// Preprocessed term lists for one (graph, coloring, params) instance; groups
// identical color pairs/sets so the suffix enumeration only runs once per
// distinct term.
class PsiEvaluator {
 public:
  PsiEvaluator(const Graph& g, const Coloring& col, const SamplerParams& params);

  struct Parts {
    u128 edge_sum = 0;       // sum over suffixes of E_A
    u128 bad_sum = 0;        // sum over suffixes of bad_count
    u128 uncovered_sum = 0;  // sum over suffixes of uncovered_count
  };

  // Exact sums over all 2^(r-j) suffixes of the given prefix.
  Parts parts_sum(const Seed& prefix, bool with_uncovered = false) const;
  u128 psi_sum(const Seed& prefix) const;

  const SamplerParams& params() const { return params_; }

 private:
  struct Term {
    std::vector<uint32_t> points;
    uint64_t multiplicity = 1;
  };
  u128 term_group_sum(const std::vector<Term>& terms, TermKind kind,
                      const Seed& prefix) const;

  SamplerParams params_;
  MulTable mul_;
  std::vector<Term> edge_terms_;
  std::vector<Term> bad_terms_;
  std::vector<Term> uncovered_terms_;
  int scale_cap_ = 110;
};

// Exact integer sum of psi over all suffixes; dividing by 2^(r-j) gives
// E[psi | prefix].
u128 conditional_psi_sum(const Graph& g, const Coloring& col,
                         const SamplerParams& params, const Seed& prefix);

struct ChunkDecision {
  int index = 0;
  int bit_lo = 0;
  int bit_hi = 0;
  std::vector<u128> sums;  // conditional sums per candidate value
  uint64_t chosen = 0;
};

struct FixTrace {
  int r = 0;
  u128 root_sum = 0;  // sum of psi over the full seed space
  std::vector<ChunkDecision> chunks;
};

struct FixResult {
  Seed seed;
  FixTrace trace;
};

// Method of conditional expectations over the chunk schedule. Ties break to
// the smallest candidate value.
FixResult fix_seed(const Graph& g, const Coloring& col,
                   const SamplerParams& params, const ChunkSchedule& schedule);

struct PreconditionReport {
  Dyadic expected_edges;       // E[E_A]
  Dyadic sum_prob_bad;         // sum_u Pr[X_u] with the u-not-in-Z form
  Dyadic sum_prob_uncovered;   // same but counting u in Z as well
  Dyadic expected_psi;         // E[psi]
  u128 weight = 1;
  int r = 0;
  bool ok = false;             // E[psi] < W, which forces bad_count = 0
};

PreconditionReport check_precondition(const Graph& g, const Coloring& col,
                                      const SamplerParams& params);

}  // namespace rset
