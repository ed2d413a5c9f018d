#include "rset/derand.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "rset/errors.hpp"

namespace rset {

namespace {

// Smallest integer T with T^den >= f^den * delta^num, i.e. T >= f*delta^(num/den).
uint64_t exact_threshold(uint64_t f, uint64_t delta, Rational eps) {
  if (eps.num <= 0 || eps.den <= 0 || eps.num > eps.den)
    throw InvalidInput("epsilon must be a rational in (0, 1]");
  auto checked_pow = [](u128 base, int e) {
    u128 acc = 1;
    for (int i = 0; i < e; ++i) {
      if (base != 0 && acc > (~u128{0}) / base)
        throw InvalidInput("threshold computation overflows");
      acc *= base;
    }
    return acc;
  };
  u128 rhs = checked_pow(f, eps.den) * checked_pow(delta, eps.num);
  long double guess =
      static_cast<long double>(f) *
      powl(static_cast<long double>(delta),
           static_cast<long double>(eps.num) / static_cast<long double>(eps.den));
  uint64_t t = static_cast<uint64_t>(guess);
  if (t > 4) t -= 4;  // start a little low and walk up
  else t = 1;
  while (checked_pow(t, eps.den) < rhs) ++t;
  return t;
}

}  // namespace

SamplerParams select_parameters(int n, int delta, const SamplerOptions& opts,
                                int domain_size) {
  if (n < 2) throw DegenerateGraph("select_parameters: need n >= 2");
  if (delta < 2) throw DegenerateGraph("select_parameters: need max degree >= 2");
  if (opts.w_exponent < 0 || opts.w_exponent > 8)
    throw InvalidInput("w_exponent must be in [0, 8]");

  SamplerParams p;
  p.epsilon = opts.epsilon;
  p.confidence = opts.confidence;
  p.budget_log2 = opts.budget_log2;

  int bucket_bits = (std::bit_width(static_cast<unsigned>(delta)) - 1) / 2;
  p.f = uint64_t{1} << bucket_bits;
  p.degree_threshold = exact_threshold(p.f, static_cast<uint64_t>(delta), opts.epsilon);

  int k;
  if (opts.k_override) {
    k = *opts.k_override;
    if (k < 1) throw InvalidK("k override must be >= 1");
  } else {
    long double ratio = static_cast<long double>(opts.epsilon.den) /
                        static_cast<long double>(opts.epsilon.num);
    long double raw = 32.0L * opts.confidence * ratio * log2l(n) / log2l(delta);
    k = static_cast<int>(ceill(raw - 1e-9L));
    if (k % 2 != 0) ++k;
    k = std::max(k, 4);
  }

  if (log2l(static_cast<long double>(n)) * opts.w_exponent > 100.0L)
    throw InvalidInput("select_parameters: W = n^w_exponent exceeds 100 bits");
  p.weight = 1;
  for (int i = 0; i < opts.w_exponent; ++i) p.weight *= static_cast<u128>(n);

  int domain_bits =
      domain_size <= 1 ? 1 : std::bit_width(static_cast<unsigned>(domain_size - 1));
  int b = std::max(domain_bits, std::max(bucket_bits, 1));
  if (b > 32)
    throw InvalidInput("select_parameters: hash domain wider than 32 bits");
  p.family = FamilyParams::make(k, FieldSpec::standard(b), bucket_bits, domain_size);
  return p;
}

double bellare_rompel_bound(int k, double mu, double lambda) {
  if (k < 4 || k % 2 != 0)
    throw InvalidK("bellare_rompel_bound: k must be an even integer >= 4");
  if (!(lambda > 0)) throw InvalidInput("bellare_rompel_bound: lambda must be > 0");
  if (mu < 0) throw InvalidInput("bellare_rompel_bound: mu must be >= 0");
  long double base =
      (static_cast<long double>(k) * mu + static_cast<long double>(k) * k) /
      (static_cast<long double>(lambda) * lambda);
  if (base >= 1.0L) return 1.0;
  long double v = 8.0L * powl(base, static_cast<long double>(k) / 2.0L);
  if (v >= 1.0L) return 1.0;
  return static_cast<double>(v);
}

ChunkSchedule ChunkSchedule::make(int r, int chunk_bits) {
  if (chunk_bits < 1) throw InvalidInput("chunk_bits must be >= 1");
  if (r < 0) throw InvalidInput("negative seed length");
  ChunkSchedule s;
  s.chunk_bits = chunk_bits;
  s.r = r;
  return s;
}

namespace {

void check_instance(const Graph& g, const Coloring& col,
                    const SamplerParams& params) {
  if (static_cast<int>(col.color.size()) != g.vertex_count())
    throw InvalidInput("coloring size does not match graph");
  if (col.palette_size > params.family.domain_size)
    throw DomainTooSmall("palette exceeds hash domain");
  if (!validate_coloring(g, col)) throw NotProper("coloring is not proper");
}

}  // namespace

PotentialState psi_of_seed(const Graph& g, const Coloring& col,
                           const SamplerParams& params, const Seed& seed) {
  check_instance(g, col, params);
  if (!seed.fully_fixed(params.family))
    throw SeedNotCommitted("psi_of_seed: seed has uncommitted bits");
  std::vector<char> sel_color(col.palette_size, 0);
  for (int c = 0; c < col.palette_size; ++c)
    sel_color[c] = evaluate(params.family, seed, static_cast<uint32_t>(c)) == 0;
  PotentialState st;
  for (auto [u, v] : g.edges())
    if (sel_color[col.color[u]] && sel_color[col.color[v]]) ++st.sampled_edges;
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (static_cast<uint64_t>(g.degree(u)) < params.degree_threshold) continue;
    bool any = false;
    for (int w : g.neighbors(u))
      if (sel_color[col.color[w]]) {
        any = true;
        break;
      }
    if (!any) {
      ++st.uncovered_count;
      if (!sel_color[col.color[u]]) ++st.bad_count;
    }
  }
  st.psi = static_cast<u128>(st.sampled_edges) + params.weight * st.bad_count;
  return st;
}

VertexSet selected_vertices(const Graph& g, const Coloring& col,
                            const SamplerParams& params, const Seed& seed) {
  check_instance(g, col, params);
  std::vector<int> members;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (evaluate(params.family, seed, static_cast<uint32_t>(col.color[v])) == 0)
      members.push_back(v);
  return VertexSet::of(std::move(members));
}

// --- conditional sums -------------------------------------------------------

namespace {

struct SuffixLayout {
  int r, j, b, k;
  int first_full_free;  // index of the first fully-free coefficient
  // per coefficient: committed base bits plus where its free bits live in the
  // suffix integer
  struct CoeffSlot {
    uint32_t base;
    int shift;
    uint32_t mask;
  };
  std::vector<CoeffSlot> slots;
};

SuffixLayout make_layout(const FamilyParams& family, const Seed& prefix) {
  SuffixLayout L;
  L.r = family.seed_bits();
  L.j = prefix.fixed_prefix_bits;
  L.b = family.field.b;
  L.k = family.k;
  L.first_full_free = (L.j + L.b - 1) / L.b;
  L.slots.resize(L.k);
  const int suffix_len = L.r - L.j;
  for (int c = 0; c < L.k; ++c) {
    int lo = std::max(c * L.b, L.j);
    int hi = (c + 1) * L.b;
    auto& s = L.slots[c];
    s.base = prefix.coefficients[c];
    if (lo >= hi) {
      s.shift = 0;
      s.mask = 0;
    } else {
      int len = hi - lo;
      int offset = lo - L.j;  // position of the chunk within the suffix, MSB first
      s.shift = suffix_len - offset - len;
      s.mask = len >= 32 ? ~uint32_t{0} : (uint32_t{1} << len) - 1;
    }
  }
  return L;
}

inline void fill_coeffs(const SuffixLayout& L, uint64_t sv, uint32_t* out) {
  for (int c = 0; c < L.k; ++c) {
    const auto& s = L.slots[c];
    out[c] = s.base | (static_cast<uint32_t>(sv >> s.shift) & s.mask);
  }
}

u128 pow_u128(u128 base, int e) {
  u128 acc = 1;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// Closed form for one term when the joint bucket law at its points is provably
// uniform given the prefix: the matrix of point powers over the fully-free
// coefficient range diag(p^s) * Vandermonde(p) is invertible exactly when the
// points are distinct and (s == 0 or all points are nonzero).
bool fast_path_ok(const SuffixLayout& L, const std::vector<uint32_t>& pts) {
  int free_coeffs = L.k - L.first_full_free;
  if (static_cast<int>(pts.size()) > free_coeffs) return false;
  if (L.first_full_free == 0) return true;
  for (uint32_t p : pts)
    if (p == 0) return false;
  return true;
}

}  // namespace

u128 conditional_term_sum(const FamilyParams& family, int bucket_bits,
                          int budget_log2, TermKind kind,
                          const std::vector<uint32_t>& points,
                          const Seed& prefix, const MulTable& mul) {
  SuffixLayout L = make_layout(family, prefix);
  const int suffix_len = L.r - L.j;
  // Even closed forms scale by 2^(r-j); beyond this the 128-bit sums overflow.
  if (suffix_len > 110)
    throw EnumerationBudgetExceeded(
        "conditional sum: 2^" + std::to_string(suffix_len) +
        " suffix completions cannot be represented; override k or shrink the palette");
  const uint32_t bucket_mask =
      bucket_bits >= 32 ? ~uint32_t{0} : (uint32_t{1} << bucket_bits) - 1;

  std::vector<uint32_t> pts = points;
  // Resolve the zero point once a_0 is fully committed: h(0) = a_0.
  if (L.j >= L.b) {
    auto it = std::find(pts.begin(), pts.end(), 0u);
    if (it != pts.end()) {
      bool zero_selected = (prefix.coefficients[0] & bucket_mask) == 0;
      if (kind == TermKind::AllSelected && !zero_selected) return 0;
      if (kind == TermKind::NoneSelected && zero_selected) return 0;
      pts.erase(it);
    }
  }
  if (pts.empty()) return u128{1} << suffix_len;

  if (fast_path_ok(L, pts)) {
    int d = static_cast<int>(pts.size());
    int shift = suffix_len - d * bucket_bits;
    if (kind == TermKind::AllSelected) return u128{1} << shift;
    u128 hits = pow_u128((u128{1} << bucket_bits) - 1, d);
    return hits << shift;
  }

  if (suffix_len > budget_log2 || suffix_len > 62)
    throw EnumerationBudgetExceeded(
        "conditional sum: 2^" + std::to_string(suffix_len) +
        " suffix evaluations exceed the budget of 2^" + std::to_string(budget_log2));

  std::vector<uint32_t> coeffs(L.k);
  u128 total = 0;
  const uint64_t suffixes = uint64_t{1} << suffix_len;
  for (uint64_t sv = 0; sv < suffixes; ++sv) {
    fill_coeffs(L, sv, coeffs.data());
    bool event = true;
    for (uint32_t p : pts) {
      uint32_t acc = coeffs[L.k - 1];
      for (int i = L.k - 2; i >= 0; --i) acc = mul.mul(acc, p) ^ coeffs[i];
      bool sel = (acc & bucket_mask) == 0;
      if (kind == TermKind::AllSelected ? !sel : sel) {
        event = false;
        break;
      }
    }
    if (event) ++total;
  }
  return total;
}

PsiEvaluator::PsiEvaluator(const Graph& g, const Coloring& col,
                           const SamplerParams& params)
    : params_(params), mul_(params.family.field) {
  check_instance(g, col, params);
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> edge_groups;
  for (auto [u, v] : g.edges()) {
    uint32_t a = static_cast<uint32_t>(col.color[u]);
    uint32_t b = static_cast<uint32_t>(col.color[v]);
    if (a > b) std::swap(a, b);
    ++edge_groups[{a, b}];
  }
  for (const auto& [pts, count] : edge_groups)
    edge_terms_.push_back(Term{{pts.first, pts.second}, count});

  std::map<std::vector<uint32_t>, uint64_t> bad_groups, uncov_groups;
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (static_cast<uint64_t>(g.degree(u)) < params.degree_threshold) continue;
    std::set<uint32_t> nbr;
    for (int w : g.neighbors(u)) nbr.insert(static_cast<uint32_t>(col.color[w]));
    std::vector<uint32_t> npts(nbr.begin(), nbr.end());
    ++uncov_groups[npts];
    nbr.insert(static_cast<uint32_t>(col.color[u]));
    std::vector<uint32_t> pts(nbr.begin(), nbr.end());
    ++bad_groups[pts];
  }
  for (auto& [pts, count] : bad_groups) bad_terms_.push_back(Term{pts, count});
  for (auto& [pts, count] : uncov_groups)
    uncovered_terms_.push_back(Term{pts, count});

  // Widest value any conditional sum can reach: (m + W*(bad terms)) * 2^(r-j).
  u128 worst = static_cast<u128>(g.edge_count()) +
               params.weight * (static_cast<u128>(g.vertex_count()) + 1) + 1;
  int worst_bits = 0;
  while (worst > 0) {
    ++worst_bits;
    worst >>= 1;
  }
  scale_cap_ = 126 - worst_bits;
}

u128 PsiEvaluator::term_group_sum(const std::vector<Term>& terms, TermKind kind,
                                  const Seed& prefix) const {
  u128 total = 0;
  for (const Term& t : terms)
    total += t.multiplicity * conditional_term_sum(params_.family,
                                                   params_.family.bucket_bits,
                                                   params_.budget_log2, kind,
                                                   t.points, prefix, mul_);
  return total;
}

PsiEvaluator::Parts PsiEvaluator::parts_sum(const Seed& prefix,
                                            bool with_uncovered) const {
  if (params_.family.seed_bits() - prefix.fixed_prefix_bits > scale_cap_)
    throw EnumerationBudgetExceeded(
        "conditional sums for this seed length overflow 128 bits; "
        "override k or shrink the palette");
  Parts p;
  p.edge_sum = term_group_sum(edge_terms_, TermKind::AllSelected, prefix);
  p.bad_sum = term_group_sum(bad_terms_, TermKind::NoneSelected, prefix);
  if (with_uncovered)
    p.uncovered_sum =
        term_group_sum(uncovered_terms_, TermKind::NoneSelected, prefix);
  return p;
}

u128 PsiEvaluator::psi_sum(const Seed& prefix) const {
  Parts p = parts_sum(prefix);
  return p.edge_sum + params_.weight * p.bad_sum;
}

u128 conditional_psi_sum(const Graph& g, const Coloring& col,
                         const SamplerParams& params, const Seed& prefix) {
  PsiEvaluator ev(g, col, params);
  return ev.psi_sum(prefix);
}

FixResult fix_seed(const Graph& g, const Coloring& col,
                   const SamplerParams& params, const ChunkSchedule& schedule) {
  if (schedule.r != params.seed_bits())
    throw InvalidInput("fix_seed: schedule does not match seed length");
  PsiEvaluator ev(g, col, params);
  FixResult out;
  out.trace.r = schedule.r;
  Seed seed = Seed::empty(params.family);
  out.trace.root_sum = ev.psi_sum(seed);
  for (int i = 0; i < schedule.chunks(); ++i) {
    const int width = schedule.width(i);
    ChunkDecision dec;
    dec.index = i;
    dec.bit_lo = schedule.bit_lo(i);
    dec.bit_hi = schedule.bit_hi(i);
    const uint64_t candidates = uint64_t{1} << width;
    dec.sums.resize(candidates);
    uint64_t best = 0;
    for (uint64_t cand = 0; cand < candidates; ++cand) {
      dec.sums[cand] = ev.psi_sum(seed.extended(params.family, cand, width));
      if (dec.sums[cand] < dec.sums[best]) best = cand;
    }
    dec.chosen = best;
    seed = seed.extended(params.family, best, width);
    out.trace.chunks.push_back(std::move(dec));
  }
  out.seed = seed;
  return out;
}

PreconditionReport check_precondition(const Graph& g, const Coloring& col,
                                      const SamplerParams& params) {
  PsiEvaluator ev(g, col, params);
  Seed root = Seed::empty(params.family);
  auto parts = ev.parts_sum(root, /*with_uncovered=*/true);
  PreconditionReport rep;
  rep.r = params.seed_bits();
  rep.weight = params.weight;
  rep.expected_edges = make_dyadic(parts.edge_sum, rep.r);
  rep.sum_prob_bad = make_dyadic(parts.bad_sum, rep.r);
  rep.sum_prob_uncovered = make_dyadic(parts.uncovered_sum, rep.r);
  u128 psi_total = parts.edge_sum + params.weight * parts.bad_sum;
  rep.expected_psi = make_dyadic(psi_total, rep.r);
  rep.ok = psi_total < (params.weight << rep.r);
  return rep;
}

}  // namespace rset
