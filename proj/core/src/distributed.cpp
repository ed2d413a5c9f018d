#include "rset/distributed.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <string>

#include "rset/errors.hpp"

namespace rset {

namespace {

uint64_t fit_word(u128 v, int word_bits, int round) {
  u128 cap = word_bits >= 128 ? ~u128{0}
                              : ((u128{1} << word_bits) - 1);
  if (v > cap)
    throw BandwidthViolation(
        "conditional sum does not fit in a " + std::to_string(word_bits) +
            "-bit word; raise word_bits or shrink W",
        round, -1, -1, static_cast<unsigned long long>(v & 0xffffffffffffffffull));
  return static_cast<uint64_t>(v);
}

// One machine of the chunk-fixing protocol. Rounds cycle through
// collect (0), aggregate (1), broadcast (2).
class DerandMachine : public Node {
 public:
  DerandMachine(int self, int machines, SimMode mode, int word_bits,
                const SamplerParams& params, const ChunkSchedule& schedule,
                std::shared_ptr<const MulTable> mul)
      : self_(self),
        machines_(machines),
        mode_(mode),
        word_bits_(word_bits),
        params_(params),
        schedule_(schedule),
        mul_(std::move(mul)),
        prefix_(Seed::empty(params.family)) {}

  // Attach graph-local data for machines hosting an active vertex.
  void host_vertex(uint32_t color, std::vector<uint32_t> neighbor_colors,
                   bool qualifies) {
    hosts_vertex_ = true;
    color_ = color;
    neighbor_colors_ = std::move(neighbor_colors);
    qualifies_ = qualifies;
    distinct_nbr_colors_.assign(neighbor_colors_.begin(), neighbor_colors_.end());
    std::sort(distinct_nbr_colors_.begin(), distinct_nbr_colors_.end());
    distinct_nbr_colors_.erase(
        std::unique(distinct_nbr_colors_.begin(), distinct_nbr_colors_.end()),
        distinct_nbr_colors_.end());
  }

  std::vector<Message> step(int round, const std::vector<Message>& inbox) override;
  bool halted() const override { return done_; }
  uint64_t state_words() const override {
    return 2 + neighbor_colors_.size() + params_.family.k;
  }

  const Seed& final_seed() const { return final_seed_; }
  const FixTrace& trace() const { return trace_; }  // leader only

 private:
  struct Partials {
    u128 edge_sum = 0;
    u128 bad_sum = 0;
  };
  Partials my_partials(uint64_t candidate, int width) const;
  void advance_prefix(uint64_t chosen, int width);

  int self_;
  int machines_;
  SimMode mode_;
  int word_bits_;
  SamplerParams params_;
  ChunkSchedule schedule_;
  std::shared_ptr<const MulTable> mul_;

  bool hosts_vertex_ = false;
  uint32_t color_ = 0;
  std::vector<uint32_t> neighbor_colors_;
  std::vector<uint32_t> distinct_nbr_colors_;
  bool qualifies_ = false;

  Seed prefix_;
  int chunk_ = 0;
  bool done_ = false;
  Seed final_seed_;

  // aggregate phase scratch (candidate machines)
  u128 agg_edge_ = 0, agg_bad_ = 0, agg_combined_ = 0;
  // leader state
  FixTrace trace_;
};

DerandMachine::Partials DerandMachine::my_partials(uint64_t candidate,
                                                   int width) const {
  Partials p;
  if (!hosts_vertex_) return p;
  Seed ext = prefix_.extended(params_.family, candidate, width);
  // E_u: one indicator per incident edge; counts each sampled edge at both
  // endpoints, the leader divides the total by two.
  for (uint32_t nc : neighbor_colors_) {
    std::vector<uint32_t> pts{color_, nc};
    if (pts[0] > pts[1]) std::swap(pts[0], pts[1]);
    p.edge_sum += conditional_term_sum(params_.family, params_.family.bucket_bits,
                                       params_.budget_log2, TermKind::AllSelected,
                                       pts, ext, *mul_);
  }
  if (qualifies_) {
    std::vector<uint32_t> pts = distinct_nbr_colors_;
    pts.push_back(color_);
    std::sort(pts.begin(), pts.end());
    p.bad_sum = conditional_term_sum(params_.family, params_.family.bucket_bits,
                                     params_.budget_log2, TermKind::NoneSelected,
                                     pts, ext, *mul_);
  }
  return p;
}

void DerandMachine::advance_prefix(uint64_t chosen, int width) {
  prefix_ = prefix_.extended(params_.family, chosen, width);
  ++chunk_;
  if (chunk_ >= schedule_.chunks()) {
    final_seed_ = prefix_;
    done_ = true;
  }
}

std::vector<Message> DerandMachine::step(int round,
                                         const std::vector<Message>& inbox) {
  std::vector<Message> out;
  if (done_) return out;
  const int phase = round % 3;
  const int width = schedule_.width(chunk_);
  const uint64_t candidates = uint64_t{1} << width;

  if (phase == 0) {
    // A broadcast from the previous chunk arrives here.
    if (!inbox.empty()) {
      advance_prefix(inbox.front().payload.at(0), schedule_.width(chunk_));
      if (done_) return out;
    }
    const int w2 = schedule_.width(chunk_);
    const uint64_t cands2 = uint64_t{1} << w2;
    for (uint64_t y = 0; y < cands2; ++y) {
      Partials p = my_partials(y, w2);
      if (static_cast<int>(y) == self_) {
        agg_edge_ = p.edge_sum;
        agg_bad_ = p.bad_sum;
        agg_combined_ = p.edge_sum + 2 * params_.weight * p.bad_sum;
        continue;
      }
      if (!hosts_vertex_) continue;
      Message m;
      m.src = self_;
      m.dst = static_cast<int>(y);
      if (mode_ == SimMode::MpcLinear) {
        m.payload = {fit_word(p.edge_sum, word_bits_, round),
                     fit_word(p.bad_sum, word_bits_, round)};
      } else {
        m.payload = {fit_word(p.edge_sum + 2 * params_.weight * p.bad_sum,
                              word_bits_, round)};
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  if (phase == 1) {
    if (static_cast<uint64_t>(self_) >= candidates) return out;
    for (const Message& m : inbox) {
      if (mode_ == SimMode::MpcLinear) {
        agg_edge_ += m.payload.at(0);
        agg_bad_ += m.payload.at(1);
      } else {
        agg_combined_ += m.payload.at(0);
      }
    }
    if (self_ != 0) {
      Message m;
      m.src = self_;
      m.dst = 0;
      if (mode_ == SimMode::MpcLinear)
        m.payload = {fit_word(agg_edge_, word_bits_, round),
                     fit_word(agg_bad_, word_bits_, round)};
      else
        m.payload = {fit_word(agg_combined_, word_bits_, round)};
      out.push_back(std::move(m));
    }
    return out;
  }

  // phase == 2: the leader folds in the aggregates and broadcasts the argmin.
  if (self_ != 0) return out;
  std::vector<u128> psi_sums(candidates, 0);
  auto fold = [&](uint64_t cand, u128 edge, u128 bad, u128 combined) {
    if (mode_ == SimMode::MpcLinear) {
      if (edge % 2 != 0)
        throw std::logic_error("edge indicator total must be even");
      psi_sums[cand] = edge / 2 + params_.weight * bad;
    } else {
      if (combined % 2 != 0)
        throw std::logic_error("combined indicator total must be even");
      psi_sums[cand] = combined / 2;
    }
  };
  fold(0, agg_edge_, agg_bad_, agg_combined_);
  for (const Message& m : inbox) {
    if (mode_ == SimMode::MpcLinear)
      fold(m.src, m.payload.at(0), m.payload.at(1), 0);
    else
      fold(m.src, 0, 0, m.payload.at(0));
  }
  uint64_t best = 0;
  for (uint64_t c = 1; c < candidates; ++c)
    if (psi_sums[c] < psi_sums[best]) best = c;

  if (chunk_ == 0) {
    trace_.r = schedule_.r;
    trace_.root_sum = 0;
    for (u128 s : psi_sums) trace_.root_sum += s;
  }
  ChunkDecision dec;
  dec.index = chunk_;
  dec.bit_lo = schedule_.bit_lo(chunk_);
  dec.bit_hi = schedule_.bit_hi(chunk_);
  dec.sums = psi_sums;
  dec.chosen = best;
  trace_.chunks.push_back(std::move(dec));

  for (int m = 1; m < machines_; ++m) {
    Message msg;
    msg.src = self_;
    msg.dst = m;
    msg.payload = {best};
    out.push_back(std::move(msg));
  }
  advance_prefix(best, width);
  return out;
}

}  // namespace

FixResult distributed_fix_seed(Simulator& sim, const Graph& g,
                               const std::vector<int>& machine_of_vertex,
                               const Coloring& col, const SamplerParams& params,
                               const ChunkSchedule& schedule) {
  if (schedule.r != params.seed_bits())
    throw InvalidInput("distributed_fix_seed: schedule does not match seed length");
  if (static_cast<int>(machine_of_vertex.size()) != g.vertex_count())
    throw InvalidInput("distributed_fix_seed: machine map size mismatch");
  const int machines = sim.config().machine_count;
  for (int i = 0; i < schedule.chunks(); ++i)
    if ((uint64_t{1} << schedule.width(i)) > static_cast<uint64_t>(machines))
      throw CandidateOverflow(
          "distributed_fix_seed: chunk of " + std::to_string(schedule.width(i)) +
          " bits needs more candidate machines than exist; lower chunk_bits");
  if (!validate_coloring(g, col))
    throw NotProper("distributed_fix_seed: coloring is not proper");
  if (col.palette_size > params.family.domain_size)
    throw DomainTooSmall("distributed_fix_seed: palette exceeds hash domain");

  auto mul = std::make_shared<const MulTable>(params.family.field);
  std::vector<std::unique_ptr<DerandMachine>> nodes;
  nodes.reserve(machines);
  for (int m = 0; m < machines; ++m)
    nodes.push_back(std::make_unique<DerandMachine>(
        m, machines, sim.config().mode, sim.config().word_bits, params,
        schedule, mul));
  for (int v = 0; v < g.vertex_count(); ++v) {
    int m = machine_of_vertex[v];
    if (m < 0 || m >= machines)
      throw InvalidInput("distributed_fix_seed: vertex mapped to missing machine");
    std::vector<uint32_t> nbr;
    nbr.reserve(g.neighbors(v).size());
    for (int w : g.neighbors(v))
      nbr.push_back(static_cast<uint32_t>(col.color[w]));
    bool qualifies =
        static_cast<uint64_t>(g.degree(v)) >= params.degree_threshold;
    nodes[m]->host_vertex(static_cast<uint32_t>(col.color[v]), std::move(nbr),
                          qualifies);
  }

  std::vector<Node*> raw;
  raw.reserve(nodes.size());
  for (auto& n : nodes) raw.push_back(n.get());
  run_program(sim, raw, "derand");

  FixResult out;
  out.seed = nodes[0]->final_seed();
  out.trace = nodes[0]->trace();
  for (const auto& n : nodes)
    if (!(n->final_seed().coefficients == out.seed.coefficients))
      throw std::logic_error("distributed_fix_seed: seed disagreement");
  return out;
}

FixResult distributed_fix_seed(Simulator& sim, const Graph& g,
                               const Coloring& col, const SamplerParams& params,
                               const ChunkSchedule& schedule) {
  std::vector<int> ident(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) ident[v] = v;
  return distributed_fix_seed(sim, g, ident, col, params, schedule);
}

}  // namespace rset
