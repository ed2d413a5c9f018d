#include "rset/sim.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "rset/errors.hpp"

namespace rset {

namespace {

uint64_t default_memory(int machines, int constant) {
  uint64_t logn = std::max<uint64_t>(
      1, std::bit_width(static_cast<unsigned>(std::max(machines - 1, 1))));
  return static_cast<uint64_t>(constant) * machines * logn;
}

}  // namespace

ModelConfig ModelConfig::mpc_linear(int machines, int memory_constant,
                                    std::optional<uint64_t> memory_override) {
  if (machines < 1) throw InvalidInput("ModelConfig: need at least one machine");
  ModelConfig c;
  c.mode = SimMode::MpcLinear;
  c.machine_count = machines;
  c.memory_constant = memory_constant;
  c.memory_words = memory_override ? *memory_override
                                   : default_memory(machines, memory_constant);
  uint64_t floor = default_memory(machines, memory_constant);
  if (c.memory_words < floor)
    throw InvalidInput("ModelConfig: S below the linear-memory floor of " +
                       std::to_string(floor) + " words");
  return c;
}

ModelConfig ModelConfig::cong_clique(int machines, int lenzen_rounds,
                                     std::optional<uint64_t> memory_override) {
  if (machines < 1) throw InvalidInput("ModelConfig: need at least one machine");
  if (lenzen_rounds < 1) throw InvalidInput("ModelConfig: lenzen_rounds >= 1");
  ModelConfig c;
  c.mode = SimMode::CongClique;
  c.machine_count = machines;
  c.lenzen_rounds = lenzen_rounds;
  // No per-node memory limit in this mode; S only caps routed transfers.
  c.memory_words = memory_override ? *memory_override : default_memory(machines, 4);
  return c;
}

uint64_t SimTranscript::total_words() const {
  uint64_t t = 0;
  for (const auto& r : rounds)
    for (const auto& [m, w] : r.sent) t += w;
  return t;
}

std::optional<std::string> replay_violations(const SimTranscript& t,
                                             const ModelConfig& cfg) {
  for (const auto& r : t.rounds) {
    uint64_t sent_total = 0, recv_total = 0;
    for (const auto& [m, w] : r.sent) sent_total += w;
    for (const auto& [m, w] : r.received) recv_total += w;
    if (sent_total != recv_total)
      return "round " + std::to_string(r.index) + ": sent/received words differ";
    if (cfg.mode == SimMode::MpcLinear) {
      for (const auto& [m, w] : r.sent)
        if (w > cfg.memory_words)
          return "round " + std::to_string(r.index) + ": machine " +
                 std::to_string(m) + " sent " + std::to_string(w) + " > S";
      for (const auto& [m, w] : r.received)
        if (w > cfg.memory_words)
          return "round " + std::to_string(r.index) + ": machine " +
                 std::to_string(m) + " received " + std::to_string(w) + " > S";
      for (const auto& [m, w] : r.memory)
        if (w > cfg.memory_words)
          return "round " + std::to_string(r.index) + ": machine " +
                 std::to_string(m) + " used " + std::to_string(w) + " words > S";
    } else if (!r.routed && r.max_pair_words > cfg.pair_cap_words) {
      return "round " + std::to_string(r.index) + ": pair load " +
             std::to_string(r.max_pair_words) + " > cap";
    }
  }
  return std::nullopt;
}

Simulator::Simulator(ModelConfig cfg) : cfg_(cfg) {
  resident_.assign(cfg_.machine_count, 0);
}

void Simulator::set_resident_words(int machine, uint64_t words) {
  resident_.at(machine) = words;
}

uint64_t Simulator::resident_words(int machine) const {
  return resident_.at(machine);
}

std::vector<std::vector<Message>> Simulator::commit(std::vector<Message> msgs,
                                                    const std::string& label,
                                                    bool routed,
                                                    int rounds_charged) {
  const int round_idx = transcript_.total_rounds();
  std::sort(msgs.begin(), msgs.end(), [](const Message& a, const Message& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  std::vector<uint64_t> sent(cfg_.machine_count, 0), recv(cfg_.machine_count, 0);
  std::map<std::pair<int, int>, uint64_t> pair_words;
  for (const Message& m : msgs) {
    if (m.src < 0 || m.src >= cfg_.machine_count || m.dst < 0 ||
        m.dst >= cfg_.machine_count)
      throw InvalidInput("message endpoint out of range");
    if (m.src == m.dst)
      throw InvalidInput("self-addressed message; keep local state local");
    uint64_t w = m.payload.size();
    sent[m.src] += w;
    recv[m.dst] += w;
    pair_words[{m.src, m.dst}] += w;
  }
  uint64_t max_pair = 0;
  for (const auto& [p, w] : pair_words) max_pair = std::max(max_pair, w);

  // Enforce caps before committing anything.
  if (cfg_.mode == SimMode::MpcLinear) {
    for (int m = 0; m < cfg_.machine_count; ++m) {
      if (sent[m] > cfg_.memory_words)
        throw CapacityViolation("machine sent more than S words in one round",
                                round_idx, m, sent[m]);
      if (recv[m] > cfg_.memory_words)
        throw CapacityViolation("machine received more than S words in one round",
                                round_idx, m, recv[m]);
      uint64_t mem = resident_[m] + sent[m] + recv[m];
      if (mem > cfg_.memory_words)
        throw CapacityViolation("machine exceeded S words of memory", round_idx,
                                m, mem);
    }
  } else if (!routed) {
    for (const auto& [p, w] : pair_words)
      if (w > cfg_.pair_cap_words)
        throw BandwidthViolation("pair exceeded the per-round word cap",
                                 round_idx, p.first, p.second, w);
  }

  RoundRecord rec;
  rec.index = round_idx;
  rec.label = label;
  rec.routed = routed;
  rec.max_pair_words = max_pair;
  for (int m = 0; m < cfg_.machine_count; ++m) {
    if (sent[m]) rec.sent.emplace_back(m, sent[m]);
    if (recv[m]) rec.received.emplace_back(m, recv[m]);
    uint64_t mem = resident_[m] + sent[m] + recv[m];
    if (mem) rec.memory.emplace_back(m, mem);
  }
  transcript_.rounds.push_back(std::move(rec));
  // Extra rounds charged by a routed primitive are latency only.
  for (int extra = 1; extra < rounds_charged; ++extra) {
    RoundRecord lat;
    lat.index = transcript_.total_rounds();
    lat.label = label;
    lat.routed = routed;
    transcript_.rounds.push_back(std::move(lat));
  }

  std::vector<std::vector<Message>> inbox(cfg_.machine_count);
  for (Message& m : msgs) inbox[m.dst].push_back(std::move(m));
  return inbox;
}

std::vector<std::vector<Message>> Simulator::deliver(std::vector<Message> msgs,
                                                     const std::string& label) {
  return commit(std::move(msgs), label, /*routed=*/false, /*rounds_charged=*/1);
}

std::vector<std::vector<Message>> Simulator::routed_transfer(
    std::vector<Message> msgs, const std::string& label) {
  int rounds = cfg_.mode == SimMode::CongClique ? cfg_.lenzen_rounds : 1;
  return commit(std::move(msgs), label, /*routed=*/true, rounds);
}

int run_program(Simulator& sim, std::vector<Node*> nodes,
                const std::string& label) {
  const int n = static_cast<int>(nodes.size());
  if (n > sim.config().machine_count)
    throw InvalidInput("run_program: more nodes than machines");
  int charged = 0;
  int round = 0;
  std::vector<std::vector<Message>> inbox(sim.config().machine_count);
  const int kMaxRounds = 1 << 20;
  for (;;) {
    bool all_halted = true;
    for (Node* nd : nodes)
      if (!nd->halted()) {
        all_halted = false;
        break;
      }
    bool pending = false;
    for (const auto& ib : inbox)
      if (!ib.empty()) {
        pending = true;
        break;
      }
    if (all_halted && !pending) break;
    if (round > kMaxRounds) throw std::logic_error("run_program: no convergence");

    std::vector<Message> outgoing;
    for (int i = 0; i < n; ++i) {
      if (nodes[i]->halted() && inbox[i].empty()) continue;
      auto msgs = nodes[i]->step(round, inbox[i]);
      for (auto& m : msgs) {
        m.src = i;
        outgoing.push_back(std::move(m));
      }
    }
    for (auto& ib : inbox) ib.clear();
    if (!outgoing.empty()) {
      // Temporarily register node state for the memory accounting.
      std::vector<uint64_t> saved(n);
      for (int i = 0; i < n; ++i) {
        saved[i] = sim.resident_words(i);
        sim.set_resident_words(i, saved[i] + nodes[i]->state_words());
      }
      inbox = sim.deliver(std::move(outgoing), label);
      for (int i = 0; i < n; ++i) sim.set_resident_words(i, saved[i]);
      ++charged;
    }
    ++round;
  }
  return charged;
}

int gather_subgraph(Simulator& sim, const Graph& g, const VertexSet& s,
                    const std::vector<int>& machine_of_vertex, int target) {
  const auto& cfg = sim.config();
  if (target < 0 || target >= cfg.machine_count)
    throw InvalidInput("gather_subgraph: bad target machine");
  if (static_cast<int>(machine_of_vertex.size()) != g.vertex_count())
    throw InvalidInput("gather_subgraph: machine map size mismatch");
  std::vector<char> in_s(g.vertex_count(), 0);
  for (int v : s.members) in_s[v] = 1;
  uint64_t edge_words = 0;
  for (auto [u, v] : g.edges())
    if (in_s[u] && in_s[v]) ++edge_words;
  uint64_t total = edge_words + s.members.size();
  if (total > cfg.memory_words)
    throw CapacityViolation("gather_subgraph: subgraph does not fit in S words",
                            sim.transcript().total_rounds(), target, total);
  // Each member ships its id plus the induced edges it owns (lower endpoint).
  std::vector<Message> msgs;
  for (int v : s.members) {
    if (machine_of_vertex[v] == target) continue;  // already local
    uint64_t words = 1;
    for (int w : g.neighbors(v))
      if (in_s[w] && v < w) ++words;
    msgs.push_back(Message::words(machine_of_vertex[v], target, words));
  }
  uint64_t before = sim.resident_words(target);
  int rounds_before = sim.transcript().total_rounds();
  sim.routed_transfer(std::move(msgs), "gather");
  sim.set_resident_words(target, before + total);
  return sim.transcript().total_rounds() - rounds_before;
}

int gather_subgraph(Simulator& sim, const Graph& g, const VertexSet& s,
                    int target) {
  std::vector<int> ident(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) ident[v] = v;
  return gather_subgraph(sim, g, s, ident, target);
}

}  // namespace rset
