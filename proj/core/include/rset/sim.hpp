#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rset/graph.hpp"

namespace rset {

enum class SimMode { MpcLinear, CongClique };

// Machine/memory/bandwidth parameters of one simulated execution.
struct ModelConfig {
  SimMode mode = SimMode::MpcLinear;
  int machine_count = 1;
  uint64_t memory_words = 0;   // S
  int word_bits = 64;
  uint64_t pair_cap_words = 1; // CongClique: words per ordered pair per round
  int lenzen_rounds = 2;       // cost of one routed (Lenzen) transfer
  int memory_constant = 4;     // c in the default S = c * n * ceil(log2 n)

  // One machine per graph vertex; machine 0 is coordinator and leader.
  static ModelConfig mpc_linear(int machines, int memory_constant = 4,
                                std::optional<uint64_t> memory_override = {});
  static ModelConfig cong_clique(int machines, int lenzen_rounds = 2,
                                 std::optional<uint64_t> memory_override = {});
};

struct Message {
  int src = 0;
  int dst = 0;
  std::vector<uint64_t> payload;

  static Message words(int src, int dst, uint64_t count) {
    return Message{src, dst, std::vector<uint64_t>(count, 0)};
  }
};

struct RoundRecord {
  int index = 0;
  std::string label;
  bool routed = false;
  uint64_t max_pair_words = 0;
  // Sparse per-machine columns, sorted by machine id.
  std::vector<std::pair<int, uint64_t>> sent;
  std::vector<std::pair<int, uint64_t>> received;
  std::vector<std::pair<int, uint64_t>> memory;  // resident + traffic
};

struct SimTranscript {
  std::vector<RoundRecord> rounds;
  int total_rounds() const { return static_cast<int>(rounds.size()); }
  uint64_t total_words() const;
};

// Re-checks a committed transcript against the caps; returns a description of
// the first violation found, or nullopt. A transcript produced by a completed
// run never yields one.
std::optional<std::string> replay_violations(const SimTranscript& t,
                                             const ModelConfig& cfg);

// Synchronous lock-step engine. One deliver() call is one simulated round;
// caps are enforced before the round is committed to the transcript.
class Simulator {
 public:
  explicit Simulator(ModelConfig cfg);

  const ModelConfig& config() const { return cfg_; }
  const SimTranscript& transcript() const { return transcript_; }

  // Long-lived per-machine state (e.g. a gathered subgraph) that counts
  // toward the MPC memory cap.
  void set_resident_words(int machine, uint64_t words);
  uint64_t resident_words(int machine) const;

  // One synchronous round: validates caps, commits the record, and returns
  // the per-machine inboxes (messages sorted by sender). Self-addressed
  // messages are forbidden; keep local state local.
  std::vector<std::vector<Message>> deliver(std::vector<Message> msgs,
                                            const std::string& label);

  // Lenzen-style routed transfer: charges cfg.lenzen_rounds rounds, exempt
  // from the per-pair cap, still subject to the MPC word/memory caps.
  std::vector<std::vector<Message>> routed_transfer(std::vector<Message> msgs,
                                                    const std::string& label);

 private:
  std::vector<std::vector<Message>> commit(std::vector<Message> msgs,
                                           const std::string& label, bool routed,
                                           int rounds_charged);
  ModelConfig cfg_;
  SimTranscript transcript_;
  std::vector<uint64_t> resident_;
};

// A node program: deterministic function of (round, inbox). Return the
// messages to send this round; flip halted() once no further activity is
// needed. state_words feeds the memory accounting.
class Node {
 public:
  virtual ~Node() = default;
  virtual std::vector<Message> step(int round, const std::vector<Message>& inbox) = 0;
  virtual bool halted() const = 0;
  virtual uint64_t state_words() const { return 0; }
};

// Runs nodes lock-step on the given simulator until all halt and no messages
// are in flight. Rounds with no traffic are not charged. Returns the number
// of charged rounds.
int run_program(Simulator& sim, std::vector<Node*> nodes,
                const std::string& label);

// Moves G[s] (1 word per member + 1 per induced edge) to `target`.
// Costs 1 round in MPC-linear mode and cfg.lenzen_rounds in CongClique mode.
// The subgraph must fit: |E(G[s])| + |s| <= S. machine_of_vertex maps graph
// vertex ids to machine ids.
int gather_subgraph(Simulator& sim, const Graph& g, const VertexSet& s,
                    const std::vector<int>& machine_of_vertex, int target);
int gather_subgraph(Simulator& sim, const Graph& g, const VertexSet& s,
                    int target);

}  // namespace rset
