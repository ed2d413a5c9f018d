#include "rset/ruling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rset/distributed.hpp"
#include "rset/errors.hpp"
#include "rset/linial.hpp"

namespace rset {

uint64_t degree_floor(int n, double c_loop) {
  if (c_loop < 0) throw InvalidInput("degree_floor: negative constant");
  long double l = n >= 2 ? log2l(static_cast<long double>(n)) : 0.0L;
  long double core = ceill(l * l * l * l);
  long double v = ceill(core * static_cast<long double>(c_loop) - 1e-9L);
  if (v < 16.0L) return 16;
  return static_cast<uint64_t>(v);
}

int iteration_cap(int initial_delta) {
  if (initial_delta < 2) return 2;
  long double ll = log2l(static_cast<long double>(initial_delta));
  if (ll <= 1.0L) return 2;
  return static_cast<int>(ceill(logl(ll) / logl(1.2L) - 1e-9L)) + 2;
}

VertexSet greedy_mis(const Graph& g) {
  std::vector<char> blocked(g.vertex_count(), 0);
  std::vector<int> members;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (blocked[v]) continue;
    members.push_back(v);
    for (int w : g.neighbors(v)) blocked[w] = 1;
  }
  return VertexSet::of(std::move(members));
}

namespace {

std::string precondition_message(const PreconditionReport& rep) {
  return "derandomization precondition failed: E[psi] = " +
         rep.expected_psi.str() + " is not below W = " + to_string(rep.weight) +
         " (E[E_A] = " + rep.expected_edges.str() +
         ", sum Pr[X_u] = " + rep.sum_prob_bad.str() + ")";
}

// Degree report to the leader plus the broadcast back: 2 rounds.
void charge_degree_rounds(Simulator& sim) {
  const int n = sim.config().machine_count;
  if (n < 2) return;
  std::vector<Message> up;
  for (int m = 1; m < n; ++m) up.push_back(Message::words(m, 0, 1));
  sim.deliver(std::move(up), "degree.report");
  std::vector<Message> down;
  for (int m = 1; m < n; ++m) down.push_back(Message::words(0, m, 1));
  sim.deliver(std::move(down), "degree.broadcast");
}

void charge_leader_broadcast(Simulator& sim, const std::string& label) {
  const int n = sim.config().machine_count;
  std::vector<Message> down;
  for (int m = 1; m < n; ++m) down.push_back(Message::words(0, m, 1));
  sim.deliver(std::move(down), label);
}

// Color compaction: active machines report their color, the leader returns
// the dense relabel. 2 rounds.
void charge_compaction(Simulator& sim, const std::vector<int>& machines) {
  std::vector<Message> up;
  for (int m : machines)
    if (m != 0) up.push_back(Message::words(m, 0, 1));
  sim.deliver(std::move(up), "color.compact.report");
  std::vector<Message> down;
  for (int m : machines)
    if (m != 0) down.push_back(Message::words(0, m, 1));
  sim.deliver(std::move(down), "color.compact.assign");
}

// One color-exchange round over the active edges.
void charge_color_exchange(Simulator& sim, const Graph& g,
                           const std::vector<int>& machine_of_vertex) {
  std::vector<Message> msgs;
  for (auto [u, v] : g.edges()) {
    msgs.push_back(Message::words(machine_of_vertex[u], machine_of_vertex[v], 1));
    msgs.push_back(Message::words(machine_of_vertex[v], machine_of_vertex[u], 1));
  }
  sim.deliver(std::move(msgs), "color.exchange");
}

FixpointColoring simulate_fixpoint_coloring(Simulator& sim, const Graph& g,
                                            const std::vector<int>& machines) {
  FixpointColoring fx = reduce_to_fixpoint(g, Coloring::identity(g.vertex_count()));
  charge_compaction(sim, machines);
  for (int i = 0; i < fx.iterations; ++i) {
    charge_color_exchange(sim, g, machines);
    charge_compaction(sim, machines);
  }
  return fx;
}

}  // namespace

FallbackResult fallback_mis(Simulator& sim, const Graph& g,
                            const std::vector<int>& machine_of_vertex,
                            const RulingConfig& cfg) {
  FallbackResult out;
  int rounds_before = sim.transcript().total_rounds();
  const uint64_t words_needed =
      static_cast<uint64_t>(g.edge_count()) + g.vertex_count();
  bool want_gather = cfg.fallback == RulingConfig::Fallback::Gather;
  bool fits = words_needed <= sim.config().memory_words;
  if (want_gather && !fits) out.stats.switched = true;

  if (want_gather && fits) {
    out.stats.strategy = "gather";
    VertexSet all = VertexSet::of([&] {
      std::vector<int> ids(g.vertex_count());
      for (int v = 0; v < g.vertex_count(); ++v) ids[v] = v;
      return ids;
    }());
    gather_subgraph(sim, g, all, machine_of_vertex, 0);
    out.mis = greedy_mis(g);
    sim.set_resident_words(0, out.mis.size());
    charge_leader_broadcast(sim, "mis.membership");
    sim.set_resident_words(0, 0);
  } else {
    out.stats.strategy = "sweep";
    FixpointColoring fx = simulate_fixpoint_coloring(sim, g, machine_of_vertex);
    out.stats.palette = fx.coloring.palette_size;
    std::vector<char> in_mis(g.vertex_count(), 0), blocked(g.vertex_count(), 0);
    for (int c = 0; c < fx.coloring.palette_size; ++c) {
      std::vector<Message> msgs;
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (fx.coloring.color[v] != c || blocked[v]) continue;
        in_mis[v] = 1;
        for (int w : g.neighbors(v)) {
          blocked[w] = 1;
          msgs.push_back(
              Message::words(machine_of_vertex[v], machine_of_vertex[w], 1));
        }
      }
      sim.deliver(std::move(msgs), "sweep.class");
    }
    std::vector<int> members;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (in_mis[v]) members.push_back(v);
    out.mis = VertexSet::of(std::move(members));
  }
  out.stats.mis_size = out.mis.size();
  out.stats.rounds = sim.transcript().total_rounds() - rounds_before;
  return out;
}

RulingSetResult deterministic_two_ruling_set(const Graph& g,
                                             const RulingConfig& cfg) {
  const int n = g.vertex_count();
  RulingSetResult res;
  res.floor = degree_floor(n, cfg.degree_floor_const);
  if (n == 0) {
    res.verified = true;
    return res;
  }

  ModelConfig mc = cfg.mode == SimMode::MpcLinear
                       ? ModelConfig::mpc_linear(n, cfg.memory_constant,
                                                 cfg.memory_words)
                       : ModelConfig::cong_clique(n, cfg.lenzen_rounds,
                                                  cfg.memory_words);
  Simulator sim(mc);

  std::vector<char> active(n, 1);
  std::vector<int> ruling;

  auto active_set = [&] {
    std::vector<int> ids;
    for (int v = 0; v < n; ++v)
      if (active[v]) ids.push_back(v);
    return VertexSet::of(std::move(ids));
  };
  auto active_max_degree = [&] {
    int d = 0;
    for (int v = 0; v < n; ++v) {
      if (!active[v]) continue;
      int dv = 0;
      for (int w : g.neighbors(v)) dv += active[w];
      d = std::max(d, dv);
    }
    return d;
  };

  charge_degree_rounds(sim);
  int delta = max_degree(g);
  res.initial_delta = delta;
  const int default_chunk_bits =
      std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 1);
  const int chunk_bits = cfg.chunk_bits.value_or(default_chunk_bits);
  const int cap = iteration_cap(std::max(delta, 2));

  while (static_cast<uint64_t>(delta) >= res.floor) {
    if (res.iterations > cap)
      throw std::logic_error("degree collapse failed to terminate the loop");
    const int rounds_before = sim.transcript().total_rounds();
    InducedSubgraph ind = induced_subgraph(g, active_set());

    FixpointColoring fx = simulate_fixpoint_coloring(sim, ind.graph, ind.to_parent);
    SamplerParams params =
        select_parameters(n, delta, cfg.sampler, fx.coloring.palette_size);
    PreconditionReport pre = check_precondition(ind.graph, fx.coloring, params);
    if (!pre.ok) throw PreconditionFailed(precondition_message(pre));

    ChunkSchedule sched = ChunkSchedule::make(params.seed_bits(), chunk_bits);
    FixResult fr = distributed_fix_seed(sim, ind.graph, ind.to_parent,
                                        fx.coloring, params, sched);
    res.derand_traces.push_back(fr.trace);

    VertexSet z_local = selected_vertices(ind.graph, fx.coloring, params, fr.seed);
    PotentialState ps = psi_of_seed(ind.graph, fx.coloring, params, fr.seed);
    if (ps.bad_count != 0)
      throw std::logic_error("fixed seed misses a high-degree vertex despite ok precondition");

    gather_subgraph(sim, ind.graph, z_local, ind.to_parent, 0);
    InducedSubgraph zg = induced_subgraph(ind.graph, z_local);
    VertexSet i_in_z = greedy_mis(zg.graph);
    std::vector<int> i_global;
    for (int li : i_in_z.members)
      i_global.push_back(ind.to_parent[zg.to_parent[li]]);
    sim.set_resident_words(0, i_global.size());
    charge_leader_broadcast(sim, "mis.membership");
    sim.set_resident_words(0, 0);

    // Members of I tell their neighbors; then everyone knows whether it is in
    // N+(I). H membership is a local degree test.
    {
      std::vector<Message> msgs;
      for (int v : i_global)
        for (int w : g.neighbors(v))
          if (active[w]) msgs.push_back(Message::words(v, w, 1));
      sim.deliver(std::move(msgs), "mis.notify");
    }

    std::vector<char> deactivate(n, 0);
    int h_size = 0;
    for (int lv = 0; lv < ind.graph.vertex_count(); ++lv)
      if (static_cast<uint64_t>(ind.graph.degree(lv)) >= params.degree_threshold) {
        deactivate[ind.to_parent[lv]] = 1;
        ++h_size;
      }
    for (int v : i_global) {
      deactivate[v] = 1;
      for (int w : g.neighbors(v))
        if (active[w]) deactivate[w] = 1;
    }
    {
      std::vector<Message> msgs;
      for (int v = 0; v < n; ++v)
        if (active[v] && deactivate[v])
          for (int w : g.neighbors(v))
            if (active[w] && !deactivate[w])
              msgs.push_back(Message::words(v, w, 1));
      sim.deliver(std::move(msgs), "deactivate.notify");
    }
    charge_degree_rounds(sim);

    for (int v = 0; v < n; ++v)
      if (deactivate[v]) active[v] = 0;
    for (int v : i_global) ruling.push_back(v);

    IterationStats st;
    st.delta = delta;
    st.f = params.f;
    st.threshold = params.degree_threshold;
    st.palette = fx.coloring.palette_size;
    st.coloring_iterations = fx.iterations;
    st.seed_bits = params.seed_bits();
    st.chunks = sched.chunks();
    st.z_size = z_local.size();
    st.z_edges = ps.sampled_edges;
    st.h_size = h_size;
    st.i_size = static_cast<int>(i_global.size());
    st.rounds = sim.transcript().total_rounds() - rounds_before;
    st.expected_psi = pre.expected_psi.str();
    res.per_iteration.push_back(std::move(st));
    ++res.iterations;

    delta = active_max_degree();
  }
  res.final_delta = delta;

  InducedSubgraph rem = induced_subgraph(g, active_set());
  FallbackResult fb = fallback_mis(sim, rem.graph, rem.to_parent, cfg);
  for (int li : fb.mis.members) ruling.push_back(rem.to_parent[li]);
  res.fallback = fb.stats;

  res.ruling_set = VertexSet::of(std::move(ruling));
  res.transcript = sim.transcript();
  res.total_rounds = res.transcript.total_rounds();
  res.verified = is_two_ruling_set(g, res.ruling_set);
  return res;
}

}  // namespace rset
