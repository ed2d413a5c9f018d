#include "rset/report.hpp"

#include <sstream>

#include <json.hpp>

namespace rset {

using nlohmann::json;  // std::map-backed: keys dump alphabetically

std::string mode_name(SimMode mode) {
  return mode == SimMode::MpcLinear ? "mpc" : "clique";
}

namespace {

json iteration_json(const IterationStats& st) {
  json j;
  j["chunks"] = st.chunks;
  j["coloring_iterations"] = st.coloring_iterations;
  j["delta"] = st.delta;
  j["expected_psi"] = st.expected_psi;
  j["f"] = st.f;
  j["h_size"] = st.h_size;
  j["i_size"] = st.i_size;
  j["palette"] = st.palette;
  j["rounds"] = st.rounds;
  j["seed_bits"] = st.seed_bits;
  j["threshold"] = st.threshold;
  j["z_edges"] = st.z_edges;
  j["z_size"] = st.z_size;
  return j;
}

json fallback_json(const FallbackStats& fb) {
  json j;
  j["mis_size"] = fb.mis_size;
  j["palette"] = fb.palette;
  j["rounds"] = fb.rounds;
  j["strategy"] = fb.strategy;
  j["switched"] = fb.switched;
  return j;
}

}  // namespace

std::string render_report_json(const RulingSetResult& res, SimMode mode) {
  json j;
  j["delta0"] = res.initial_delta;
  j["degree_floor"] = res.floor;
  j["fallback"] = fallback_json(res.fallback);
  j["final_delta"] = res.final_delta;
  j["iterations"] = res.iterations;
  j["mode"] = mode_name(mode);
  j["per_iteration"] = json::array();
  for (const auto& st : res.per_iteration)
    j["per_iteration"].push_back(iteration_json(st));
  j["ruling_set_size"] = res.ruling_set.size();
  j["total_rounds"] = res.total_rounds;
  j["verified"] = res.verified;
  return j.dump(2) + "\n";
}

std::string render_report_text(const RulingSetResult& res, SimMode mode) {
  std::ostringstream out;
  out << "mode=" << mode_name(mode) << "\n";
  out << "delta0=" << res.initial_delta << "\n";
  out << "degree_floor=" << res.floor << "\n";
  out << "iterations=" << res.iterations << "\n";
  for (const auto& st : res.per_iteration) {
    out << "iteration delta=" << st.delta << " f=" << st.f
        << " threshold=" << st.threshold << " palette=" << st.palette
        << " seed_bits=" << st.seed_bits << " chunks=" << st.chunks
        << " z_size=" << st.z_size << " z_edges=" << st.z_edges
        << " h_size=" << st.h_size << " i_size=" << st.i_size
        << " rounds=" << st.rounds << " expected_psi=" << st.expected_psi
        << "\n";
  }
  out << "final_delta=" << res.final_delta << "\n";
  out << "fallback_strategy=" << res.fallback.strategy << "\n";
  out << "fallback_switched=" << (res.fallback.switched ? 1 : 0) << "\n";
  out << "fallback_mis_size=" << res.fallback.mis_size << "\n";
  out << "fallback_rounds=" << res.fallback.rounds << "\n";
  out << "ruling_set_size=" << res.ruling_set.size() << "\n";
  out << "total_rounds=" << res.total_rounds << "\n";
  out << "verified=" << (res.verified ? 1 : 0) << "\n";
  return out.str();
}

std::string render_trace(const RulingSetResult& res) {
  std::ostringstream out;
  for (size_t t = 0; t < res.derand_traces.size(); ++t) {
    const FixTrace& tr = res.derand_traces[t];
    {
      json j;
      j["r"] = tr.r;
      j["root_sum"] = to_string(tr.root_sum);
      j["trace"] = t;
      j["type"] = "derand_root";
      out << j.dump() << "\n";
    }
    for (const ChunkDecision& c : tr.chunks) {
      json j;
      j["bits"] = json::array({c.bit_lo, c.bit_hi});
      j["chosen"] = c.chosen;
      j["chunk"] = c.index;
      json sums = json::array();
      for (const u128& s : c.sums) sums.push_back(to_string(s));
      j["sums"] = sums;
      j["trace"] = t;
      j["type"] = "derand_chunk";
      out << j.dump() << "\n";
    }
  }
  for (const RoundRecord& r : res.transcript.rounds) {
    json j;
    j["index"] = r.index;
    j["label"] = r.label;
    j["max_pair_words"] = r.max_pair_words;
    json sent = json::array(), recv = json::array(), mem = json::array();
    for (auto [m, w] : r.sent) sent.push_back(json::array({m, w}));
    for (auto [m, w] : r.received) recv.push_back(json::array({m, w}));
    for (auto [m, w] : r.memory) mem.push_back(json::array({m, w}));
    j["memory"] = mem;
    j["received"] = recv;
    j["routed"] = r.routed;
    j["sent"] = sent;
    j["type"] = "round";
    out << j.dump() << "\n";
  }
  {
    json j;
    j["total_rounds"] = res.transcript.total_rounds();
    j["total_words"] = res.transcript.total_words();
    j["type"] = "summary";
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string render_precondition(const PreconditionReport& rep) {
  json j;
  j["expected_edges"] = rep.expected_edges.str();
  j["expected_psi"] = rep.expected_psi.str();
  j["ok"] = rep.ok;
  j["seed_bits"] = rep.r;
  j["sum_prob_bad"] = rep.sum_prob_bad.str();
  j["sum_prob_uncovered"] = rep.sum_prob_uncovered.str();
  j["weight"] = to_string(rep.weight);
  return j.dump(2) + "\n";
}

}  // namespace rset
