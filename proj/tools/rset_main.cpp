// rset: generate graphs, run the deterministic 2-ruling set algorithm under a
// simulated model, and verify output sets.
//
// Exit codes: 0 ok, 1 verification failed, 2 derandomization precondition or
// enumeration budget, 3 model capacity/bandwidth violation, 64 parse/usage.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rset/errors.hpp"
#include "rset/generate.hpp"
#include "rset/graph.hpp"
#include "rset/report.hpp"
#include "rset/ruling.hpp"

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitModel = 3;
constexpr int kExitParse = 64;

rset::Rational parse_epsilon(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      int num = std::stoi(text.substr(0, slash));
      int den = std::stoi(text.substr(slash + 1));
      return rset::Rational{num, den};
    }
    // Decimal input: snap to a denominator of at most 1000.
    double v = std::stod(text);
    if (!(v > 0.0 && v <= 1.0)) throw std::out_of_range("range");
    int best_num = 1, best_den = 1;
    double best_err = 1e9;
    for (int den = 1; den <= 1000; ++den) {
      int num = static_cast<int>(v * den + 0.5);
      if (num < 1 || num > den) continue;
      double err = std::abs(static_cast<double>(num) / den - v);
      if (err < best_err - 1e-15) {
        best_err = err;
        best_num = num;
        best_den = den;
      }
      if (best_err < 1e-12) break;
    }
    return rset::Rational{best_num, best_den};
  } catch (const std::exception&) {
    throw rset::ParseError("cannot parse epsilon '" + text + "'");
  }
}

int cmd_generate(const std::string& kind, int n, double p, int cap, int degree,
                 int hubs, int rows, int cols, uint64_t gen_seed,
                 const std::string& output) {
  rset::Graph g;
  if (kind == "gnp-capped") {
    g = rset::generate_gnp_capped(n, p, cap, gen_seed);
  } else if (kind == "regular-ish") {
    g = rset::generate_regular_ish(n, degree, gen_seed);
  } else if (kind == "star-cluster") {
    g = rset::generate_star_cluster(hubs, degree);
  } else if (kind == "grid") {
    g = rset::generate_grid(rows, cols);
  } else {
    throw rset::ParseError("unknown graph kind '" + kind + "'");
  }
  std::vector<std::string> labels(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) labels[v] = std::to_string(v);
  std::ofstream out(output);
  if (!out) throw rset::ParseError("cannot open output file: " + output);
  rset::save_edge_list(out, g, labels);
  std::cerr << "wrote " << g.vertex_count() << " vertices, " << g.edge_count()
            << " edges to " << output << "\n";
  return 0;
}

int cmd_run(const std::string& graph_path, const rset::RulingConfig& cfg,
            bool json_output, const std::string& trace_path,
            const std::string& set_path) {
  rset::LoadedGraph lg = rset::load_edge_list_file(graph_path);
  rset::RulingSetResult res = rset::deterministic_two_ruling_set(lg.graph, cfg);
  if (!trace_path.empty()) {
    std::ofstream t(trace_path);
    if (!t) throw rset::ParseError("cannot open trace file: " + trace_path);
    t << rset::render_trace(res);
  }
  if (!set_path.empty()) {
    std::ofstream s(set_path);
    if (!s) throw rset::ParseError("cannot open set file: " + set_path);
    rset::save_vertex_set(s, res.ruling_set, lg.labels);
  }
  std::cout << (json_output ? rset::render_report_json(res, cfg.mode)
                            : rset::render_report_text(res, cfg.mode));
  return res.verified ? 0 : kExitVerify;
}

int cmd_verify(const std::string& graph_path, const std::string& set_path) {
  rset::LoadedGraph lg = rset::load_edge_list_file(graph_path);
  std::ifstream sf(set_path);
  if (!sf) throw rset::ParseError("cannot open set file: " + set_path);
  rset::VertexSet s = rset::load_vertex_set(sf, lg);
  auto violation = rset::two_ruling_violation(lg.graph, s);
  auto label = [&](int v) { return lg.labels[v]; };
  if (!violation) {
    std::cout << "independent=1\nruled=1\n";
    return 0;
  }
  if (violation->kind == rset::TwoRulingViolation::NotIndependent) {
    std::cout << "independent=0\nruled=?\nviolating_edge=" << label(violation->u)
              << " " << label(violation->v) << "\n";
  } else {
    std::cout << "independent=1\nruled=0\nviolating_vertex="
              << label(violation->u) << "\n";
  }
  return kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic 2-ruling sets in simulated MPC / Congested Clique"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph in edge-list format");
  std::string kind, gen_out;
  int gen_n = 16, gen_cap = 1 << 30, gen_degree = 3, gen_hubs = 2;
  int gen_rows = 3, gen_cols = 3;
  double gen_p = 0.1;
  uint64_t gen_seed = 1;
  gen->add_option("kind", kind, "gnp-capped | regular-ish | star-cluster | grid")
      ->required();
  gen->add_option("-o,--output", gen_out, "output path")->required();
  gen->add_option("--n", gen_n, "vertex count (gnp-capped, regular-ish)");
  gen->add_option("--p", gen_p, "edge probability (gnp-capped)");
  gen->add_option("--max-degree", gen_cap, "degree cap (gnp-capped)");
  gen->add_option("--degree", gen_degree, "degree (regular-ish, star-cluster)");
  gen->add_option("--hubs", gen_hubs, "hub count (star-cluster)");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--gen-seed", gen_seed, "64-bit generator seed");

  // run
  auto* run = app.add_subcommand("run", "run the 2-ruling set algorithm");
  std::string run_graph, run_mode = "mpc", run_eps = "1/3", run_fallback = "gather";
  std::string run_trace, run_set;
  double run_c = 1.0;
  std::optional<int> run_k, run_chunk_bits;
  std::optional<uint64_t> run_mem;
  int run_wexp = 4, run_mem_const = 4, run_lenzen = 2, run_budget = 24;
  double run_floor_const = 1.0;
  bool run_json = false;
  run->add_option("graph", run_graph, "edge-list file")->required();
  run->add_option("--mode", run_mode, "mpc | clique")
      ->check(CLI::IsMember({"mpc", "clique"}));
  run->add_option("--epsilon", run_eps, "threshold exponent, e.g. 1/3");
  run->add_option("--c", run_c, "confidence constant");
  run->add_option("--k-override", run_k, "independence degree override");
  run->add_option("--w-exponent", run_wexp, "W = n^this (default 4)");
  run->add_option("--chunk-bits", run_chunk_bits,
                  "seed bits fixed per chunk (default floor(log2 n))");
  run->add_option("--degree-floor-const", run_floor_const,
                  "c_loop in max(16, ceil(log2^4 n) * c_loop)");
  run->add_option("--fallback", run_fallback, "gather | sweep")
      ->check(CLI::IsMember({"gather", "sweep"}));
  run->add_option("--budget-log2", run_budget, "enumeration budget exponent");
  run->add_option("--mem-const", run_mem_const, "S = this * n * ceil(log2 n)");
  run->add_option("--mem-words", run_mem, "override S in words");
  run->add_option("--lenzen-rounds", run_lenzen, "CongClique routed-transfer cost");
  run->add_option("--trace", run_trace, "dump transcript and derand trace here");
  run->add_option("--output-set", run_set, "write the ruling set here");
  run->add_flag("--json", run_json, "emit the report as JSON");

  // verify
  auto* ver = app.add_subcommand("verify", "check a 2-ruling set");
  std::string ver_graph, ver_set;
  ver->add_option("graph", ver_graph, "edge-list file")->required();
  ver->add_option("set", ver_set, "set file, one vertex per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (gen->parsed())
      return cmd_generate(kind, gen_n, gen_p, gen_cap, gen_degree, gen_hubs,
                          gen_rows, gen_cols, gen_seed, gen_out);
    if (run->parsed()) {
      rset::RulingConfig cfg;
      cfg.mode = run_mode == "mpc" ? rset::SimMode::MpcLinear
                                   : rset::SimMode::CongClique;
      cfg.sampler.epsilon = parse_epsilon(run_eps);
      cfg.sampler.confidence = run_c;
      cfg.sampler.k_override = run_k;
      cfg.sampler.w_exponent = run_wexp;
      cfg.sampler.budget_log2 = run_budget;
      cfg.chunk_bits = run_chunk_bits;
      cfg.degree_floor_const = run_floor_const;
      cfg.fallback = run_fallback == "gather" ? rset::RulingConfig::Fallback::Gather
                                              : rset::RulingConfig::Fallback::Sweep;
      cfg.memory_constant = run_mem_const;
      cfg.memory_words = run_mem;
      cfg.lenzen_rounds = run_lenzen;
      return cmd_run(run_graph, cfg, run_json, run_trace, run_set);
    }
    if (ver->parsed()) return cmd_verify(ver_graph, ver_set);
  } catch (const rset::PreconditionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const rset::EnumerationBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const rset::DegenerateGraph& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const rset::CapacityViolation& e) {
    std::cerr << "error: " << e.what() << " (round " << e.round << ", machine "
              << e.machine << ", " << e.words << " words)\n";
    return kExitModel;
  } catch (const rset::BandwidthViolation& e) {
    std::cerr << "error: " << e.what() << " (round " << e.round << ", pair "
              << e.src << "->" << e.dst << ")\n";
    return kExitModel;
  } catch (const rset::CandidateOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const rset::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const rset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
