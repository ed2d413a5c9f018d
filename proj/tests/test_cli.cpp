#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "rset/graph.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("RSET_CLI");
  REQUIRE_MESSAGE(p != nullptr, "RSET_CLI must point at the rset binary");
  return p;
}

std::string tmp_dir() {
  const char* p = std::getenv("RSET_TMP");
  return p ? p : "/tmp";
}

CliResult run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return CliResult{WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("generate: grid arithmetic and reproducibility") {
  std::string dir = tmp_dir();
  std::string grid = dir + "/cli_grid.edges";
  CHECK(run_cli("generate grid --rows 3 --cols 3 -o " + grid).exit_code == 0);
  rset::LoadedGraph lg = rset::load_edge_list_file(grid);
  CHECK(lg.graph.vertex_count() == 9);
  CHECK(lg.graph.edge_count() == 12);

  std::string star = dir + "/cli_star.edges";
  CHECK(run_cli("generate star-cluster --hubs 2 --degree 7 -o " + star)
            .exit_code == 0);
  CHECK(rset::max_degree(rset::load_edge_list_file(star).graph) == 7);

  std::string a = dir + "/cli_a.edges", b = dir + "/cli_b.edges";
  run_cli("generate gnp-capped --n 40 --p 0.2 --gen-seed 9 -o " + a);
  run_cli("generate gnp-capped --n 40 --p 0.2 --gen-seed 9 -o " + b);
  CHECK(slurp(a) == slurp(b));
  std::string c = dir + "/cli_c.edges";
  run_cli("generate gnp-capped --n 40 --p 0.2 --gen-seed 10 -o " + c);
  CHECK(slurp(a) != slurp(c));

  CHECK(run_cli("generate mystery -o " + dir + "/x.edges").exit_code == 64);
}

TEST_CASE("run: edgeless graph and byte-identical reruns") {
  std::string dir = tmp_dir();
  std::string g = dir + "/cli_edgeless.edges";
  write_file(g, "a\nb\nc\n");
  CliResult r = run_cli("run " + g + " --json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"ruling_set_size\": 3") != std::string::npos);
  CHECK(r.out.find("\"iterations\": 0") != std::string::npos);
  CHECK(r.out.find("\"verified\": true") != std::string::npos);

  std::string star = dir + "/cli_run_star.edges";
  run_cli("generate star-cluster --hubs 3 --degree 24 -o " + star);
  std::string flags = " --degree-floor-const 0 --k-override 3 --json --trace " +
                      dir + "/t1 --output-set " + dir + "/s1";
  CliResult r1 = run_cli("run " + star + flags);
  std::string flags2 = " --degree-floor-const 0 --k-override 3 --json --trace " +
                       dir + "/t2 --output-set " + dir + "/s2";
  CliResult r2 = run_cli("run " + star + flags2);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  CHECK(slurp(dir + "/t1") == slurp(dir + "/t2"));
  CHECK(slurp(dir + "/s1") == slurp(dir + "/s2"));

  // the emitted set passes verify
  CHECK(run_cli("verify " + star + " " + dir + "/s1").exit_code == 0);
}

TEST_CASE("verify: exit codes and violation reporting") {
  std::string dir = tmp_dir();
  std::string star = dir + "/cli_k13.edges";
  write_file(star, "c l1\nc l2\nc l3\n");
  std::string center = dir + "/cli_center.set";
  write_file(center, "c\n");
  CHECK(run_cli("verify " + star + " " + center).exit_code == 0);

  std::string p5 = dir + "/cli_p5.edges";
  write_file(p5, "0 1\n1 2\n2 3\n3 4\n");
  std::string s0 = dir + "/cli_s0.set";
  write_file(s0, "0\n");
  CliResult far = run_cli("verify " + p5 + " " + s0);
  CHECK(far.exit_code == 1);
  CHECK(far.out.find("violating_vertex=4") != std::string::npos);

  std::string both = dir + "/cli_both.set";
  write_file(both, "0\n1\n");
  CliResult dep = run_cli("verify " + p5 + " " + both);
  CHECK(dep.exit_code == 1);
  CHECK(dep.out.find("violating_edge=0 1") != std::string::npos);

  CHECK(run_cli("verify " + dir + "/missing.edges " + s0).exit_code == 64);
  std::string selfloop = dir + "/cli_self.edges";
  write_file(selfloop, "x x\n");
  CHECK(run_cli("verify " + selfloop + " " + s0).exit_code == 64);
}

TEST_CASE("run: precondition and capacity exit codes") {
  std::string dir = tmp_dir();
  std::string biclique = dir + "/cli_k1717.edges";
  std::ostringstream ss;
  for (int u = 0; u < 17; ++u)
    for (int v = 17; v < 34; ++v) ss << "u" << u << " v" << v << "\n";
  write_file(biclique, ss.str());
  CHECK(run_cli("run " + biclique +
                " --degree-floor-const 0 --k-override 2 --json")
            .exit_code == 2);

  // default k on a loop instance is astronomically large: budget, exit 2
  std::string star = dir + "/cli_budget_star.edges";
  run_cli("generate star-cluster --hubs 3 --degree 24 -o " + star);
  CHECK(run_cli("run " + star + " --degree-floor-const 0 --json").exit_code == 2);

  // tiny clique-mode memory: the Z-gather cannot fit, exit 3
  CHECK(run_cli("run " + star +
                " --mode clique --degree-floor-const 0 --k-override 3 "
                "--mem-words 4 --json")
            .exit_code == 3);
}
