// End-to-end checks of the vted binary. The binary and data paths come from
// the VTED_BIN / VTED_DATA environment variables (set by ctest).

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

std::string binary() {
  const char* bin = std::getenv("VTED_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

std::string data() {
  const char* dir = std::getenv("VTED_DATA");
  REQUIRE(dir != nullptr);
  return dir;
}

CommandResult run(const std::string& args) {
  CommandResult result;
  std::string command = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// drops the wall_ms line, the only part allowed to differ between runs
std::string without_wall_ms(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("wall_ms") == std::string::npos) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("ted on identical trees") {
  std::string expr = data() + "/expressions/poly_product.expr";
  CommandResult r = run("ted " + expr + " " + expr + " --mode ordered");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("distance: 0") != std::string::npos);
}

TEST_CASE("ted rejects trees with variables") {
  std::string expr = data() + "/expressions/poly_product_vars.expr";
  CommandResult r = run("ted " + expr + " " + expr + " --mode ordered");
  CHECK(r.exit_code == 1);
}

TEST_CASE("unordered ted sees through commuted operands") {
  std::string f = data() + "/expressions/poly_product.expr";
  std::string h = data() + "/expressions/poly_product_flipped.expr";
  CHECK(run("ted " + f + " " + h + " --mode unordered").output.find(
            "distance: 0") != std::string::npos);
  CHECK(run("ted " + f + " " + h + " --mode ordered").output.find(
            "distance: 2") != std::string::npos);
}

TEST_CASE("vted reports the worked-example distance") {
  std::string a = data() + "/trees/var_pair_a.tree";
  std::string b = data() + "/trees/var_pair_b.tree";
  for (const char* mode : {"ordered", "unordered"}) {
    CommandResult r = run("vted " + a + " " + b + " --mode " + mode);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("distance: 5") != std::string::npos);
  }
}

TEST_CASE("vted threshold decision") {
  std::string a = data() + "/trees/subst_pair_a.tree";
  std::string b = data() + "/trees/subst_pair_b.tree";
  CommandResult full = run("vted " + a + " " + b + " --mode unordered");
  CHECK(full.output.find("distance: 2") != std::string::npos);
  CHECK(run("vted " + a + " " + b + " --mode unordered --threshold 2")
            .output.find("answer: yes") != std::string::npos);
  CHECK(run("vted " + a + " " + b + " --mode unordered --threshold 1")
            .output.find("answer: no") != std::string::npos);
}

TEST_CASE("vted json output is byte-stable apart from wall_ms") {
  std::string a = data() + "/trees/subst_pair_a.tree";
  std::string b = data() + "/trees/subst_pair_b.tree";
  std::string args =
      "vted " + a + " " + b + " --mode unordered --witness --format json";
  CommandResult r1 = run(args);
  CommandResult r2 = run(args);
  CHECK(r1.exit_code == 0);
  CHECK(without_wall_ms(r1.output) == without_wall_ms(r2.output));
  // frozen schema: keys in emission order
  for (const char* key : {"\"command\"", "\"mode\"", "\"distance\"",
                          "\"optimal\"", "\"substitutions\"", "\"theta\"",
                          "\"witness\"", "\"wall_ms\""})
    CHECK(r1.output.find(key) != std::string::npos);
  CHECK(r1.output.find("\"distance\": 2.0") != std::string::npos);
}

TEST_CASE("iso subcommand") {
  std::string a = data() + "/trees/var_pair_a.tree";
  std::string b = data() + "/trees/var_pair_b.tree";
  CHECK(run("iso " + a + " " + a + " --mode ordered").output.find(
            "isomorphic: yes") != std::string::npos);
  CHECK(run("iso " + a + " " + b + " --mode ordered").output.find(
            "isomorphic: no") != std::string::npos);
  CHECK(run("iso " + a + " " + b + " --mode unordered").output.find(
            "isomorphic: no") != std::string::npos);
}

TEST_CASE("system distances with witness pairings") {
  std::string a = data() + "/systems/small_a.ode";
  std::string b = data() + "/systems/small_b.ode";
  CommandResult d = run("sysdist " + a + " " + b + " --format json");
  CHECK(d.exit_code == 0);
  CHECK(d.output.find("\"distance\": 3.0") != std::string::npos);
  CHECK(without_wall_ms(d.output).find("[\n      1,\n      3\n    ]") !=
        std::string::npos);
  CommandResult p = run("syspdist " + a + " " + b + " --format json");
  CHECK(p.exit_code == 0);
  CHECK(p.output.find("\"distance\": 3.0") != std::string::npos);
}

TEST_CASE("budget exhaustion exits with code 2") {
  std::string a = data() + "/systems/synth_a.ode";
  std::string b = data() + "/systems/synth_b.ode";
  CommandResult r =
      run("syspdist " + a + " " + b + " --budget 1000 --format json");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("\"optimal\": false") != std::string::npos);
}

TEST_CASE("validate-cost") {
  CHECK(run("validate-cost " + data() + "/costs/unit.cost").exit_code == 0);
  CHECK(run("validate-cost " + data() + "/costs/skewed.cost").exit_code == 0);
  CommandResult bad = run("validate-cost " + data() + "/costs/bad_triangle.cost");
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("triangle") != std::string::npos);
}

TEST_CASE("distance subcommands refuse a non-metric cost model") {
  std::string f = data() + "/expressions/poly_product.expr";
  CommandResult r = run("ted " + f + " " + f + " --mode ordered --cost " +
                        data() + "/costs/bad_triangle.cost");
  CHECK(r.exit_code == 3);
}

TEST_CASE("custom cost models feed through") {
  std::string f = data() + "/expressions/poly_product.expr";
  std::string h = data() + "/expressions/poly_product_flipped.expr";
  CommandResult r = run("ted " + f + " " + h + " --mode ordered --cost " +
                        data() + "/costs/skewed.cost");
  CHECK(r.exit_code == 0);
  // plus<->times swaps cost 0.5 each under the skewed model
  CHECK(r.output.find("distance: 1") != std::string::npos);
}

TEST_CASE("reduce-clique emits gadget trees and the threshold") {
  CommandResult r =
      run("reduce-clique " + data() + "/graphs/diamond.graph 3 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"threshold\": 8.0") != std::string::npos);
  CHECK(r.output.find("X1_1") != std::string::npos);
  CHECK(r.output.find("Y1_2") != std::string::npos);
}

TEST_CASE("gadget-gi emits a parseable graph") {
  std::string a = data() + "/trees/subst_pair_a.tree";
  CommandResult r = run("gadget-gi " + a);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("$root|a") != std::string::npos);
  CHECK(r.output.find("$a") != std::string::npos);
  CommandResult b = run("gadget-gi " + a + " --bounded");
  CHECK(b.exit_code == 0);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("vted /nonexistent.expr /nonexistent.expr --mode ordered")
            .exit_code == 1);
  CHECK(run("nonsense-subcommand").exit_code != 0);
}
