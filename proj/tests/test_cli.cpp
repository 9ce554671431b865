// End-to-end checks of the command-line binary named by $REMONO_BIN: exit
// codes, machine-format JSON with round-trippable embedded documents, and
// byte-identical reruns.

#include "remono/graph.hpp"
#include "remono/io.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

std::string binary() {
  const char* bin = std::getenv("REMONO_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "REMONO_BIN must point at the binary under test");
  return bin;
}

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = "'" + binary() + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Documents shared by the cases, written once into a scratch directory.
class Docs {
 public:
  Docs() {
    char tmpl[] = "/tmp/remono_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    dir_ = tmpl;
    write("c5.graph", "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    write("k3.graph", "p 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    write("bad.graph", "p 3 1\ne 0 2\n");
    write("p45.dist", "dist 4/5 1/5\n");
    write("u2.dist", "dist 1/2 1/2\n");
    write("lex.cone",
          "cone 2\ncell\ngt 1 0\ncell\nge 0 1\nge 1 0\nge -1 0\n");
    write("water.rxn", "species H2 O2 H2O\n2 H2 + O2 -> 2 H2O\n");
    write("prod25.graph",
          remono::format_graph_text(remono::disjunctive_product(remono::Graph::cycle(5),
                                                                remono::Graph::cycle(5))));
  }
  std::string path(const std::string& name) const { return dir_ + "/" + name; }

 private:
  void write(const std::string& name, const std::string& text) {
    std::ofstream f(dir_ + "/" + name);
    f << text;
    REQUIRE(f.good());
  }
  std::string dir_;
};

const Docs& docs() {
  static Docs d;
  return d;
}

}  // namespace

TEST_CASE("verdicts map onto exit codes") {
  // C5 converts to K2-ish things... here: K3 -> C5 homomorphism exists
  // (3-coloring of the pentagon viewed from the target side).
  CHECK(run_cli("graph hom " + docs().path("c5.graph") + " " + docs().path("k3.graph")).code ==
        0);
  // No homomorphism K3 -> C5.
  CHECK(run_cli("graph hom " + docs().path("k3.graph") + " " + docs().path("c5.graph")).code ==
        1);
  // Exhausted budget reports Unknown: one node is not enough to place 25
  // vertices, and no cheap bound separates the graph from itself.
  CHECK(run_cli("--budget-nodes 1 graph hom " + docs().path("prod25.graph") + " " +
                docs().path("prod25.graph"))
            .code == 2);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run_cli("graph hom " + docs().path("c5.graph"), true).code == 64);  // missing arg
  CHECK(run_cli("--no-such-flag graph invariants " + docs().path("c5.graph"), true).code == 64);
  CHECK(run_cli("cone contains " + docs().path("lex.cone") + " --point 1,x", true).code == 64);
  CHECK(run_cli("--format yaml graph invariants " + docs().path("c5.graph"), true).code == 64);
  CHECK(run_cli("--tol 0 graph invariants " + docs().path("c5.graph"), true).code == 64);
}

TEST_CASE("malformed inputs exit 65 with file and line") {
  RunResult missing = run_cli("graph invariants /nonexistent/q.graph", true);
  CHECK(missing.code == 65);
  CHECK(missing.out.find("/nonexistent/q.graph") != std::string::npos);

  RunResult bad = run_cli("graph invariants " + docs().path("bad.graph"), true);
  CHECK(bad.code == 65);
  CHECK(bad.out.find("bad.graph:2") != std::string::npos);
}

TEST_CASE("machine output is valid JSON with round-trippable documents") {
  RunResult r = run_cli("--format machine graph product " + docs().path("c5.graph") + " " +
                        docs().path("k3.graph"));
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc.contains("order"));
  CHECK(doc["order"].get<int>() == 15);
  REQUIRE(doc.contains("graph"));
  remono::GraphParseError gerr;
  auto parsed = remono::parse_graph_text(doc["graph"].get<std::string>(), &gerr);
  REQUIRE(parsed.has_value());
  CHECK(parsed->order() == 15);

  RunResult close = run_cli("--format machine cone close " + docs().path("lex.cone"));
  REQUIRE(close.code == 0);
  json cdoc = json::parse(close.out);
  REQUIRE(cdoc.contains("cone"));
  remono::DocParseError cerr;
  auto cone = remono::parse_cone_text(cdoc["cone"].get<std::string>(), &cerr);
  REQUIRE(cone.has_value());
  CHECK(cone->dim == 2);
}

TEST_CASE("floating values carry a tolerance field") {
  RunResult r = run_cli("--format machine graph invariants " + docs().path("c5.graph"));
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc.contains("orthogonality"));
  CHECK(doc["orthogonality"].contains("tol"));
  CHECK(doc["orthogonality"].contains("lower"));
  CHECK(doc["orthogonality"].contains("upper"));
}

TEST_CASE("reruns are byte-identical") {
  const std::string cmd = "--format machine graph invariants " + docs().path("c5.graph");
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::string cmd2 = "--format machine rxn laws " + docs().path("water.rxn");
  CHECK(run_cli(cmd2).out == run_cli(cmd2).out);
}

TEST_CASE("distribution order and rates through the front end") {
  // The fair coin converts to the biased one, not conversely.
  CHECK(run_cli("major leq " + docs().path("u2.dist") + " " + docs().path("p45.dist")).code ==
        0);
  CHECK(run_cli("major leq " + docs().path("p45.dist") + " " + docs().path("u2.dist")).code ==
        1);

  RunResult rate = run_cli("--format machine major rate " + docs().path("p45.dist") + " " +
                           docs().path("u2.dist"));
  REQUIRE(rate.code == 0);
  json doc = json::parse(rate.out);
  CHECK_FALSE(doc["infinite"].get<bool>());
  CHECK(doc["upper"].get<double>() == doctest::Approx(0.321928).epsilon(1e-4));
  CHECK(doc.contains("tol"));
}

TEST_CASE("cone rate accepts both spellings of its vector flags") {
  const std::string base = "--format machine cone rate " + docs().path("lex.cone");
  RunResult spelled = run_cli(base + " --from 2,9 --to 1,-4");
  RunResult aliased = run_cli(base + " --x 2,9 --y 1,-4");
  REQUIRE(spelled.code == 0);
  CHECK(spelled.out == aliased.out);
  json doc = json::parse(spelled.out);
  CHECK(doc["rmax"].get<std::string>() == "2");
}

TEST_CASE("reachability and conserved laws through the front end") {
  CHECK(run_cli("rxn reach " + docs().path("water.rxn") +
                " --from '2 H2 + O2' --to '2 H2O'")
            .code == 0);
  CHECK(run_cli("rxn reach " + docs().path("water.rxn") +
                " --from '2 H2O' --to '2 H2 + O2'")
            .code == 1);

  RunResult laws = run_cli("--format machine rxn laws " + docs().path("water.rxn"));
  REQUIRE(laws.code == 0);
  json doc = json::parse(laws.out);
  CHECK(doc["laws"].size() == 2);  // 3 species, 1 independent reaction
}

TEST_CASE("numerical semigroup normalization through the front end") {
  RunResult r = run_cli("--format machine numsg gaps --generators 9,15");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["divisor"].get<int>() == 3);
  CHECK(doc["normalized"].get<std::vector<int>>() == std::vector<int>{3, 5});
  CHECK(doc["frobenius"].get<int>() == 7);
  CHECK(doc["gaps"].get<std::vector<int>>() == std::vector<int>{1, 2, 4, 7});
}
