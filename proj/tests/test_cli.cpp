#include <doctest.h>

#include "cli.hpp"
#include "kscert/dimacs.hpp"
#include "kscert/rayset_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = kscert::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kscert_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli rayset") {
  const Run r18 = run({"rayset", "rays18"});
  CHECK(r18.status == 0);
  CHECK(std::count(r18.out.begin(), r18.out.end(), '\n') == 19);
  CHECK(kscert::read_rayset(r18.out).size() == 18);

  const Run r24 = run({"rayset", "24cell"});
  CHECK(r24.status == 0);
  CHECK(kscert::read_rayset(r24.out).size() == 12);

  const Run bad = run({"rayset", "nosuch"});
  CHECK(bad.status != 0);
  CHECK(contains(bad.err, "unknown ray set"));

  CHECK(run({}).status != 0);
  CHECK(run({"frobnicate"}).status != 0);
}

TEST_CASE("cli files written are re-readable") {
  const auto rays = scratch("peres.rays");
  CHECK(run({"rayset", "peres24", "--out", rays.string()}).status == 0);
  const auto cover = scratch("peres.cover");
  CHECK(run({"bases", "--rays", rays.string(), "--out", cover.string()}).status == 0);
  const Run verify = run({"verify", "--rays", rays.string(), "--cover", cover.string()});
  CHECK(verify.status == 0);
  CHECK(contains(verify.out, "summary: 24 contexts, incidence all 4, parity certificate INVALID"));

  const auto cnf = scratch("peres.cnf");
  CHECK(run({"cnf", "--rays", rays.string(), "--cover", cover.string(), "--out", cnf.string()}).status == 0);
  const auto parsed = kscert::parse_dimacs(slurp(cnf));
  CHECK(parsed.num_vars == 24);
  CHECK(parsed.clauses.size() == 24 * 7);

  // Same cover via file and built-in yields the same input digest.
  const Run a = run({"search", "--rays", rays.string(), "--cover", cover.string()});
  const Run b = run({"search", "--cover", "peres24-ks"});
  CHECK(a.out.substr(a.out.find("# inputs")) == b.out.substr(b.out.find("# inputs")));
}

TEST_CASE("cli verify") {
  const Run ks = run({"verify", "--cover", "rays18-ks"});
  CHECK(ks.status == 0);
  CHECK(contains(ks.out, "summary: 9 contexts, incidence all 2, parity certificate VALID"));

  const Run gks = run({"verify", "--cover", "24cell-gks"});
  CHECK(gks.status == 0);
  CHECK(contains(gks.out, "summary: 3 POVMs complete (exact), parity certificate VALID"));

  // Tetrad T1+T5+T7 with ray 23 swapped for 22.
  const auto cover = scratch("corrupt.cover");
  std::ofstream(cover) << "kind povm\nweight 1/3\n"
                          "ctx A 2 3 6 8 9 11 14 15 17 19 21 22\n"
                          "ctx B 2 4 6 7 9 12 13 15 18 19 21 22\n"
                          "ctx C 3 4 7 8 11 12 13 14 17 18 22 23\n";
  const Run bad = run({"verify", "--rays", "rays18", "--cover", cover.string()});
  CHECK(bad.status == 1);
  CHECK(contains(bad.out, "ctx A FAILED"));
  CHECK(contains(bad.out, "ctx C ok"));
  CHECK(contains(bad.out, "weight*sum - I"));
  CHECK(contains(bad.out, "summary: verification FAILED (1 of 3 contexts)"));

  const auto unknown = scratch("unknown.cover");
  std::ofstream(unknown) << "kind basis\nctx T1 1 2 3 4\n";
  const Run missing = run({"verify", "--rays", "rays18", "--cover", unknown.string()});
  CHECK(missing.status == 1);
  CHECK(contains(missing.err, "unknown ray 1"));

  CHECK(run({"verify", "--cover", unknown.string()}).status == 1);  // file needs --rays
  CHECK(run({"verify"}).status == 1);
}

TEST_CASE("cli search") {
  const Run r = run({"search", "--cover", "rays18-ks", "--oracle", "--expect", "unsat"});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "status: UNSAT"));
  CHECK(contains(r.out, "oracle: UNSAT (262144 assignments, 0 witnesses)"));

  const Run sat = run({"search", "--rays", "24cell"});
  CHECK(sat.status == 0);
  CHECK(contains(sat.out, "status: SAT\n"));
  CHECK(contains(sat.out, "witness: [1 5 9]"));
  CHECK(run({"search", "--rays", "24cell", "--expect", "unsat"}).status == 1);

  const Run parallel = run({"search", "--cover", "rays18-gks", "--jobs", "2"});
  CHECK(contains(parallel.out, "status: UNSAT"));
  CHECK(run({"search", "--cover", "rays18-ks", "--jobs", "0"}).status != 0);
}

TEST_CASE("cli reports are byte-stable") {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"critical", "--cover", "rays18-ks"}, {"search", "--cover", "peres24-ks"},
        {"verify", "--cover", "hexagon-gks"}, {"spin", "--n", "3", "--seed", "5", "--search"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("cli critical") {
  const Run r = run({"critical", "--cover", "rays18-ks"});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "collapses: 18/18\nverdict: CRITICAL\n"));
  const Run shrink = run({"critical", "--cover", "rays18-ks", "--semantics", "shrink"});
  CHECK(contains(shrink.out, "semantics: shrink-context"));
  CHECK(contains(shrink.out, "verdict: NOT CRITICAL"));
  CHECK(run({"critical", "--cover", "rays18-ks", "--semantics", "maybe"}).status != 0);
}

TEST_CASE("cli cnf") {
  const Run r = run({"cnf", "--cover", "rays18-ks"});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "p cnf 18 63\n"));
  CHECK(run({"cnf", "--cover", "rays18-gks", "--check"}).out.find("summary: consistent") != std::string::npos);

  const auto model = scratch("pair.model");
  std::ofstream(model) << "s SATISFIABLE\nv 1 -2 -3 -4 5 -6 -7 -8 9 -10 -11 -12 0\n";
  const Run ok = run({"cnf", "--rays", "24cell", "--model", model.string()});
  CHECK(ok.status == 0);
  CHECK(contains(ok.out, "model: VALID"));
  std::ofstream(model) << "v -1 -2 -3 -4 -5 -6 -7 -8 -9 -10 -11 -12 0\n";
  const Run zero = run({"cnf", "--rays", "24cell", "--model", model.string()});
  CHECK(zero.status == 1);
  CHECK(contains(zero.out, "model: INVALID"));
}

TEST_CASE("cli spin and params") {
  const Run spin = run({"spin", "--j", "1/2", "--planar", "3", "--r", "2", "--search"});
  CHECK(spin.status == 0);
  CHECK(contains(spin.out, "N: 3\nM: 2\nparity_ok: yes\n"));
  CHECK(contains(spin.out, "certificate VALID"));
  CHECK(contains(spin.out, "search: UNSAT"));

  const auto prefix = scratch("spin1").string();
  CHECK(run({"spin", "--j", "1", "--n", "3", "--seed", "9", "--out", prefix}).status == 0);
  const Run verify = run({"verify", "--rays", prefix + ".rays", "--cover", prefix + ".cover"});
  CHECK(verify.status == 0);
  CHECK(contains(verify.out, "3 POVMs complete (tolerance"));
  const Run again = run({"spin", "--j", "1", "--dirs", prefix + ".dirs", "--r", "2"});
  CHECK(again.status == 0);
  CHECK(run({"spin", "--j", "1"}).status == 1);
  CHECK(run({"spin", "--j", "2/3", "--n", "3"}).status == 1);

  const Run params = run({"params", "10"});
  CHECK(params.status == 0);
  CHECK(contains(params.out, "\n3 2 3 2\n"));
  CHECK_FALSE(contains(params.out, "\n4 2 "));
  CHECK(run({"params", "1"}).status == 1);
}
