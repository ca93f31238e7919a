#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdml/cli.hpp"
#include "spdml/dataset_io.hpp"

using namespace spdml;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spdml");
  std::ostringstream out, err;
  const int code = spdml::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("spdml_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: toygen, eval, mean, whiten, distmat") {
  TempDir dir;
  const std::string tr = dir / "tr.spdds", te = dir / "te.spdds";
  Run r = run_cli({"toygen", "--r", "3", "--train", "50", "--test", "500", "--mu-lo", "1", "--mu-hi", "6", "--seed", "7",
               "--out-train", tr, "--out-test", te});
  REQUIRE(r.code == 0);
  CHECK(dataset_read(tr).size() == 50);
  CHECK(dataset_read(te).size() == 500);
  CHECK(dataset_read(te).dim() == 6);

  for (const char* metric : {"euclid", "airm", "logeuclid"}) {
    r = run_cli({"eval", "--train", tr, "--test", te, "--metric", metric, "--ref", "identity"});
    REQUIRE(r.code == 0);
    const double acc = std::stod(r.out);
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
    CHECK(r.out.find('\n') == r.out.size() - 1);
  }

  const std::string mean = dir / "mean.spdm";
  r = run_cli({"mean", "--in", tr, "--out", mean});
  REQUIRE(r.code == 0);
  CHECK(matrix_read(mean).dim() == 6);
  r = run_cli({"eval", "--train", tr, "--test", te, "--metric", "logeuclid", "--ref", "file:" + mean});
  REQUIRE(r.code == 0);
  const Run via_mean = run_cli({"eval", "--train", tr, "--test", te, "--metric", "logeuclid", "--ref", "mean"});
  CHECK(via_mean.out == r.out);

  const std::string wh = dir / "wh.spdds";
  r = run_cli({"whiten", "--in", tr, "--out", wh, "--mean-out", dir / "wm.spdm"});
  REQUIRE(r.code == 0);
  CHECK(dataset_read(wh).size() == 50);

  r = run_cli({"distmat", "--data", tr, "--with", te, "--metric", "airm"});
  REQUIRE(r.code == 0);
  std::istringstream rows(r.out);
  std::string line;
  int nrows = 0;
  while (std::getline(rows, line)) {
    ++nrows;
    CHECK(std::count(line.begin(), line.end(), ',') == 49);
  }
  CHECK(nrows == 500);

  r = run_cli({"eval", "--train", tr, "--test", te, "--metric", "cosine"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  r = run_cli({"eval", "--train", tr, "--test", te, "--metric", "logeuclid", "--ref", "file:" + (dir / "nope.spdm")});
  CHECK(r.code == 1);
  CHECK(r.err.find("nope.spdm") != std::string::npos);
}

TEST_CASE("cli: learn with trace") {
  TempDir dir;
  const std::string tr = dir / "tr.spdds", te = dir / "te.spdds";
  REQUIRE(run_cli({"toygen", "--train", "20", "--test", "4", "--seed", "3", "--out-train", tr, "--out-test", te}).code == 0);
  const std::string g = dir / "g.spdm", trace = dir / "trace.csv";
  const Run r = run_cli({"learn", "--train", tr, "--max-iters", "15", "--out", g, "--trace", trace});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("f_learned") != std::string::npos);
  CHECK(matrix_read(g).dim() == 6);
  const std::string csv = slurp(trace);
  CHECK(csv.rfind("iter,f,grad_norm,step,dist_to_G0,backtracks\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 2);

  // Deterministic given flags.
  const std::string trace2 = dir / "trace2.csv";
  REQUIRE(run_cli({"learn", "--train", tr, "--max-iters", "15", "--trace", trace2, "--threads", "1"}).code == 0);
  CHECK(slurp(trace2) == csv);

  CHECK(run_cli({"learn", "--train", tr, "--init", "identity", "--max-iters", "2"}).code == 0);
  CHECK(run_cli({"learn", "--train", tr, "--init", "sideways"}).code == 2);
  CHECK(run_cli({"learn", "--train", tr, "--epsilon", "-1"}).code == 2);
}

TEST_CASE("cli: gradcheck") {
  const Run ok = run_cli({"gradcheck", "--trials", "4", "--dim", "3", "--n", "6", "--seed", "1"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli: bench-toy table layout") {
  const Run r = run_cli({"bench-toy", "--sizes", "4", "--reps", "1", "--seed", "1", "--train", "10", "--test", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("| size | LE-identity | LE-mean | LE-learned | AIRM | Euclid |", 0) == 0);
  CHECK(r.out.find("| 4x4 |") != std::string::npos);
  const Run c = run_cli({"bench-toy", "--sizes", "4", "--reps", "1", "--seed", "1", "--train", "10", "--test", "10",
                     "--format", "csv"});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("size,le_identity,le_mean,le_learned,airm,euclid\n", 0) == 0);
  CHECK(run_cli({"bench-toy", "--sizes", "4", "--seed", "1", "--format", "xml"}).code == 2);
}

TEST_CASE("cli: usage errors") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"toygen", "--out-train", "a", "--out-test", "b"}).code == 2);  // seed is mandatory
  CHECK(run_cli({"eval", "--train", "/nonexistent", "--test", "/nonexistent"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
