#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

using nlohmann::json;

namespace {

const std::string kCli = FRAMESCOPE_CLI_PATH;
const std::string kDir = "/tmp/framescope_cli";

int run(const std::string& args, const std::string& stdout_path = "") {
  std::string cmd = "\"" + kCli + "\" " + args + " 2>/dev/null";
  if (!stdout_path.empty()) cmd += " > " + stdout_path;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

json run_json(const std::string& args, int expect_exit) {
  const std::string out = kDir + "/out.json";
  CHECK(run(args, out) == expect_exit);
  return json::parse(slurp(out));
}

struct Setup {
  Setup() {
    if (std::system(("mkdir -p " + kDir).c_str()) != 0) std::abort();
  }
};
const Setup setup;

}  // namespace

TEST_CASE("generate: deterministic bytes and correct shapes") {
  const std::string a = kDir + "/gen_a.json";
  const std::string b = kDir + "/gen_b.json";
  CHECK(run("generate gaussian-complex -m 3 -n 8 --seed 4 -o " + a) == 0);
  CHECK(run("generate gaussian-complex -m 3 -n 8 --seed 4 -o " + b) == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(!bytes.empty());

  const json frame = json::parse(bytes);
  CHECK(frame.at("field") == "complex");
  CHECK(frame.at("dim") == 3);
  CHECK(frame.at("vectors").size() == 8);

  // Different seed, different frame.
  CHECK(run("generate gaussian-complex -m 3 -n 8 --seed 5 -o " + a) == 0);
  CHECK(slurp(a) != bytes);
}

TEST_CASE("generate: weak-pr emits the ones-with-negations family") {
  const json j = run_json("generate weak-pr -m 3", 0);
  CHECK(j.at("field") == "real");
  REQUIRE(j.at("vectors").size() == 4);
  CHECK(j["vectors"][0] == json::array({1.0, 1.0, 1.0}));
  CHECK(j["vectors"][1] == json::array({-1.0, 1.0, 1.0}));
  CHECK(j["vectors"][3] == json::array({1.0, 1.0, -1.0}));
}

TEST_CASE("generate: projections and argument validation") {
  const json j = run_json("generate projections -m 3 --dims 2,2,2 --seed 1", 0);
  CHECK(j.at("subspaces").size() == 3);
  CHECK(j["subspaces"][0].size() == 2);  // basis vectors per subspace

  CHECK(run("generate gaussian-real -m 3") == 2);          // missing -n
  CHECK(run("generate weak-pr -m 3 -n 5") == 2);           // n is derived
  CHECK(run("generate projections -m 2 --dims 3") == 2);   // dim too large
  CHECK(run("generate nonsense -m 3 -n 2") == 2);
}

TEST_CASE("analyze: weak frame affirms weak phase retrieval") {
  const std::string f = kDir + "/weak.json";
  REQUIRE(run("generate weak-pr -m 3 -o " + f) == 0);
  const json rep = run_json("analyze " + f + " --weak-trials 40", 0);
  CHECK(rep.at("schema_version") == 1);
  CHECK(rep.at("complement_property").at("holds") == false);
  CHECK(rep.at("verdict").at("property") == "WeakPhaseRetrieval");
  CHECK(rep["verdict"].at("certificate").at("kind") ==
        "measurement_equal_pair");
}

TEST_CASE("analyze: exit tracks the headline verdict") {
  const std::string good = kDir + "/good.json";
  const std::string bad = kDir + "/bad.json";
  REQUIRE(run("generate gaussian-real -m 3 -n 5 --seed 2 -o " + good) == 0);
  REQUIRE(run("generate gaussian-real -m 3 -n 4 --seed 2 -o " + bad) == 0);

  const json ok = run_json("analyze " + good, 0);
  CHECK(ok.at("complement_property").at("holds") == true);
  CHECK(ok.at("verdict").at("property") == "PhaselessReconstruction");
  CHECK(ok.at("bounds").at("lower") == 5);

  const json no = run_json("analyze " + bad + " --weak-trials 40", 1);
  CHECK(no.at("complement_property").at("holds") == false);
}

TEST_CASE("analyze: complex report carries the injectivity scan") {
  const std::string f = kDir + "/cfrm.json";
  REQUIRE(run("generate gaussian-complex -m 2 -n 4 --seed 3 -o " + f) == 0);
  const json rep =
      run_json("analyze " + f + " --trials 60 --restarts 10", 0);
  CHECK(rep.at("injectivity").at("no_violation") == true);
  CHECK(rep["injectivity"].at("required_dim") == 3);
  CHECK(rep.at("falsifier").at("found") == false);
  CHECK(rep.at("verdict").at("property") == "PhaselessReconstruction");
}

TEST_CASE("analyze: projection system stability") {
  const std::string f = kDir + "/sys.json";
  REQUIRE(
      run("generate projections -m 3 --dims 2,2,2 --seed 7 -o " + f) == 0);
  const json rep = run_json("analyze " + f + " --resamples 10", 0);
  CHECK(rep.at("necessary_check").at("holds") == true);
  CHECK(rep.at("stability").at("stable") == true);
}

TEST_CASE("falsify: found and not-found exits") {
  const std::string basis = kDir + "/basis.json";
  write_file(basis,
             R"({"field": "real", "dim": 2, "vectors": [[1, 0], [0, 1]]})");
  const json hit = run_json("falsify " + basis, 0);
  CHECK(hit.at("certificate").at("kind") == "measurement_equal_pair");

  const std::string inj = kDir + "/inj.json";
  REQUIRE(run("generate gaussian-complex -m 2 -n 4 --seed 3 -o " + inj) == 0);
  const json miss = run_json("falsify " + inj + " --restarts 20", 1);
  CHECK(miss.at("certificate").is_null());

  CHECK(run("falsify " + kDir + "/missing.json") == 2);
  const std::string garbage = kDir + "/garbage.json";
  write_file(garbage, "{\"field\": \"real\",");
  CHECK(run("falsify " + garbage) == 2);
}

TEST_CASE("recover: candidates out, infeasible flagged") {
  const std::string f = kDir + "/rec_frame.json";
  write_file(f, R"({"field": "real", "dim": 2,
                    "vectors": [[1, 0], [0, 1], [1, 1]]})");
  const std::string meas = kDir + "/rec_meas.json";
  write_file(meas, R"({"values": [1, 4, 9]})");
  const json out = run_json("recover " + f + " " + meas, 0);
  REQUIRE(out.at("candidates").size() == 1);
  CHECK(out["candidates"][0] == json::array({1.0, 2.0}));
  CHECK(out.at("residuals")[0].get<double>() <= 1e-9);

  write_file(meas, R"({"values": [1, 1, 100]})");
  const json err = run_json("recover " + f + " " + meas, 1);
  CHECK(err.contains("error"));

  write_file(meas, R"({"values": [1, 4]})");  // wrong count
  CHECK(run("recover " + f + " " + meas) == 2);
}

TEST_CASE("identities: pass, perturb, and empty runs") {
  const json ok = run_json("identities --trials 300", 0);
  CHECK(ok.at("all_pass") == true);
  REQUIRE(ok.at("rows").size() == 3);
  for (const auto& row : ok["rows"]) {
    CHECK(row.at("pass") == true);
    CHECK(row.at("max_deviation").get<double>() <
          row.at("threshold").get<double>());
  }

  const json bad = run_json("identities --trials 300 --perturb 1e-3", 1);
  CHECK(bad.at("all_pass") == false);

  const json empty = run_json("identities --trials 0", 0);
  CHECK(empty.at("rows").empty());
  CHECK(empty.at("all_pass") == true);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analyze") == 2);
}
