#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Exercises the installed binary end to end (path via RREACH_BIN).

namespace {

std::string binary() {
  const char* bin = std::getenv("RREACH_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_output.tmp";
  const std::string cmd = binary() + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), buffer.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("exact-gamma prints the 3-reach fraction") {
  const RunResult r = run("exact-gamma --model bernoulli --k 2 --r 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("3376/4279") != std::string::npos);
  CHECK(r.output.find("0.788969385370") != std::string::npos);
}

TEST_CASE("exact-gamma string model prints 7/10") {
  const RunResult r = run("exact-gamma --model string --k 2 --r 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("7/10") != std::string::npos);
}

TEST_CASE("string model outside k=2, r=1 exits with a usage diagnostic") {
  const RunResult r = run("exact-gamma --model string --k 3 --r 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("k=2, r=1") != std::string::npos);
}

TEST_CASE("reach above the cap exits with the resource code") {
  const RunResult r = run("exact-gamma --model bernoulli --k 2 --r 9");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("RREACH_MAX_R") != std::string::npos);
}

TEST_CASE("propagate rejects n-max below r") {
  const RunResult r = run("propagate --model bernoulli --k 2 --r 3 --n-max 2");
  CHECK(r.exit_code == 2);
}

TEST_CASE("mc reruns with one seed are byte-identical") {
  const std::string a = "mc_a.csv", b = "mc_b.csv";
  const RunResult ra =
      run("mc --model bernoulli --k 2 --r 2 --n-max 80 --trials 200 --seed 7 --csv " + a);
  const RunResult rb =
      run("mc --model bernoulli --k 2 --r 2 --n-max 80 --trials 200 --seed 7 --csv " + b);
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  const std::string ca = slurp(a), cb = slurp(b);
  CHECK(!ca.empty());
  CHECK(ca == cb);
  CHECK(ca.rfind("model,k,r,n,trials,sum_length,mean,stderr", 0) == 0);
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove((a + ".manifest.json").c_str());
  std::remove((b + ".manifest.json").c_str());
}

TEST_CASE("fit rejects a reversed window") {
  const std::string csv = "mc_fit_input.csv";
  run("mc --model bernoulli --k 2 --r 1 --n-max 60 --trials 100 --seed 3 --csv " + csv);
  const RunResult r = run("fit --in " + csv + " --window 1000:50");
  CHECK(r.exit_code == 2);
  const RunResult ok = run("fit --in " + csv + " --window 10:60");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("gamma_hat") != std::string::npos);
  std::remove(csv.c_str());
  std::remove((csv + ".manifest.json").c_str());
}

TEST_CASE("oracle subcommands") {
  const RunResult strings = run("oracle --mode strings --k 2 --n 1");
  CHECK(strings.exit_code == 0);
  CHECK(strings.output.rfind("1/2", 0) == 0);

  const RunResult realizability = run("oracle --mode realizability --n 3");
  CHECK(realizability.exit_code == 0);
  CHECK(realizability.output.find("all configurations have weight 0 or 2: OK") !=
        std::string::npos);

  const RunResult bernoulli = run("oracle --mode bernoulli --k 2 --n 3 --r 1");
  CHECK(bernoulli.exit_code == 0);
  CHECK(bernoulli.output.find("245/128") != std::string::npos);
  CHECK(bernoulli.output.find("matches exact propagation") != std::string::npos);
}

TEST_CASE("propagate emits the declared CSV schema and a manifest") {
  const std::string csv = "curve.csv";
  const RunResult r =
      run("propagate --model bernoulli --k 2 --r 1 --n-max 60 --fit-window 10:60 --csv " + csv);
  CHECK(r.exit_code == 0);
  const std::string content = slurp(csv);
  CHECK(content.rfind("model,k,r,n,el_exact_num,el_exact_den,el_float", 0) == 0);
  CHECK(content.find("bernoulli,2,1,1,1,2,0.5") != std::string::npos);
  const std::string manifest = slurp(csv + ".manifest.json");
  CHECK(manifest.find("\"command\": \"propagate\"") != std::string::npos);
  CHECK(manifest.find("\"artifact_version\"") != std::string::npos);
  std::remove(csv.c_str());
  std::remove((csv + ".manifest.json").c_str());
}

TEST_CASE("gamma table lists the exact fractions") {
  const RunResult r = run("table --which gamma-exact");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("bernoulli,2,1,8/11,0.7272727273") != std::string::npos);
  CHECK(r.output.find("bernoulli,2,3,3376/4279,0.7889693854") != std::string::npos);
  CHECK(r.output.find("string,2,1,7/10,0.7000000000") != std::string::npos);
}

TEST_CASE("refitting an mc CSV reproduces the original fit") {
  const std::string csv = "mc_roundtrip.csv";
  const RunResult mc = run(
      "mc --model bernoulli --k 2 --r 1 --n-max 120 --trials 400 --seed 99 "
      "--fit-window 20:120 --csv " + csv);
  const RunResult refit = run("fit --in " + csv + " --window 20:120");
  CHECK(mc.exit_code == 0);
  CHECK(refit.exit_code == 0);
  // the CSV mean column round-trips doubles, so the printed fits match
  CHECK(mc.output == refit.output);
  std::remove(csv.c_str());
  std::remove((csv + ".manifest.json").c_str());
}

TEST_CASE("exact-gamma json dump carries matrices and slices") {
  const std::string path = "pair.json";
  const RunResult r = run("exact-gamma --model bernoulli --k 2 --r 1 --json " + path);
  CHECK(r.exit_code == 0);
  const std::string json = slurp(path);
  CHECK(json.find("\"k\": 2") != std::string::npos);
  CHECK(json.find("\"M\"") != std::string::npos);
  CHECK(json.find("\"N\"") != std::string::npos);
  // M[0][0] = 1/8 as decimal strings
  const auto mpos = json.find("\"M\"");
  CHECK(json.find("\"1\",", mpos) != std::string::npos);
  CHECK(json.find("\"8\"", mpos) != std::string::npos);
  CHECK(json.find("\"gamma\"") != std::string::npos);
  CHECK(json.find("\"stationary\"") != std::string::npos);
  CHECK(json.find("\"g_lambda_at_b1\"") != std::string::npos);
  CHECK(json.find("\"g_b_at_lambda1\"") != std::string::npos);
  std::remove(path.c_str());
  std::remove((path + ".manifest.json").c_str());
}

TEST_CASE("comparison table carries the exact fraction column") {
  const RunResult r =
      run("table --which comparison --rs 1 --trials 400 --n-max-mc 200 --n-max-exact 400 "
          "--seed 11");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("r,mc_gamma,propagated_gamma,exact_fraction_gamma,s_statistic") !=
        std::string::npos);
  CHECK(r.output.find(",8/11,") != std::string::npos);
  CHECK(r.output.find(",0.7272727") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("propagate --model bernoulli --k 2 --r 1").exit_code == 2);  // missing --n-max
  CHECK(run("oracle --mode bernoulli --k 2 --n 2").exit_code == 2);      // missing --r
  CHECK(run("nonsense").exit_code == 2);
}
