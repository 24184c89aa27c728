#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef HEAVYTAIL_CLI_PATH
#error "HEAVYTAIL_CLI_PATH must name the heavytail executable"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs `heavytail <args>` (optionally with an environment prefix) and
// captures exit code, stdout, and stderr.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string out_path =
      "/tmp/heavytail_test_out_" + std::to_string(++counter);
  const std::string err_path = out_path + ".err";
  const std::string cmd = env + (env.empty() ? "" : " ") +
                          std::string(HEAVYTAIL_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("eval: grid CSV has a header and one row per grid point") {
  const RunResult r = run_cli(
      "eval --family mittag-leffler --delta 0.5 --grid 0:5:0.5 --what pdf");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);  // header + 11 grid points
  CHECK(lines[0] == "x,pdf");
  // Spot value: the density at x = 1 for delta = 1/2.
  CHECK(lines[3].rfind("1,0.1366060073919", 0) == 0);
}

TEST_CASE("eval: single points print bare values") {
  const RunResult linnik2 =
      run_cli("eval --family linnik --alpha 2 --x 0 --what pdf");
  CHECK(linnik2.code == 0);
  CHECK(linnik2.out == "0.5\n");

  const RunResult tsml =
      run_cli("eval --family two-sided-ml --delta 0.5 --t 1 --what charfun");
  CHECK(tsml.code == 0);
  CHECK(tsml.out == "0.5\n");
}

TEST_CASE("eval: usage errors name the offending flag and exit 2") {
  const RunResult wrong_param =
      run_cli("eval --family mittag-leffler --alpha 1 --x 1 --what pdf");
  CHECK(wrong_param.code == 2);
  CHECK(wrong_param.err.find("--alpha") != std::string::npos);

  const RunResult bad_value =
      run_cli("eval --family mittag-leffler --delta 1.5 --x 1 --what pdf");
  CHECK(bad_value.code == 2);
  CHECK(bad_value.err.find("--delta") != std::string::npos);

  const RunResult missing_point =
      run_cli("eval --family linnik --alpha 1 --what pdf");
  CHECK(missing_point.code == 2);
  CHECK(missing_point.err.find("--x") != std::string::npos);

  const RunResult wrong_point =
      run_cli("eval --family linnik --alpha 1 --what charfun --x 1");
  CHECK(wrong_point.code == 2);
  CHECK(wrong_point.err.find("--x") != std::string::npos);

  const RunResult bad_family = run_cli("eval --family nope --x 1 --what pdf");
  CHECK(bad_family.code == 2);
  CHECK(bad_family.err.find("nope") != std::string::npos);
}

TEST_CASE("sample: same seed twice is bit-identical") {
  const std::string args =
      "sample --recipe ML_VIA_K_EXP --delta 0.6 --n 1000 --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines_of(a.out).size() == 1000 + 7);  // 6 comments + header + values
}

TEST_CASE("sample: HEAVYTAIL_SEED supplies the default seed") {
  const RunResult flagged = run_cli(
      "sample --recipe ML_VIA_K_EXP --delta 0.6 --n 200 --seed 7");
  const RunResult env_seeded = run_cli(
      "sample --recipe ML_VIA_K_EXP --delta 0.6 --n 200", "HEAVYTAIL_SEED=7");
  CHECK(env_seeded.code == 0);
  CHECK(flagged.out == env_seeded.out);

  const RunResult bad_env = run_cli(
      "sample --recipe ML_VIA_K_EXP --delta 0.6 --n 10",
      "HEAVYTAIL_SEED=not-a-number");
  CHECK(bad_env.code == 2);
  CHECK(bad_env.err.find("HEAVYTAIL_SEED") != std::string::npos);
}

TEST_CASE("sample: unknown recipe exits 2 and lists the registry") {
  const RunResult r = run_cli("sample --recipe NO_SUCH --n 10");
  CHECK(r.code == 2);
  CHECK(r.err.find("NO_SUCH") != std::string::npos);
  CHECK(r.err.find("ML_VIA_K_EXP") != std::string::npos);
  CHECK(r.err.find("LINNIK_VIA_STABLE_WEIBULL") != std::string::npos);
}

TEST_CASE("sample: thread count does not change the draw") {
  const RunResult one = run_cli(
      "sample --recipe LINNIK_VIA_NORMAL_ML --alpha 1.4 --n 2000 --seed 3 "
      "--threads 1");
  const RunResult four = run_cli(
      "sample --recipe LINNIK_VIA_NORMAL_ML --alpha 1.4 --n 2000 --seed 3 "
      "--threads 4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("verify: single identity at reduced size exits 0") {
  const RunResult r = run_cli(
      "verify --identity ML_K_EXP_VS_STABLE_WEIBULL --n 2000 --seeds 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("ML_K_EXP_VS_STABLE_WEIBULL") != std::string::npos);

  const RunResult unknown = run_cli("verify --identity NOPE --n 100 --seeds 1");
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("NOPE") != std::string::npos);
}

TEST_CASE("limit: the random-sum ladder is monotone and passes") {
  const RunResult r = run_cli(
      "limit --experiment random-sum --alpha 1 --ladder 100,1000,10000 "
      "--seed 424242");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,ks");
  double prev = 1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto comma = lines[i].find(',');
    REQUIRE(comma != std::string::npos);
    const double ks = std::strtod(lines[i].c_str() + comma + 1, nullptr);
    CHECK(ks <= prev);  // strictly improving down this pilot ladder
    prev = ks;
  }
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("limit: exactly one of --alpha/--delta/--control is required") {
  const RunResult none = run_cli("limit --experiment random-sum");
  CHECK(none.code == 2);
  const RunResult both =
      run_cli("limit --experiment random-sum --alpha 1 --delta 0.5");
  CHECK(both.code == 2);
}

TEST_CASE("tails: the Mittag-Leffler exponent lands inside the gate") {
  const RunResult r = run_cli(
      "tails --family mittag-leffler --delta 0.5 --n 1000000");
  CHECK(r.code == 0);
  const auto pos = r.out.find("exponent=");
  REQUIRE(pos != std::string::npos);
  const double exponent =
      std::strtod(r.out.c_str() + pos + std::string("exponent=").size(),
                  nullptr);
  CHECK(exponent > 0.45);
  CHECK(exponent < 0.55);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("JSON outputs carry the version tag") {
  const RunResult eval_json = run_cli(
      "eval --family linnik --alpha 1 --grid 1:2:0.5 --what pdf --format json");
  CHECK(eval_json.code == 0);
  CHECK(eval_json.out.find("\"schema\": \"heavytail/v1\"") != std::string::npos);
  CHECK(eval_json.out.find("\"kind\": \"eval-table\"") != std::string::npos);

  const RunResult sample_json = run_cli(
      "sample --recipe ML_VIA_K_EXP --delta 0.6 --n 5 --seed 1 --format json");
  CHECK(sample_json.code == 0);
  CHECK(sample_json.out.find("\"kind\": \"samples\"") != std::string::npos);
}

TEST_CASE("global usage errors exit 2") {
  CHECK(run_cli("").code == 2);                    // missing subcommand
  CHECK(run_cli("frobnicate").code == 2);          // unknown subcommand
  CHECK(run_cli("sample --recipe ML_VIA_K_EXP --delta 0.6").code == 2);  // no --n
  CHECK(run_cli("eval --family linnik --alpha 1 --what pdf --grid bogus").code ==
        2);
}
