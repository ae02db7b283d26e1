#include <sys/wait.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RELOSC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum") {
  const Run r = run("spectrum --dims 3 --l 1 --omega0 0.1 --g0 1 --n-max 2 --format csv");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][8] == doctest::Approx(1.290521263313).epsilon(1e-12));
  CHECK(rows[1][8] - rows[0][8] == doctest::Approx(0.2).epsilon(1e-12));
  const Run free = run("spectrum --dims 3 --l 0 --omega0 0.1 --g0 0 --n-max 0 --format json");
  REQUIRE(free.code == 0);
  const auto j = nlohmann::json::parse(free.out);
  CHECK(j["rows"][0]["alpha"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("eval tabulates a normalized wavefunction") {
  const Run r = run("eval --dims 3 --l 1 --omega0 0.1 --g0 1 --n 1 --grid 0:60:6001");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("rho,re,im,abs2\n", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6001);
  double sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    sum += 0.5 * (rows[i][3] + rows[i - 1][3]) * (rows[i][0] - rows[i - 1][0]);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rows[0][3] == 0.0);
  const Run tiny = run("eval --dims 3 --l 1 --omega0 0.1 --g0 1 --n 0 --grid 1e-8:1e-8:1");
  REQUIRE(tiny.code == 0);
  CHECK(csv_rows(tiny.out)[0][3] < 1e-12);
  const Run two = run("eval --dims 3 --l 0,1 --omega0 0.1 --g0 1 --n 0 --grid 0:1:3");
  CHECK(std::count(two.out.begin(), two.out.end(), '#') == 2);
}

TEST_CASE("verify exit codes") {
  const std::string grid = "--dims 3 --l 1 --omega0 0.2 --g0 1 --n-max 2 ";
  CHECK(run("verify " + grid + "--checks eigen-residual,casimir").code == 0);
  const Run tight = run("verify " + grid + "--checks eigen-residual --tol-eigen-residual 1e-15");
  CHECK(tight.code == 1);
  CHECK(tight.out.find("FAIL  eigen-residual") != std::string::npos);
  CHECK(run("verify --checks no-such-check").code == 2);
  CHECK(run("verify --omega0 abc").code == 2);
  CHECK(run("verify --format yaml --checks weight-identity").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("eval --dims 3 --l 2 --omega0 1 --g0 1").code == 2);
}

TEST_CASE("invalid grid points are skipped") {
  const Run r = run(
      "verify --dims 3 --l 1 --omega0 0.2,1.0 --g0 1 --n-max 1 --checks eigen-residual "
      "--format json --canonical");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["skipped"] == 1);
  CHECK(j["summary"]["passed"] == 1);
  CHECK(j["entries"][1]["status"] == "skipped");
  CHECK(j["entries"][1]["message"].get<std::string>().rfind("skipped: discriminant-negative",
                                                            0) == 0);
}

TEST_CASE("canonical reports are byte-identical") {
  const std::string args =
      "verify --dims 2,3 --l 0 --omega0 0.2 --g0 0.1 --n-max 2 "
      "--checks eigen-residual,factorization,gamma-identities --format json --canonical";
  const Run a = run(args + " --threads 1");
  const Run b = run(args + " --threads 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("runtime_ms") == std::string::npos);
  CHECK(a.out.find("\"report_version\": 1") != std::string::npos);
}

TEST_CASE("config file with flag override") {
  const std::string path = "relosc_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"dims": [3], "l": [1], "omega0": [0.2], "g0": [1.0], "n-max": 1,
             "checks": ["eigen-residual"], "tol": {"eigen-residual": 1e-15}})";
  }
  CHECK(run("verify --config " + path).code == 1);
  CHECK(run("verify --config " + path + " --tol-eigen-residual 1e-9").code == 0);
  {
    std::ofstream f(path);
    f << R"({"dimz": [3]})";
  }
  CHECK(run("verify --config " + path).code == 2);
  std::remove(path.c_str());
}
