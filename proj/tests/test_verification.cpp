#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "relosc/errors.hpp"
#include "relosc/verification.hpp"

using namespace relosc;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.grid.dims = {3};
  c.grid.ls = {1};
  c.grid.n_max = 2;
  c.grid.omega0s = {0.2, 1.0};
  c.grid.g0s = {0.1, 1.0};
  c.checks = {"eigen-residual", "casimir", "weight-identity"};
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("check catalog") {
  const auto& cat = check_catalog();
  CHECK(cat.size() == 21);
  CHECK(std::is_sorted(cat.begin(), cat.end(),
                       [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; }));
  REQUIRE(find_check("eigen-residual") != nullptr);
  CHECK(find_check("eigen-residual")->default_tolerance == 1e-9);
  CHECK(find_check("no-such-check") == nullptr);
}

TEST_CASE("log-log slope") {
  const std::vector<double> xs{0.1, 0.05, 0.025};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * std::pow(x, 1.7));
  CHECK(loglog_slope(xs, ys) == doctest::Approx(1.7).epsilon(1e-12));
  const std::vector<double> bad{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(loglog_slope(xs, bad), DomainError);
}

TEST_CASE("report structure, skips and determinism") {
  const RunConfig c = small_config();
  const VerificationReport r = run_verification(c);
  // Two per-point checks on four grid points plus one global check.
  CHECK(r.summary.total == 9);
  CHECK(r.summary.failed == 0);
  // Both points at w0 = 1 have D < 0.
  CHECK(r.summary.skipped == 4);
  for (const auto& e : r.entries) {
    if (e.status == EntryStatus::skipped) {
      CHECK(e.message.rfind("skipped: discriminant-negative", 0) == 0);
      CHECK(e.params->omega0 == 1.0);
    } else {
      CHECK(e.pass == (e.residual <= e.tolerance));
    }
  }
  CHECK(std::is_sorted(r.entries.begin(), r.entries.end(),
                       [](const ReportEntry& a, const ReportEntry& b) {
                         return a.check_id < b.check_id;
                       }));
  CHECK(report_exit_code(r) == 0);
  RunConfig threaded = c;
  threaded.threads = 4;
  const VerificationReport r2 = run_verification(threaded);
  CHECK(report_digest(r) == report_digest(r2));
  CHECK(report_to_json(r, false).dump() == report_to_json(r2, false).dump());
  const auto j = report_to_json(r, false);
  CHECK(j["report_version"] == 1);
  CHECK_FALSE(j["entries"][0].contains("runtime_ms"));
  CHECK(report_to_json(r, true)["entries"][0].contains("runtime_ms"));
}

TEST_CASE("tightened tolerance flips the outcome") {
  RunConfig c = small_config();
  c.checks = {"eigen-residual"};
  c.tolerances["eigen-residual"] = 1e-15;
  const VerificationReport r = run_verification(c);
  CHECK(r.summary.failed == 2);
  CHECK(report_exit_code(r) == 1);
  for (const auto& e : r.entries) {
    if (e.status == EntryStatus::ok) CHECK(e.residual > 1e-15);
  }
}

TEST_CASE("configuration errors") {
  RunConfig c = small_config();
  c.checks = {"bogus"};
  CHECK_THROWS_AS(validate_config(c), ValidationError);
  c = small_config();
  c.tolerances["eigen-residual"] = -1.0;
  CHECK_THROWS_AS(validate_config(c), ValidationError);
  c = small_config();
  c.grid.dims.clear();
  CHECK_THROWS_AS(run_verification(c), ValidationError);
}

TEST_CASE("invalid points are skipped, not failed") {
  RunConfig c = small_config();
  c.grid.dims = {1};
  c.grid.ls = {0, 1};
  c.grid.omega0s = {0.2};
  c.grid.g0s = {1.0};
  c.checks = {"eigen-residual"};
  const VerificationReport r = run_verification(c);
  CHECK(r.summary.passed == 1);
  CHECK(r.summary.skipped == 1);
  CHECK(r.entries[1].message.rfind("skipped: invalid-params", 0) == 0);
}

TEST_CASE("individual checks") {
  const ModelParams p{3, 0, 0.2, 0.1};
  const auto pts = default_sample_points();
  CHECK(check_eigen_residual(p, 2, pts).residual < 1e-9);
  CHECK(check_negative_control(p, 2, pts).residual < 1e3);
  CHECK(check_commutator_a_a(p, 5).residual < 1e-8);
  CHECK(check_weight_identity().residual < 1e-12);
  CHECK(check_gamma_identities().residual < 1e-11);
}
