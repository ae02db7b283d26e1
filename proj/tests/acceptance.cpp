// Runs the full default verification grid and prints one line per acceptance
// criterion. Exit status is non-zero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "relosc/verification.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria{
    {1, "eigen-identity", {"eigen-residual"}},
    {2, "negative control", {"negative-control"}},
    {3, "orthonormality", {"orthonormality", "quadrature-error"}},
    {4, "factorization", {"factorization"}},
    {5, "commutators", {"commutator-h-a", "commutator-a-a", "su11-algebra"}},
    {6, "Casimir / Bargmann index", {"casimir"}},
    {7, "ladder action", {"ladder-action"}},
    {8, "state generation", {"state-generation", "state-generation-norm"}},
    {9, "non-relativistic spectrum limit", {"nonrel-spectrum"}},
    {10, "operator Taylor limit", {"taylor-limit"}},
    {11, "plane waves", {"plane-wave-eigen", "plane-wave-rest", "plane-wave-limit"}},
    {12, "reduction chain", {"reduction-chain", "weight-identity"}},
    {13, "special functions", {"gamma-identities", "cdh-norms"}},
};

}  // namespace

int main() {
  relosc::RunConfig config;
  const relosc::VerificationReport report = relosc::run_verification(config);
  int failures = 0;
  for (const auto& c : kCriteria) {
    bool pass = true;
    unsigned evaluated = 0;
    std::string worst;
    for (const auto& id : c.checks) {
      double worst_ratio = -1.0;
      const relosc::ReportEntry* worst_entry = nullptr;
      for (const auto& e : report.entries) {
        if (e.check_id != id || e.status == relosc::EntryStatus::skipped) continue;
        ++evaluated;
        if (!e.pass) pass = false;
        const double ratio = e.tolerance > 0.0 ? e.residual / e.tolerance : e.residual;
        if (!(ratio <= worst_ratio) || !worst_entry) {
          worst_ratio = ratio;
          worst_entry = &e;
        }
      }
      if (!worst_entry) {
        pass = false;
        worst += " " + id + ": not evaluated;";
        continue;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s: worst %.3e (tol %.1e);", id.c_str(),
                    worst_entry->residual, worst_entry->tolerance);
      worst += buf;
    }
    if (!pass) ++failures;
    std::printf("criterion %2d %-32s %s  [%u entries;%s]\n", c.number, c.title.c_str(),
                pass ? "PASS" : "FAIL", evaluated, worst.c_str());
  }
  std::printf("summary: %zu criteria, %d failed; %u entries, %u skipped grid entries\n",
              kCriteria.size(), failures, report.summary.total, report.summary.skipped);
  return failures == 0 ? 0 : 1;
}
