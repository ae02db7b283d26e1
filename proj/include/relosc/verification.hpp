#pragma once

// The verification suite: named checks with residuals and tolerances, run over
// a parameter grid and assembled into a deterministic report.
//
// Per-point checks run once for every (N, l, omega0, g0) grid point and cover
// all n <= n_max. Global checks do not depend on the grid and run once.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relosc/oscillator_model.hpp"
#include "json.hpp"

namespace relosc {

struct CheckInfo {
  std::string id;
  double default_tolerance = 0.0;
  bool per_point = true;
  std::string description;
};

// Every check, sorted by id.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo* find_check(const std::string& id);

// Residual sample points rho in {0.3, 0.5, 1, 2, 5, 10, 20}.
std::vector<double> default_sample_points();

struct CheckOutcome {
  double residual = 0.0;
  std::string detail;
};

// Per-point checks. Each returns the worst residual over n <= n_max.
CheckOutcome check_eigen_residual(const ModelParams& p, unsigned n_max,
                                  std::span<const double> points);
// Inverse of the smallest residual after shifting E_n by 0.1 omega0, so a
// sensitive eigen-check yields a small value.
CheckOutcome check_negative_control(const ModelParams& p, unsigned n_max,
                                    std::span<const double> points);
// Max deviation of the Gram matrix from the identity, and its quadrature
// error estimate.
CheckOutcome check_orthonormality(const ModelParams& p, unsigned n_max);
CheckOutcome check_quadrature_error(const ModelParams& p, unsigned n_max);
CheckOutcome check_factorization(const ModelParams& p, unsigned n_max,
                                 std::span<const double> points);
// [H, A+-] = +-2 w0 A+- pointwise on superpositions of R_0..R_3.
CheckOutcome check_commutator_h_a(const ModelParams& p, std::span<const double> points);
CheckOutcome check_commutator_a_a(const ModelParams& p, unsigned n_max);
CheckOutcome check_su11_algebra(const ModelParams& p, unsigned n_max);
CheckOutcome check_casimir(const ModelParams& p, unsigned n_max);
CheckOutcome check_ladder_action(const ModelParams& p, unsigned n_max,
                                 std::span<const double> points);
CheckOutcome check_state_generation(const ModelParams& p, unsigned n_max,
                                    std::span<const double> points);
CheckOutcome check_state_generation_norm(const ModelParams& p, unsigned n_max);
CheckOutcome check_reduction_chain(const ModelParams& p, unsigned n_max,
                                   std::span<const double> points);

// Global checks.
CheckOutcome check_nonrel_spectrum();
CheckOutcome check_taylor_limit();
CheckOutcome check_plane_wave_eigen();
CheckOutcome check_plane_wave_rest();
CheckOutcome check_plane_wave_limit();
CheckOutcome check_weight_identity();
CheckOutcome check_gamma_identities();
CheckOutcome check_cdh_norms();

// Log-log least-squares slope of ys against xs.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

struct GridConfig {
  std::vector<int> dims{2, 3, 5, 8};
  std::vector<int> ls{0, 1, 2};
  unsigned n_max = 5;
  std::vector<double> omega0s{0.05, 0.2, 1.0};
  std::vector<double> g0s{0.1, 1.0};
};

struct RunConfig {
  GridConfig grid;
  std::vector<std::string> checks;  // empty selects every check
  std::map<std::string, double> tolerances;
  std::vector<double> sample_points = default_sample_points();
  unsigned threads = 0;  // 0: REL_SINGOSC_THREADS or hardware concurrency
};

// Throws ValidationError for unknown check ids, empty grids or bad tolerances.
void validate_config(const RunConfig& config);

enum class EntryStatus { ok, skipped, error };

struct ReportEntry {
  std::string check_id;
  std::optional<ModelParams> params;
  unsigned n_max = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  EntryStatus status = EntryStatus::ok;
  std::string message;
};

struct ReportSummary {
  unsigned total = 0;
  unsigned passed = 0;
  unsigned failed = 0;
  unsigned skipped = 0;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;
  ReportSummary summary;
};

inline constexpr int kReportVersion = 1;

VerificationReport run_verification(const RunConfig& config);

// 0 when nothing failed, 1 otherwise.
int report_exit_code(const VerificationReport& report);

// With include_runtime false the payload is byte-identical across runs.
nlohmann::json report_to_json(const VerificationReport& report, bool include_runtime = true);
std::string report_to_text(const VerificationReport& report, bool include_runtime = true);
std::string report_to_csv(const VerificationReport& report, bool include_runtime = true);
// FNV-1a (64 bit, hex) of the runtime-free JSON payload.
std::string report_digest(const VerificationReport& report);

// Worker count: REL_SINGOSC_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

}  // namespace relosc
