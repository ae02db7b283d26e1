#include "relosc/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include "relosc/errors.hpp"
#include "relosc/plane_waves.hpp"
#include "relosc/symmetry_algebra.hpp"

namespace relosc {

namespace {

constexpr double kGuard = 1e-300;
constexpr unsigned kMaxLadderN = 4;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel(Complex got, Complex expected) {
  return std::abs(got - expected) / (std::abs(expected) + kGuard);
}

// Tracks the largest residual together with where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (v > value || std::isnan(v)) {
      value = v;
      where = at;
    }
  }
  CheckOutcome outcome(const std::string& prefix = "") const {
    return {value, prefix + (where.empty() ? "" : "worst at " + where)};
  }
};

std::string at_n_rho(unsigned n, double rho) {
  std::ostringstream s;
  s << "n=" << n << " rho=" << rho;
  return s.str();
}

// Basis and derived quantities shared by the checks of one grid point.
class PointContext {
 public:
  PointContext(const ModelParams& p, unsigned n_max) : p_(p), n_max_(n_max) {}

  const EigenBasis& basis() {
    if (!basis_) {
      const unsigned size = std::max({n_max_, std::min(n_max_, kMaxLadderN) + 1, 3u});
      basis_ = std::make_unique<EigenBasis>(p_, size);
    }
    return *basis_;
  }

  const GramResult& gram() {
    if (!gram_) {
      std::vector<AnalyticFunction> fns;
      for (unsigned n = 0; n <= n_max_; ++n) fns.push_back(basis().fn(n));
      gram_ = std::make_unique<GramResult>(
          gram_matrix(fns, radial_decay_hint(basis().derived(), n_max_)));
    }
    return *gram_;
  }

  const RadialState& generated(unsigned n) {
    while (generated_.size() <= n) {
      generated_.push_back(
          generate_state_via_ladder(p_, static_cast<unsigned>(generated_.size())));
    }
    return generated_[n];
  }

  const ModelParams& params() const { return p_; }
  unsigned n_max() const { return n_max_; }

 private:
  ModelParams p_;
  unsigned n_max_;
  std::unique_ptr<EigenBasis> basis_;
  std::unique_ptr<GramResult> gram_;
  std::vector<RadialState> generated_;
};

double eigen_residual_for(const EigenBasis& basis, const LinearOperator& h, unsigned n,
                          double e, std::span<const double> points, Worst& worst) {
  const AnalyticFunction r = basis.fn(n);
  const AnalyticFunction hr = h.apply(r);
  double local = 0.0;
  for (double x : points) {
    const Complex rho(x, 0.0);
    const double v = rel(hr(rho), e * r(rho));
    local = std::max(local, v);
    worst.update(v, at_n_rho(n, x));
  }
  return local;
}

CheckOutcome eigen_residual(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  const LinearOperator h = hamiltonian_reduced(ctx.params());
  Worst worst;
  for (unsigned n = 0; n <= ctx.n_max(); ++n) {
    eigen_residual_for(basis, h, n, basis.energy(n), points, worst);
  }
  return worst.outcome();
}

CheckOutcome negative_control(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  const LinearOperator h = hamiltonian_reduced(ctx.params());
  const double shift = 0.1 * ctx.params().omega0;
  double smallest = std::numeric_limits<double>::infinity();
  unsigned smallest_n = 0;
  for (unsigned n = 0; n <= ctx.n_max(); ++n) {
    Worst unused;
    const double v = eigen_residual_for(basis, h, n, basis.energy(n) + shift, points, unused);
    if (v < smallest) {
      smallest = v;
      smallest_n = n;
    }
  }
  std::ostringstream detail;
  detail << "smallest perturbed residual " << fmt(smallest) << " at n=" << smallest_n;
  return {1.0 / smallest, detail.str()};
}

CheckOutcome orthonormality(PointContext& ctx) {
  const GramResult& g = ctx.gram();
  Worst worst;
  for (std::size_t i = 0; i < g.matrix.size(); ++i) {
    for (std::size_t j = 0; j < g.matrix.size(); ++j) {
      const double v = std::abs(g.matrix[i][j] - (i == j ? 1.0 : 0.0));
      worst.update(v, "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  std::ostringstream prefix;
  prefix << "rho_max=" << g.rho_max << " ";
  return worst.outcome(prefix.str());
}

CheckOutcome quadrature_error(PointContext& ctx) {
  const GramResult& g = ctx.gram();
  std::ostringstream detail;
  detail << "rho_max=" << g.rho_max;
  return {g.est_error, detail.str()};
}

CheckOutcome factorization(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  const ModelParams& p = ctx.params();
  const DerivedParams& d = basis.derived();
  const LinearOperator op = Complex(p.omega0) * (build_a_plus(p) * build_a_minus(p)) +
                            Complex(p.omega0 * (d.alpha + d.nu)) * LinearOperator();
  Worst worst;
  for (unsigned n = 0; n <= ctx.n_max(); ++n) {
    const AnalyticFunction r = basis.fn(n);
    const AnalyticFunction image = op.apply(r);
    for (double x : points) {
      worst.update(rel(image(x), basis.energy(n) * r(x)), at_n_rho(n, x));
    }
  }
  return worst.outcome();
}

std::vector<AnalyticFunction> superpositions(const ModelParams& p, const EigenBasis& basis) {
  const CoefficientState even(p, {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}});
  const CoefficientState mixed(
      p, {{0, 0.7}, {1, Complex(0.0, -0.4)}, {2, 0.25}, {3, Complex(0.1, 0.3)}});
  return {memoize(even.evaluate(basis)), memoize(mixed.evaluate(basis))};
}

CheckOutcome commutator_h_a(PointContext& ctx, std::span<const double> points) {
  const ModelParams& p = ctx.params();
  const std::vector<AnalyticFunction> tests = superpositions(p, ctx.basis());
  const LinearOperator h = hamiltonian_reduced(p);
  const LinearOperator up = build_A_plus(p);
  const LinearOperator down = build_A_minus(p);
  const std::vector<double> pts(points.begin(), points.end());
  const double r_up = commutator_residual(h, up, Complex(2.0 * p.omega0) * up, tests, pts);
  const double r_down =
      commutator_residual(h, down, Complex(-2.0 * p.omega0) * down, tests, pts);
  return {std::max(r_up, r_down), "[H,A+] " + fmt(r_up) + ", [H,A-] " + fmt(r_down)};
}

CheckOutcome su11(const ModelParams& p, unsigned n_max) {
  Worst worst;
  std::map<unsigned, Complex> mixed;
  for (unsigned n = 0; n <= n_max; ++n) {
    worst.update(su11_coefficient_residual(CoefficientState::basis_vector(p, n)),
                 "e_" + std::to_string(n));
    mixed[n] = Complex(1.0 / (n + 1.0), 0.3 * n);
  }
  worst.update(su11_coefficient_residual(CoefficientState(p, mixed)), "mixed state");
  // The spacing relation kappa_{n+1}^2 - kappa_n^2 = 2n + alpha + nu.
  const DerivedParams d = derive_params(p);
  for (unsigned n = 0; n <= n_max; ++n) {
    const double lhs = kappa(n + 1, d) * kappa(n + 1, d) - kappa(n, d) * kappa(n, d);
    const double rhs = 2.0 * n + d.alpha + d.nu;
    worst.update(std::fabs(lhs - rhs) / rhs, "kappa spacing n=" + std::to_string(n));
  }
  return worst.outcome();
}

CheckOutcome casimir_check(const ModelParams& p, unsigned n_max) {
  const DerivedParams d = derive_params(p);
  const double expected = d.s * (d.s - 1.0);
  const double scale = std::max(std::fabs(expected), kGuard);
  Worst worst;
  std::map<unsigned, Complex> mixed;
  for (unsigned n = 0; n <= n_max; ++n) {
    const Complex c = casimir(CoefficientState::basis_vector(p, n));
    worst.update(std::abs(c - expected) / scale, "e_" + std::to_string(n));
    mixed[n] = Complex(std::cos(n + 0.5), std::sin(2.0 * n));
  }
  const Complex c = casimir(CoefficientState(p, mixed));
  worst.update(std::abs(c - expected) / scale, "mixed state");
  return worst.outcome("s(s-1)=" + fmt(expected) + " ");
}

CheckOutcome ladder_action(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  const ModelParams& p = ctx.params();
  const DerivedParams& d = basis.derived();
  Worst worst;
  for (unsigned n = 0; n <= std::min(ctx.n_max(), kMaxLadderN); ++n) {
    const CoefficientState e = CoefficientState::basis_vector(p, n);
    const AnalyticFunction up = K_pointwise(LadderDirection::raise, e, basis);
    const AnalyticFunction down = K_pointwise(LadderDirection::lower, e, basis);
    for (double x : points) {
      const Complex want_up = kappa(n + 1, d) * basis.fn(n + 1)(x);
      worst.update(rel(up(x), want_up), "K+ " + at_n_rho(n, x));
      const Complex want_down = n > 0 ? kappa(n, d) * basis.fn(n - 1)(x) : Complex(0.0);
      const double scale = std::max(std::abs(want_down), std::abs(basis.fn(n)(x))) + kGuard;
      worst.update(std::abs(down(x) - want_down) / scale, "K- " + at_n_rho(n, x));
    }
  }
  return worst.outcome();
}

CheckOutcome state_generation(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  Worst worst;
  for (unsigned n = 0; n <= std::min(ctx.n_max(), kMaxLadderN); ++n) {
    const RadialState& g = ctx.generated(n);
    for (double x : points) worst.update(rel(g.fn(x), basis.fn(n)(x)), at_n_rho(n, x));
  }
  return worst.outcome();
}

CheckOutcome state_generation_norm(PointContext& ctx) {
  const DerivedParams d = derive_params(ctx.params());
  Worst worst;
  for (unsigned n = 0; n <= std::min(ctx.n_max(), kMaxLadderN); ++n) {
    const RadialState& g = ctx.generated(n);
    const IntegralResult norm = integrate_halfline(
        [&](double x) { return std::norm(g.fn(Complex(x, 0.0))); }, radial_decay_hint(d, n));
    worst.update(std::fabs(norm.value - 1.0), "n=" + std::to_string(n));
  }
  return worst.outcome();
}

CheckOutcome reduction_chain(PointContext& ctx, std::span<const double> points) {
  const EigenBasis& basis = ctx.basis();
  const LinearOperator h = hamiltonian_radial_N(ctx.params());
  Worst worst;
  for (unsigned n = 0; n <= ctx.n_max(); ++n) {
    const AnalyticFunction psi = radial_to_psi(basis.state(n));
    const AnalyticFunction image = h.apply(psi);
    for (double x : points) {
      worst.update(rel(image(x), basis.energy(n) * psi(x)), at_n_rho(n, x));
    }
  }
  return worst.outcome();
}

using PointCheck = std::function<CheckOutcome(PointContext&, std::span<const double>)>;
using GlobalCheck = std::function<CheckOutcome()>;

struct CheckEntry {
  CheckInfo info;
  PointCheck point;
  GlobalCheck global;
};

const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> entries = [] {
    using S = std::span<const double>;
    std::vector<CheckEntry> e{
        {{"casimir", 1e-10, true, "K^2 Rayleigh quotient equals s(s-1)"},
         [](PointContext& c, S) { return casimir_check(c.params(), c.n_max()); },
         {}},
        {{"cdh-norms", 1e-8, false, "continuous dual Hahn norms against quadrature"},
         {},
         check_cdh_norms},
        {{"commutator-a-a", 1e-8, true, "[A-, A+] on eigenvalues in coefficient space"},
         [](PointContext& c, S) {
           return check_commutator_a_a(c.params(), c.n_max());
         },
         {}},
        {{"commutator-h-a", 1e-7, true, "[H, A+-] = +-2 w0 A+- on superpositions"},
         commutator_h_a,
         {}},
        {{"eigen-residual", 1e-9, true, "H R_n = E_n R_n pointwise"}, eigen_residual, {}},
        {{"factorization", 1e-8, true, "w0 (a+ a- + alpha + nu) R_n = E_n R_n"},
         factorization,
         {}},
        {{"gamma-identities", 1e-11, false, "Gamma recurrence, reflection, duplication"},
         {},
         check_gamma_identities},
        {{"ladder-action", 1e-7, true, "K+ R_n = kappa_{n+1} R_{n+1}, K- R_n = kappa_n R_{n-1}"},
         ladder_action,
         {}},
        {{"negative-control", 1e3, true,
          "inverse residual with E shifted by 0.1 w0 (must exceed 1e-3)"},
         negative_control,
         {}},
        {{"nonrel-spectrum", 0.3, false, "|log-log slope - 1| of the spectrum limit"},
         {},
         check_nonrel_spectrum},
        {{"orthonormality", 1e-6, true, "Gram matrix of R_0..R_nmax against identity"},
         [](PointContext& c, S) { return orthonormality(c); },
         {}},
        {{"plane-wave-eigen", 1e-6, false, "H0 xi = cosh(chi) xi for N in {2,3,5}"},
         {},
         check_plane_wave_eigen},
        {{"plane-wave-limit", 0.3, false, "|slope - 1| of the Euclidean plane-wave limit"},
         {},
         check_plane_wave_limit},
        {{"plane-wave-rest", 1e-12, false, "H0 xi = xi at chi = 0"}, {}, check_plane_wave_rest},
        {{"quadrature-error", 1e-8, true, "quadrature error estimate of the Gram matrix"},
         [](PointContext& c, S) { return quadrature_error(c); },
         {}},
        {{"reduction-chain", 1e-8, true, "psi from R solves the N-dimensional equation"},
         reduction_chain,
         {}},
        {{"state-generation", 1e-7, true, "ladder-generated R_n against direct evaluation"},
         state_generation,
         {}},
        {{"state-generation-norm", 1e-6, true, "norm of ladder-generated R_n"},
         [](PointContext& c, S) { return state_generation_norm(c); },
         {}},
        {{"su11-algebra", 1e-12, true, "su(1,1) commutators in coefficient space"},
         [](PointContext& c, S) { return su11(c.params(), c.n_max()); },
         {}},
        {{"taylor-limit", 0.3, false, "|slope - 4| of the cosh(i lambda d) Taylor residual"},
         {},
         check_taylor_limit},
        {{"weight-identity", 1e-12, false, "w_3 = 1 and |multiplier|^2 w_N rho^(N-1) = 1"},
         {},
         check_weight_identity},
    };
    std::sort(e.begin(), e.end(),
              [](const CheckEntry& a, const CheckEntry& b) { return a.info.id < b.info.id; });
    return e;
  }();
  return entries;
}

template <typename F>
CheckOutcome with_context(const ModelParams& p, unsigned n_max, F&& f) {
  PointContext ctx(p, n_max);
  return f(ctx);
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const CheckInfo* find_check(const std::string& id) {
  for (const auto& info : check_catalog()) {
    if (info.id == id) return &info;
  }
  return nullptr;
}

std::vector<double> default_sample_points() { return {0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}; }

CheckOutcome check_eigen_residual(const ModelParams& p, unsigned n_max,
                                  std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return eigen_residual(c, points); });
}

CheckOutcome check_negative_control(const ModelParams& p, unsigned n_max,
                                    std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return negative_control(c, points); });
}

CheckOutcome check_orthonormality(const ModelParams& p, unsigned n_max) {
  return with_context(p, n_max, [](PointContext& c) { return orthonormality(c); });
}

CheckOutcome check_quadrature_error(const ModelParams& p, unsigned n_max) {
  return with_context(p, n_max, [](PointContext& c) { return quadrature_error(c); });
}

CheckOutcome check_factorization(const ModelParams& p, unsigned n_max,
                                 std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return factorization(c, points); });
}

CheckOutcome check_commutator_h_a(const ModelParams& p, std::span<const double> points) {
  return with_context(p, 3, [&](PointContext& c) { return commutator_h_a(c, points); });
}

CheckOutcome check_commutator_a_a(const ModelParams& p, unsigned n_max) {
  const double r = aa_commutator_coefficient_residual(p, n_max);
  return {r, "n<=" + std::to_string(n_max)};
}

CheckOutcome check_su11_algebra(const ModelParams& p, unsigned n_max) { return su11(p, n_max); }

CheckOutcome check_casimir(const ModelParams& p, unsigned n_max) {
  return casimir_check(p, n_max);
}

CheckOutcome check_ladder_action(const ModelParams& p, unsigned n_max,
                                 std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return ladder_action(c, points); });
}

CheckOutcome check_state_generation(const ModelParams& p, unsigned n_max,
                                    std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return state_generation(c, points); });
}

CheckOutcome check_state_generation_norm(const ModelParams& p, unsigned n_max) {
  return with_context(p, n_max, [](PointContext& c) { return state_generation_norm(c); });
}

CheckOutcome check_reduction_chain(const ModelParams& p, unsigned n_max,
                                   std::span<const double> points) {
  return with_context(p, n_max, [&](PointContext& c) { return reduction_chain(c, points); });
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw DomainError("loglog_slope: need at least two paired samples");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw DomainError("loglog_slope: samples must be positive");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

CheckOutcome check_nonrel_spectrum() {
  const std::vector<double> omegas{0.1, 0.05, 0.025};
  Worst worst;
  for (int l : {0, 1, 2}) {
    for (double g0 : {0.1, 1.0}) {
      std::vector<double> gaps;
      for (double w : omegas) {
        const ModelParams p{3, l, w, g0};
        const DerivedParams d = derive_params(p);
        gaps.push_back(
            std::fabs((energy(0, d, w) - 1.0) / w - nonrel_energy(0, d.L, g0)));
      }
      const double slope = loglog_slope(omegas, gaps);
      std::ostringstream at;
      at << "L=" << l << " g0=" << g0 << " slope=" << slope;
      worst.update(std::fabs(slope - 1.0), at.str());
    }
  }
  return worst.outcome();
}

CheckOutcome check_taylor_limit() {
  const std::vector<double> lambdas{0.1, 0.05, 0.025};
  const TestFunction test = gaussian_test_function();
  std::vector<double> residuals;
  for (double lb : lambdas) residuals.push_back(taylor_limit_check(test, lb));
  const double slope = loglog_slope(lambdas, residuals);
  return {std::fabs(slope - 4.0), "slope=" + fmt(slope)};
}

CheckOutcome check_plane_wave_eigen() {
  const std::vector<PolarSample> grid = default_polar_grid();
  Worst worst;
  for (int dims : {2, 3, 5}) {
    for (double chi : {0.2, 0.5, 1.0}) {
      std::ostringstream at;
      at << "N=" << dims << " chi=" << chi;
      worst.update(free_hamiltonian_residual({chi, dims}, grid), at.str());
    }
  }
  return worst.outcome();
}

CheckOutcome check_plane_wave_rest() {
  const std::vector<PolarSample> grid = default_polar_grid();
  Worst worst;
  for (int dims : {2, 3, 5}) {
    worst.update(free_hamiltonian_residual({0.0, dims}, grid), "N=" + std::to_string(dims));
  }
  return worst.outcome();
}

CheckOutcome check_plane_wave_limit() {
  const std::vector<PolarSample> grid = default_polar_grid();
  const std::vector<double> lambdas{0.02, 0.01, 0.005};
  Worst worst;
  for (int dims : {2, 3, 5}) {
    std::vector<double> dev;
    for (double lb : lambdas) dev.push_back(plane_wave_limit_deviation(1.0, grid, lb, dims));
    const double slope = loglog_slope(lambdas, dev);
    std::ostringstream at;
    at << "N=" << dims << " slope=" << slope;
    worst.update(std::fabs(slope - 1.0), at.str());
  }
  return worst.outcome();
}

CheckOutcome check_weight_identity() {
  std::vector<double> rhos = default_sample_points();
  rhos.insert(rhos.end(), {0.05, 3.7, 50.0});
  Worst worst;
  for (double rho : rhos) {
    worst.update(std::fabs(weight_wN(rho, 3) - 1.0), "w_3 rho=" + fmt(rho));
    for (int dims : {1, 2, 3, 4, 5, 8}) {
      const double m = std::abs(reduction_multiplier(rho, dims));
      const double v = m * m * weight_wN(rho, dims) * std::pow(rho, dims - 1);
      std::ostringstream at;
      at << "N=" << dims << " rho=" << rho;
      worst.update(std::fabs(v - 1.0), at.str());
    }
  }
  return worst.outcome();
}

CheckOutcome check_gamma_identities() {
  const std::vector<Complex> zs{{0.3, 0.7},  {2.5, -1.2}, {-3.7, 0.4}, {0.5, 10.0},
                                {7.2, 25.0}, {-12.3, -0.8}, {1e-3, 0.2}, {18.5, -3.0}};
  const double pi = std::numbers::pi;
  Worst worst;
  for (Complex z : zs) {
    std::ostringstream at;
    at << "z=" << z;
    const Complex gz = gamma(z);
    worst.update(rel(gamma(z + 1.0), z * gz), "recurrence " + at.str());
    worst.update(rel(gz * gamma(1.0 - z) * sin_pi(z), Complex(pi)), "reflection " + at.str());
    worst.update(rel(gz * gamma(z + 0.5), std::pow(2.0, 1.0 - 2.0 * z) * std::sqrt(pi) *
                                              gamma(2.0 * z)),
                 "duplication " + at.str());
    worst.update(rel(gamma(std::conj(z)), std::conj(gz)), "conjugation " + at.str());
    worst.update(rel(reciprocal_gamma(z) * gz, Complex(1.0)), "reciprocal " + at.str());
  }
  for (int k = 0; k <= 5; ++k) {
    worst.update(std::abs(reciprocal_gamma(Complex(-k, 0.0))), "pole " + std::to_string(-k));
  }
  return worst.outcome();
}

CheckOutcome check_cdh_norms() {
  const DerivedParams d = derive_params({3, 1, 0.2, 1.0});
  const std::vector<CdhParams> sets{{0.5, 0.5, 0.5}, {1.3, 2.1, 0.5}, {d.alpha, d.nu, 0.5}};
  Worst worst;
  for (const CdhParams& c : sets) {
    for (unsigned n = 0; n <= 4; ++n) {
      const DecayHint hint{2.0 * (c.a + c.b + c.c) - 2.0 + 4.0 * n, std::numbers::pi};
      const double scale = std::exp(-log_cdh_norm(n, c));
      const IntegralResult r = integrate_halfline(
          [&](double x) {
            const double s = cdh_poly_real(n, x * x, c);
            return cdh_weight(x, c) * s * s * scale;
          },
          hint);
      std::ostringstream at;
      at << "n=" << n << " (a,b,c)=(" << c.a << "," << c.b << "," << c.c << ")";
      worst.update(std::fabs(r.value / (2.0 * std::numbers::pi) - 1.0), at.str());
    }
  }
  return worst.outcome();
}

// ---------------------------------------------------------------------------

void validate_config(const RunConfig& config) {
  for (const auto& id : config.checks) {
    if (!find_check(id)) throw ValidationError("unknown check id: " + id);
  }
  for (const auto& [id, tol] : config.tolerances) {
    if (!find_check(id)) throw ValidationError("tolerance for unknown check id: " + id);
    if (!(tol >= 0.0) || !std::isfinite(tol)) {
      throw ValidationError("tolerance for " + id + " must be finite and non-negative");
    }
  }
  const GridConfig& g = config.grid;
  if (g.dims.empty() || g.ls.empty() || g.omega0s.empty() || g.g0s.empty()) {
    throw ValidationError("parameter grid has an empty axis");
  }
  if (g.n_max > 20) throw ValidationError("n_max must be at most 20");
  if (config.sample_points.empty()) throw ValidationError("no sample points");
  for (double x : config.sample_points) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError("sample points must be positive and finite");
    }
  }
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("REL_SINGOSC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Task {
  std::optional<ModelParams> params;
  std::vector<const CheckEntry*> checks;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

double tolerance_for(const RunConfig& config, const CheckInfo& info) {
  const auto it = config.tolerances.find(info.id);
  return it == config.tolerances.end() ? info.default_tolerance : it->second;
}

ReportEntry run_one(const RunConfig& config, const CheckEntry& check, PointContext* ctx) {
  ReportEntry entry;
  entry.check_id = check.info.id;
  entry.tolerance = tolerance_for(config, check.info);
  if (ctx) {
    entry.params = ctx->params();
    entry.n_max = ctx->n_max();
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const CheckOutcome out =
        ctx ? check.point(*ctx, config.sample_points) : check.global();
    entry.residual = out.residual;
    entry.message = out.detail;
    entry.pass = out.residual <= entry.tolerance;
  } catch (const std::exception& e) {
    entry.status = EntryStatus::error;
    entry.residual = std::numeric_limits<double>::quiet_NaN();
    entry.pass = false;
    entry.message = std::string("error: ") + e.what();
  }
  entry.runtime_ms = elapsed_ms(t0);
  return entry;
}

std::vector<ReportEntry> run_task(const RunConfig& config, const Task& task) {
  std::vector<ReportEntry> out;
  if (!task.params) {
    for (const CheckEntry* c : task.checks) out.push_back(run_one(config, *c, nullptr));
    return out;
  }
  std::string skip_reason;
  try {
    derive_params(*task.params);
  } catch (const DiscriminantError& e) {
    skip_reason = e.what();
  } catch (const Error& e) {
    const std::string what = e.what();
    skip_reason = what.rfind("alpha-complex", 0) == 0 ? what : "invalid-params: " + what;
  }
  if (!skip_reason.empty()) {
    for (const CheckEntry* c : task.checks) {
      ReportEntry entry;
      entry.check_id = c->info.id;
      entry.params = task.params;
      entry.n_max = config.grid.n_max;
      entry.residual = std::numeric_limits<double>::quiet_NaN();
      entry.tolerance = tolerance_for(config, c->info);
      entry.status = EntryStatus::skipped;
      entry.message = "skipped: " + skip_reason;
      out.push_back(entry);
    }
    return out;
  }
  PointContext ctx(*task.params, config.grid.n_max);
  for (const CheckEntry* c : task.checks) out.push_back(run_one(config, *c, &ctx));
  return out;
}

auto params_key(const std::optional<ModelParams>& p) {
  if (!p) return std::make_tuple(0, -1, 0, 0.0, 0.0);
  return std::make_tuple(1, p->dims, p->l, p->omega0, p->g0);
}

const char* status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::ok:
      return "ok";
    case EntryStatus::skipped:
      return "skipped";
    case EntryStatus::error:
      return "error";
  }
  return "ok";
}

std::string params_label(const ReportEntry& e) {
  if (!e.params) return "global";
  std::ostringstream s;
  s << "N=" << e.params->dims << " l=" << e.params->l << " omega0=" << e.params->omega0
    << " g0=" << e.params->g0 << " n<=" << e.n_max;
  return s.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

VerificationReport run_verification(const RunConfig& config) {
  validate_config(config);
  std::vector<const CheckEntry*> point_checks;
  std::vector<const CheckEntry*> global_checks;
  for (const auto& e : registry()) {
    const bool selected = config.checks.empty() ||
                          std::find(config.checks.begin(), config.checks.end(), e.info.id) !=
                              config.checks.end();
    if (!selected) continue;
    (e.info.per_point ? point_checks : global_checks).push_back(&e);
  }

  std::vector<Task> tasks;
  for (const CheckEntry* g : global_checks) tasks.push_back({std::nullopt, {g}});
  if (!point_checks.empty()) {
    for (int dims : config.grid.dims) {
      for (int l : config.grid.ls) {
        for (double w : config.grid.omega0s) {
          for (double g0 : config.grid.g0s) {
            tasks.push_back({ModelParams{dims, l, w, g0}, point_checks});
          }
        }
      }
    }
  }

  std::vector<std::vector<ReportEntry>> results(tasks.size());
  const unsigned threads = std::max(
      1u, std::min<unsigned>(config.threads ? config.threads : default_thread_count(),
                             static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_task(config, tasks[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  VerificationReport report;
  for (auto& r : results) {
    for (auto& e : r) report.entries.push_back(std::move(e));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) {
                     if (a.check_id != b.check_id) return a.check_id < b.check_id;
                     return params_key(a.params) < params_key(b.params);
                   });
  for (const auto& e : report.entries) {
    ++report.summary.total;
    if (e.status == EntryStatus::skipped) {
      ++report.summary.skipped;
    } else if (e.pass) {
      ++report.summary.passed;
    } else {
      ++report.summary.failed;
    }
  }
  return report;
}

int report_exit_code(const VerificationReport& report) {
  return report.summary.failed == 0 ? 0 : 1;
}

nlohmann::json report_to_json(const VerificationReport& report, bool include_runtime) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json j;
    j["check_id"] = e.check_id;
    if (e.params) {
      j["params"] = {{"dims", e.params->dims},
                     {"l", e.params->l},
                     {"omega0", e.params->omega0},
                     {"g0", e.params->g0},
                     {"n_max", e.n_max}};
    } else {
      j["params"] = nullptr;
    }
    j["residual"] = std::isfinite(e.residual) ? nlohmann::json(e.residual) : nullptr;
    j["tolerance"] = e.tolerance;
    j["pass"] = e.pass;
    j["status"] = status_name(e.status);
    j["message"] = e.message;
    if (include_runtime) j["runtime_ms"] = e.runtime_ms;
    entries.push_back(std::move(j));
  }
  nlohmann::json out;
  out["report_version"] = kReportVersion;
  out["entries"] = std::move(entries);
  out["summary"] = {{"total", report.summary.total},
                    {"passed", report.summary.passed},
                    {"failed", report.summary.failed},
                    {"skipped", report.summary.skipped}};
  return out;
}

std::string report_digest(const VerificationReport& report) {
  const std::string payload = report_to_json(report, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_to_text(const VerificationReport& report, bool include_runtime) {
  std::ostringstream out;
  for (const auto& e : report.entries) {
    const char* tag = e.status == EntryStatus::skipped ? "SKIP" : (e.pass ? "PASS" : "FAIL");
    out << tag << "  " << e.check_id << "  " << params_label(e);
    if (e.status != EntryStatus::skipped) {
      out << "  residual=" << fmt(e.residual) << " tol=" << fmt(e.tolerance);
    }
    if (include_runtime) out << "  " << fmt(e.runtime_ms) << " ms";
    if (!e.message.empty()) out << "  [" << e.message << "]";
    out << '\n';
  }
  const ReportSummary& s = report.summary;
  out << "summary: total=" << s.total << " passed=" << s.passed << " failed=" << s.failed
      << " skipped=" << s.skipped << " digest=" << report_digest(report) << '\n';
  return out.str();
}

std::string report_to_csv(const VerificationReport& report, bool include_runtime) {
  std::ostringstream out;
  out.precision(17);
  out << "check_id,dims,l,omega0,g0,n_max,residual,tolerance,pass,status";
  if (include_runtime) out << ",runtime_ms";
  out << ",message\n";
  for (const auto& e : report.entries) {
    out << e.check_id << ',';
    if (e.params) {
      out << e.params->dims << ',' << e.params->l << ',' << e.params->omega0 << ','
          << e.params->g0 << ',' << e.n_max << ',';
    } else {
      out << ",,,,,";
    }
    if (std::isfinite(e.residual)) out << e.residual;
    out << ',' << e.tolerance << ',' << (e.pass ? "true" : "false") << ','
        << status_name(e.status);
    if (include_runtime) out << ',' << e.runtime_ms;
    out << ',' << csv_quote(e.message) << '\n';
  }
  return out.str();
}

}  // namespace relosc
