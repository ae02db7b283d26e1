#include "relosc/symmetry_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relosc/errors.hpp"

namespace relosc {

double kappa(unsigned n, const DerivedParams& d) {
  return std::sqrt(n * (n + d.alpha + d.nu - 1.0));
}

double f_of_energy(double x, const DerivedParams& d, double omega0) {
  return (x + omega0 * (d.alpha - d.nu - 1.0)) * (x + omega0 * (d.nu - d.alpha - 1.0));
}

double fE(unsigned n, const DerivedParams& d, double omega0) {
  const double value =
      omega0 * omega0 * (2.0 * n + 2.0 * d.alpha - 1.0) * (2.0 * n + 2.0 * d.nu - 1.0);
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << "f(E_" << n << ") = " << value << " is not positive (alpha = " << d.alpha
        << ", nu = " << d.nu << "); f^{-1/2}(H) is undefined";
    throw DomainError(msg.str());
  }
  return value;
}

double aa_commutator_rhs(double x, double omega0) {
  return omega0 * x * (1.0 + 2.0 / (omega0 * omega0) * (x * x - 1.0));
}

LinearOperator position_op() {
  return multiply_by([](Complex rho) { return rho; });
}

LinearOperator build_a_minus(const ModelParams& p) {
  const DerivedParams d = derive_params(p);
  const double w = p.omega0;
  const LinearOperator factor = multiply_by(
      [=](Complex rho) { return (d.nu + kI * rho) * (1.0 + d.alpha / (kI * rho)); });
  return (1.0 / std::sqrt(2.0 * w)) *
         (shift(-0.5 * kI) - Complex(w) * (shift(0.5 * kI) * factor));
}

LinearOperator build_a_plus(const ModelParams& p) {
  const DerivedParams d = derive_params(p);
  const double w = p.omega0;
  const LinearOperator factor = multiply_by(
      [=](Complex rho) { return (d.nu - kI * rho) * (1.0 - d.alpha / (kI * rho)); });
  return (1.0 / std::sqrt(2.0 * w)) *
         (shift(-0.5 * kI) - Complex(w) * (factor * shift(0.5 * kI)));
}

LinearOperator build_momentum(const ModelParams& p) {
  const DerivedParams d = derive_params(p);
  const double w2 = p.omega0 * p.omega0;
  const double c = p.g0 + 0.5 * d.L * (d.L + 1.0);
  const LinearOperator potential = multiply_by([=](Complex rho) {
    const Complex r2 = generalized_degree(rho, 2.0);
    return 0.5 * w2 * r2 + c / r2;
  });
  return Complex(-1.0) * (sinh_shift() + potential * shift(kI));
}

LinearOperator build_momentum_commutator(const ModelParams& p) {
  return kI * commutator(hamiltonian_reduced(p), position_op());
}

namespace {

LinearOperator ladder(const ModelParams& p, double sign) {
  const DerivedParams d = derive_params(p);
  const double w = p.omega0;
  const double c = 2.0 * p.g0 + d.L * (d.L + 1.0);
  const LinearOperator x =
      Complex(w) * position_op() + Complex(0.0, sign) * build_momentum(p);
  const LinearOperator barrier = multiply_by([c](Complex rho) { return c / (1.0 + rho * rho); });
  return (1.0 / (2.0 * w)) * (x * x - barrier);
}

}  // namespace

LinearOperator build_A_minus(const ModelParams& p) { return ladder(p, +1.0); }
LinearOperator build_A_plus(const ModelParams& p) { return ladder(p, -1.0); }

// ---------------------------------------------------------------------------

EigenBasis::EigenBasis(const ModelParams& p, unsigned max_n, double strip)
    : params_(p), derived_(derive_params(p)) {
  states_.reserve(max_n + 1);
  for (unsigned n = 0; n <= max_n; ++n) {
    RadialState s = radial_wavefunction(p, n, strip);
    s.fn = memoize(s.fn);
    states_.push_back(std::move(s));
  }
}

const RadialState& EigenBasis::state(unsigned n) const {
  if (n >= states_.size()) {
    std::ostringstream msg;
    msg << "EigenBasis: state " << n << " beyond basis size " << states_.size();
    throw DomainError(msg.str());
  }
  return states_[n];
}

double EigenBasis::energy(unsigned n) const {
  return relosc::energy(n, derived_, params_.omega0);
}

CoefficientState::CoefficientState(const ModelParams& p, std::map<unsigned, Complex> coeffs)
    : params_(p), derived_(derive_params(p)), coeffs_(std::move(coeffs)) {}

CoefficientState CoefficientState::basis_vector(const ModelParams& p, unsigned n) {
  return CoefficientState(p, {{n, Complex(1.0)}});
}

Complex CoefficientState::coeff(unsigned n) const {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

unsigned CoefficientState::max_index() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

bool CoefficientState::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& kv) { return kv.second == Complex(0.0); });
}

double CoefficientState::norm_squared() const {
  double acc = 0.0;
  for (const auto& [n, c] : coeffs_) acc += std::norm(c);
  return acc;
}

double CoefficientState::max_abs() const {
  double m = 0.0;
  for (const auto& [n, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

CoefficientState CoefficientState::operator+(const CoefficientState& o) const {
  auto out = coeffs_;
  for (const auto& [n, c] : o.coeffs_) out[n] += c;
  return CoefficientState(params_, std::move(out));
}

CoefficientState CoefficientState::operator-(const CoefficientState& o) const {
  return *this + o * Complex(-1.0);
}

CoefficientState CoefficientState::operator*(Complex c) const {
  auto out = coeffs_;
  for (auto& [n, v] : out) v *= c;
  return CoefficientState(params_, std::move(out));
}

AnalyticFunction CoefficientState::evaluate(const EigenBasis& basis) const {
  std::vector<std::pair<Complex, AnalyticFunction>> terms;
  for (const auto& [n, c] : coeffs_) terms.emplace_back(c, basis.fn(n));
  if (terms.empty()) return constant_function(0.0);
  return linear_combination(terms);
}

CoefficientState K_action(LadderDirection dir, const CoefficientState& state) {
  const DerivedParams& d = state.derived();
  std::map<unsigned, Complex> out;
  for (const auto& [n, c] : state.coeffs()) {
    switch (dir) {
      case LadderDirection::raise:
        out[n + 1] += kappa(n + 1, d) * c;
        break;
      case LadderDirection::lower:
        if (n > 0) out[n - 1] += kappa(n, d) * c;
        break;
      case LadderDirection::weight:
        out[n] += (n + d.s) * c;
        break;
    }
  }
  return CoefficientState(state.params(), std::move(out));
}

AnalyticFunction K_pointwise(LadderDirection dir, const CoefficientState& state,
                             const EigenBasis& basis) {
  const ModelParams& p = state.params();
  const DerivedParams& d = state.derived();
  std::vector<std::pair<Complex, AnalyticFunction>> terms;
  for (const auto& [n, c] : state.coeffs()) {
    double weight = 1.0;
    if (dir == LadderDirection::raise) weight = 1.0 / std::sqrt(fE(n + 1, d, p.omega0));
    if (dir == LadderDirection::lower) weight = 1.0 / std::sqrt(fE(n, d, p.omega0));
    terms.emplace_back(c * weight, basis.fn(n));
  }
  const AnalyticFunction spectral = memoize(
      terms.empty() ? constant_function(0.0) : linear_combination(terms));
  switch (dir) {
    case LadderDirection::raise:
      return build_A_plus(p).apply(spectral);
    case LadderDirection::lower:
      return build_A_minus(p).apply(spectral);
    case LadderDirection::weight:
      break;
  }
  return ((1.0 / (2.0 * p.omega0)) * hamiltonian_reduced(p)).apply(spectral);
}

Complex casimir(const CoefficientState& state) {
  if (state.is_zero()) throw ZeroStateError("casimir: zero state has no Rayleigh quotient");
  const CoefficientState k0 = K_action(LadderDirection::weight, state);
  const CoefficientState k0k0 = K_action(LadderDirection::weight, k0);
  const CoefficientState kpkm =
      K_action(LadderDirection::raise, K_action(LadderDirection::lower, state));
  const CoefficientState k2 = k0k0 - k0 - kpkm;
  Complex num = 0.0;
  for (const auto& [n, c] : state.coeffs()) num += std::conj(c) * k2.coeff(n);
  return num / state.norm_squared();
}

double su11_coefficient_residual(const CoefficientState& state) {
  auto K = [](LadderDirection dir, const CoefficientState& s) { return K_action(dir, s); };
  using D = LadderDirection;
  auto relative = [](const CoefficientState& diff, const CoefficientState& rhs) {
    const double scale = std::max(rhs.max_abs(), 1e-300);
    return diff.max_abs() / scale;
  };
  const CoefficientState kp = K(D::raise, state);
  const CoefficientState km = K(D::lower, state);
  const CoefficientState k0 = K(D::weight, state);
  const CoefficientState c1 = K(D::weight, kp) - K(D::raise, k0);  // [K0, K+]
  const CoefficientState c2 = K(D::weight, km) - K(D::lower, k0);  // [K0, K-]
  const CoefficientState c3 = K(D::lower, kp) - K(D::raise, km);   // [K-, K+]
  return std::max({relative(c1 - kp, kp), relative(c2 + km, km),
                   relative(c3 - k0 * Complex(2.0), k0 * Complex(2.0))});
}

double aa_commutator_coefficient_residual(const ModelParams& p, unsigned max_n) {
  const DerivedParams d = derive_params(p);
  const double w = p.omega0;
  double worst = 0.0;
  for (unsigned n = 0; n <= max_n; ++n) {
    const double k1 = kappa(n + 1, d);
    const double k0 = kappa(n, d);
    const double lhs = fE(n + 1, d, w) * k1 * k1 - fE(n, d, w) * k0 * k0;
    const double rhs = aa_commutator_rhs(energy(n, d, w), w);
    worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(rhs));
  }
  return worst;
}

double commutator_residual(const LinearOperator& x, const LinearOperator& y,
                           const LinearOperator& rhs,
                           const std::vector<AnalyticFunction>& test_functions,
                           const std::vector<double>& points) {
  double worst = 0.0;
  for (const auto& f : test_functions) {
    const AnalyticFunction xy = x.apply(y.apply(f));
    const AnalyticFunction yx = y.apply(x.apply(f));
    const AnalyticFunction r = rhs.apply(f);
    for (double pt : points) {
      const Complex rho(pt, 0.0);
      const Complex a = xy(rho);
      const Complex b = yx(rho);
      const Complex c = r(rho);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
      worst = std::max(worst, std::abs(a - b - c) / scale);
    }
  }
  return worst;
}

RadialState generate_state_via_ladder(const ModelParams& p, unsigned n, double strip) {
  if (n > kMaxPointwiseLadder) {
    std::ostringstream msg;
    msg << "generate_state_via_ladder: n = " << n << " exceeds the pointwise limit "
        << kMaxPointwiseLadder;
    throw StripExhaustedError(msg.str());
  }
  const DerivedParams d = derive_params(p);
  const RadialState ground = radial_wavefunction(p, 0, strip);
  const LinearOperator raise = build_A_plus(p);
  AnalyticFunction g = memoize(ground.fn);
  double log_norm = 0.0;  // log of n! (alpha + nu)_n
  for (unsigned k = 0; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(fE(k + 1, d, p.omega0));
    g = memoize((Complex(scale) * raise).apply(g));
    log_norm += std::log((k + 1.0) * (d.alpha + d.nu + k));
  }
  const double prefactor = std::exp(-0.5 * log_norm);
  AnalyticFunction fn = LinearOperator::scale(prefactor).apply(g);
  return RadialState{p,   d, n, energy(n, d, p.omega0), closed_form_norm_const(d, n),
                     fn, 0.0};
}

CoefficientState generate_coefficients_via_ladder(const ModelParams& p, unsigned n) {
  CoefficientState state = CoefficientState::basis_vector(p, 0);
  const DerivedParams& d = state.derived();
  double log_norm = 0.0;
  for (unsigned k = 0; k < n; ++k) {
    state = K_action(LadderDirection::raise, state);
    log_norm += std::log((k + 1.0) * (d.alpha + d.nu + k));
  }
  return state * Complex(std::exp(-0.5 * log_norm));
}

}  // namespace relosc
