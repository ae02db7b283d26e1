#include "relosc/oscillator_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "relosc/errors.hpp"
#include "relosc/plane_waves.hpp"

namespace relosc {

void validate(const ModelParams& p) {
  std::ostringstream msg;
  if (p.dims < 1) {
    msg << "dimension N must be >= 1, got " << p.dims;
  } else if (p.l < 0) {
    msg << "orbital quantum number l must be >= 0, got " << p.l;
  } else if (p.dims == 1 && p.l != 0) {
    msg << "N = 1 requires l = 0, got l = " << p.l;
  } else if (!(std::isfinite(p.omega0) && p.omega0 > 0.0)) {
    msg << "omega0 must be positive and finite, got " << p.omega0;
  } else if (!std::isfinite(p.g0)) {
    msg << "g0 must be finite";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

DerivedParams derive_params(const ModelParams& p) {
  validate(p);
  DerivedParams d;
  d.L = p.l + 0.5 * (p.dims - 3);
  const double w2 = p.omega0 * p.omega0;
  const double ll = d.L * (d.L + 1.0);
  // 1 - D, kept separately so the small-omega0 limit does not cancel.
  const double one_minus_d = 8.0 * p.g0 * w2 + 4.0 * w2 * ll;
  d.D = 1.0 - one_minus_d;
  const double scale = 1.0 + std::fabs(8.0 * p.g0 * w2) + std::fabs(4.0 * w2 * ll);
  if (std::fabs(d.D) <= 1e-13 * scale) d.D = 0.0;
  if (d.D < 0.0) {
    std::ostringstream msg;
    msg << "discriminant-negative: 1 - 8 g0 w0^2 - 4 w0^2 L(L+1) = " << d.D
        << " for omega0 = " << p.omega0 << ", g0 = " << p.g0 << ", L = " << d.L;
    throw DiscriminantError(msg.str());
  }
  const double root = std::sqrt(d.D);
  // (2/w0^2)(1 - sqrt D) = 2 (8 g0 + 4 L(L+1)) / (1 + sqrt D)
  const double inner_alpha = 1.0 + 2.0 * (8.0 * p.g0 + 4.0 * ll) / (1.0 + root);
  const double inner_nu = 1.0 + 2.0 * (1.0 + root) / w2;
  if (inner_alpha < 0.0) {
    std::ostringstream msg;
    msg << "alpha-complex: 1 + (2/w0^2)(1 - sqrt D) = " << inner_alpha
        << " < 0 for omega0 = " << p.omega0 << ", g0 = " << p.g0 << ", L = " << d.L;
    throw DomainError(msg.str());
  }
  d.alpha = 0.5 + 0.5 * std::sqrt(inner_alpha);
  d.nu = 0.5 + 0.5 * std::sqrt(inner_nu);
  d.s = 0.5 * (d.alpha + d.nu);
  return d;
}

double energy(unsigned n, const DerivedParams& d, double omega0) {
  return omega0 * (2.0 * n + d.alpha + d.nu);
}

double nonrel_energy(unsigned n, double L, double g0) {
  const double arg = (L + 0.5) * (L + 0.5) + 2.0 * g0;
  if (arg < 0.0) {
    std::ostringstream msg;
    msg << "nonrel_energy: (L+1/2)^2 + 2 g0 = " << arg << " < 0";
    throw DomainError(msg.str());
  }
  return 2.0 * n + 1.0 + std::sqrt(arg);
}

DecayHint radial_decay_hint(const DerivedParams& d, unsigned max_n) {
  return {2.0 * d.alpha + 2.0 * d.nu - 1.0 + 4.0 * max_n, std::numbers::pi};
}

double closed_form_norm_const(const DerivedParams& d, unsigned n) {
  const CdhParams cdh{d.alpha, d.nu, 0.5};
  return std::exp(0.5 * (std::log(2.0) - log_cdh_norm(n, cdh)));
}

AnalyticFunction radial_function(const ModelParams& p, const DerivedParams& d, unsigned n,
                                 double norm_const, double strip) {
  const CdhParams cdh{d.alpha, d.nu, 0.5};
  const double log_w = std::log(p.omega0);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex prefactor = sign * i_pow(d.alpha);
  const double log_c = std::log(norm_const);
  return AnalyticFunction(
      [=](Complex rho) {
        const Complex irho = kI * rho;
        const Complex rg = reciprocal_gamma(irho);
        if (rg == Complex(0.0)) return Complex(0.0);
        const Complex log_part =
            log_c + log_gamma(irho + d.alpha) + log_gamma(d.nu + irho) + irho * log_w;
        return prefactor * std::exp(log_part) * rg * cdh_poly(n, rho * rho, cdh);
      },
      strip);
}

RadialState radial_wavefunction(const ModelParams& p, unsigned n, double strip,
                                const QuadratureOptions& opts) {
  const DerivedParams d = derive_params(p);
  const double c0 = closed_form_norm_const(d, n);
  const AnalyticFunction trial = radial_function(p, d, n, c0, strip);
  const IntegralResult norm = integrate_halfline(
      [&](double x) { return std::norm(trial(Complex(x, 0.0))); }, radial_decay_hint(d, n),
      opts);
  if (!(norm.value > 0.0)) throw QuadratureError("radial_wavefunction: vanishing norm");
  const double c = c0 / std::sqrt(norm.value);
  RadialState state{p, d, n, energy(n, d, p.omega0), c, radial_function(p, d, n, c, strip),
                    norm.est_error / norm.value};
  return state;
}

namespace {

Complex rho2(Complex rho) { return generalized_degree(rho, 2.0); }

}  // namespace

LinearOperator quasipotential_op(const ModelParams& p) {
  const double k = 0.5 * (p.dims - 3);
  const double w2 = p.omega0 * p.omega0;
  const double g0 = p.g0;
  return multiply_by([=](Complex rho) {
           const Complex den = rho - kI * k;
           return 0.5 * w2 * rho * (rho + kI) * (rho + kI) / den + g0 / (rho * den);
         }) *
         shift(kI);
}

LinearOperator quasipotential_physical(int dims, double omega, double g, double lambda_bar) {
  const double k = 0.5 * (dims - 3);
  return multiply_by([=](Complex r) {
           const Complex il = kI * lambda_bar;
           const Complex den = r - il * k;
           return 0.5 * omega * omega * r * (r + il) * (r + il) / den + g / (r * den);
         }) *
         shift(kI * lambda_bar);
}

LinearOperator hamiltonian_reduced(const ModelParams& p) {
  const DerivedParams d = derive_params(p);
  const double ll = d.L * (d.L + 1.0);
  const double w2 = p.omega0 * p.omega0;
  const double g0 = p.g0;
  return cosh_shift() + multiply_by([=](Complex rho) {
                          const Complex r2 = rho2(rho);
                          return ll / (2.0 * r2) + 0.5 * w2 * r2 + g0 / r2;
                        }) * shift(kI);
}

LinearOperator hamiltonian_radial_N(const ModelParams& p) {
  validate(p);
  const double n = p.dims;
  const double ang = static_cast<double>(p.l) * (p.l + n - 2.0);
  const LinearOperator free =
      cosh_shift() +
      multiply_by([n](Complex rho) { return kI * (n - 1.0) / (2.0 * rho); }) * sinh_shift() +
      multiply_by([=](Complex rho) { return ang / (rho * (2.0 * rho - kI * (n - 3.0))); }) *
          shift(kI);
  return free + quasipotential_op(p);
}

AnalyticFunction radial_to_psi(const RadialState& state) {
  const int dims = state.params.dims;
  return LinearOperator::multiply_by(
             multiplier([dims](Complex rho) { return reduction_multiplier(rho, dims); }))
      .apply(state.fn);
}

}  // namespace relosc
