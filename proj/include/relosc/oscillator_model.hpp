#pragma once

// The relativistic N-dimensional singular oscillator.
//
// Units: hbar = m = c = 1, so the Compton wavelength is 1, rho = r / lambda_bar
// is dimensionless, energies come out in units of mc^2 and hbar*omega becomes
// omega0 = hbar*omega / mc^2.

#include <vector>

#include "relosc/fd_operators.hpp"
#include "relosc/quadrature.hpp"

namespace relosc {

struct ModelParams {
  int dims = 3;         // N >= 1
  int l = 0;            // orbital quantum number
  double omega0 = 0.1;  // hbar omega / mc^2, > 0
  double g0 = 0.0;      // m g / hbar^2
};

struct DerivedParams {
  double L = 0.0;      // l + (N - 3)/2
  double alpha = 0.0;  // alpha_L
  double nu = 0.0;     // nu_L
  double s = 0.0;      // Bargmann index (alpha + nu)/2
  double D = 0.0;      // 1 - 8 g0 w0^2 - 4 w0^2 L(L+1)
};

// Throws ValidationError for N < 1, l < 0, N = 1 with l != 0, omega0 <= 0 or
// non-finite inputs.
void validate(const ModelParams& p);

// Throws DiscriminantError when D < 0 and DomainError when alpha would be
// complex (possible only for L(L+1) < 0).
DerivedParams derive_params(const ModelParams& p);

// E_n = omega0 (2n + alpha + nu), in mc^2.
double energy(unsigned n, const DerivedParams& d, double omega0);

// omega0 -> 0 limit of (E_n - mc^2) / hbar omega: 2n + 1 + sqrt((L+1/2)^2 + 2 g0).
double nonrel_energy(unsigned n, double L, double g0);

inline constexpr double kDefaultWavefunctionStrip = 20.0;

struct RadialState {
  ModelParams params;
  DerivedParams derived;
  unsigned n = 0;
  double energy = 0.0;
  double norm_const = 0.0;  // C_{Nnl} > 0
  AnalyticFunction fn;
  double norm_est_error = 0.0;
};

// Envelope of R_m conj(R_n) for m, n <= max_n; drives quadrature truncation.
DecayHint radial_decay_hint(const DerivedParams& d, unsigned max_n);

// sqrt(2 / h_n) with h_n the continuous dual Hahn norm at (alpha, nu, 1/2).
double closed_form_norm_const(const DerivedParams& d, unsigned n);

// R_n(rho) = (-1)^n C (-rho)^(alpha) omega0^(i rho) Gamma(nu + i rho) S_n(rho^2; alpha, nu, 1/2)
// with the given C. The sign (-1)^n makes every ladder coefficient positive.
AnalyticFunction radial_function(const ModelParams& p, const DerivedParams& d, unsigned n,
                                 double norm_const,
                                 double strip = kDefaultWavefunctionStrip);

// Normalized eigenfunction. C is fixed by quadrature of int |R|^2 = 1, starting
// from the closed-form constant. The singularities of R sit on the imaginary
// axis only, so the strip may be wide.
RadialState radial_wavefunction(const ModelParams& p, unsigned n,
                                double strip = kDefaultWavefunctionStrip,
                                const QuadratureOptions& opts = {});

// The quasipotential of the singular oscillator acting on psi (dimensionless):
// [w0^2/2 rho (rho+i)^2 / (rho - i k) + g0 / (rho (rho - i k))] e^{i d}, k = (N-3)/2.
LinearOperator quasipotential_op(const ModelParams& p);

// Same operator in physical units with hbar = m = 1 and a free Compton
// wavelength, acting on functions of r. As lambda_bar -> 0 it tends to
// omega^2 r^2 / 2 + g / r^2.
LinearOperator quasipotential_physical(int dims, double omega, double g, double lambda_bar);

// Reduced radial Hamiltonian acting on R:
// cosh(i d) + [L(L+1)/(2 rho^(2)) + w0^2 rho^(2) / 2 + g0 / rho^(2)] e^{i d}.
LinearOperator hamiltonian_reduced(const ModelParams& p);

// Unreduced N-dimensional radial Hamiltonian acting on psi, including the
// quasipotential.
LinearOperator hamiltonian_radial_N(const ModelParams& p);

// Multiplier [(-rho)^((N-1)/2)]^{-1} turning R into psi.
AnalyticFunction radial_to_psi(const RadialState& state);

}  // namespace relosc
