#pragma once

// Relativistic plane waves in 3 and N dimensions, the configurational weight
// w_N and the multiplier that reduces the N-dimensional radial equation to
// its three-dimensional form.
//
// The momentum is aligned with the polar axis, so all angular dependence is
// through the single polar angle theta and the angular Laplacian reduces to
// d^2/dtheta^2 + (N-2) cot(theta) d/dtheta.

#include <span>
#include <vector>

#include "relosc/special_functions.hpp"

namespace relosc {

struct PlaneWaveParams {
  double chi = 0.0;  // rapidity: p = mc sinh(chi), E_p = mc^2 cosh(chi)
  int dims = 3;
};

struct PolarSample {
  double rho = 1.0;
  double theta = 1.0;
};

// (cosh chi - sinh chi cos theta)^(-1 - i rho)
Complex xi_3d(const PlaneWaveParams& pw, Complex rho, double costheta);

// (cosh chi - sinh chi cos theta)^(-(N-1)/2 - i rho)
Complex xi_Nd(const PlaneWaveParams& pw, Complex rho, double costheta1);

// theta in {0.3, 0.55, ..., 2.8} crossed with rho in {1, 3, 10}.
std::vector<PolarSample> default_polar_grid();

// max |H0 xi - E xi| / |E xi| over the samples, with E = cosh chi unless an
// explicit eigenvalue is given. Radial shifts are exact; angular derivatives
// use central differences (h = 1e-3) with one Richardson step.
double free_hamiltonian_residual(const PlaneWaveParams& pw,
                                 std::span<const PolarSample> samples);
double free_hamiltonian_residual(const PlaneWaveParams& pw,
                                 std::span<const PolarSample> samples, double eigenvalue);

// Plane wave in physical units (hbar = m = 1) with Compton wavelength
// lambda_bar: base sqrt(1 + (p lambda)^2) - p lambda cos theta, exponent
// -(N-1)/2 - i r / lambda.
Complex xi_physical(double p, double r, double costheta, double lambda_bar, int dims = 3);

// max over the samples of |xi_physical - exp(i p r cos theta)|; O(lambda_bar).
double plane_wave_limit_deviation(double p, std::span<const PolarSample> samples,
                                  double lambda_bar, int dims = 3);

// rho^(1-N) |rho^((N-1)/2)|^2. Requires rho > 0 and N >= 1.
double weight_wN(double rho, int dims);

// [(-rho)^((N-1)/2)]^{-1}; infinite at rho = 0 for N > 1.
Complex reduction_multiplier(Complex rho, int dims);

}  // namespace relosc
