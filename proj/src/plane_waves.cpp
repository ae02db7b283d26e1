#include "relosc/plane_waves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relosc/errors.hpp"
#include "relosc/fd_operators.hpp"

namespace relosc {

namespace {

void require_dims(int dims, int min_dims) {
  if (dims < min_dims) {
    std::ostringstream msg;
    msg << "dimension must be at least " << min_dims << ", got " << dims;
    throw DomainError(msg.str());
  }
}

// d/dtheta and d^2/dtheta^2 of g by central differences, Richardson-extrapolated.
template <typename G>
std::pair<Complex, Complex> polar_derivatives(const G& g, double theta) {
  constexpr double h = 1e-3;
  auto first = [&](double step) { return (g(theta + step) - g(theta - step)) / (2.0 * step); };
  auto second = [&](double step) {
    return (g(theta + step) - 2.0 * g(theta) + g(theta - step)) / (step * step);
  };
  const Complex d1 = (4.0 * first(0.5 * h) - first(h)) / 3.0;
  const Complex d2 = (4.0 * second(0.5 * h) - second(h)) / 3.0;
  return {d1, d2};
}

}  // namespace

Complex xi_Nd(const PlaneWaveParams& pw, Complex rho, double costheta1) {
  const double base = std::cosh(pw.chi) - std::sinh(pw.chi) * costheta1;
  const Complex exponent = -0.5 * (pw.dims - 1) - kI * rho;
  return std::exp(exponent * std::log(base));
}

Complex xi_3d(const PlaneWaveParams& pw, Complex rho, double costheta) {
  return xi_Nd({pw.chi, 3}, rho, costheta);
}

std::vector<PolarSample> default_polar_grid() {
  std::vector<PolarSample> grid;
  for (double rho : {1.0, 3.0, 10.0}) {
    for (int k = 0; k <= 10; ++k) grid.push_back({rho, 0.3 + 0.25 * k});
  }
  return grid;
}

double free_hamiltonian_residual(const PlaneWaveParams& pw,
                                 std::span<const PolarSample> samples, double eigenvalue) {
  require_dims(pw.dims, 2);
  const int n = pw.dims;
  double worst = 0.0;
  for (const auto& sample : samples) {
    const double theta = sample.theta;
    const AnalyticFunction wave = multiplier(
        [pw, theta](Complex rho) { return xi_Nd(pw, rho, std::cos(theta)); });
    // Angular part of the Laplacian at fixed rho, as a function of rho.
    const AnalyticFunction angular = multiplier([pw, theta, n](Complex rho) {
      auto g = [&](double t) { return xi_Nd(pw, rho, std::cos(t)); };
      const auto [d1, d2] = polar_derivatives(g, theta);
      return d2 + (n - 2) * (std::cos(theta) / std::sin(theta)) * d1;
    });
    const LinearOperator radial =
        cosh_shift() +
        multiply_by([n](Complex rho) { return kI * (n - 1.0) / (2.0 * rho); }) * sinh_shift();
    const LinearOperator centrifugal =
        multiply_by([n](Complex rho) { return -1.0 / (rho * (2.0 * rho - kI * (n - 3.0))); }) *
        shift(kI);
    const Complex rho(sample.rho, 0.0);
    const Complex h0 = radial(wave)(rho) + centrifugal(angular)(rho);
    const Complex expected = eigenvalue * wave(rho);
    worst = std::max(worst, std::abs(h0 - expected) / std::abs(expected));
  }
  return worst;
}

double free_hamiltonian_residual(const PlaneWaveParams& pw,
                                 std::span<const PolarSample> samples) {
  return free_hamiltonian_residual(pw, samples, std::cosh(pw.chi));
}

Complex xi_physical(double p, double r, double costheta, double lambda_bar, int dims) {
  const double pl = p * lambda_bar;
  const double base = std::sqrt(1.0 + pl * pl) - pl * costheta;
  const Complex exponent = -0.5 * (dims - 1) - kI * (r / lambda_bar);
  return std::exp(exponent * std::log(base));
}

double plane_wave_limit_deviation(double p, std::span<const PolarSample> samples,
                                  double lambda_bar, int dims) {
  double worst = 0.0;
  for (const auto& s : samples) {
    const double c = std::cos(s.theta);
    const Complex euclid = std::exp(kI * (p * s.rho * c));
    worst = std::max(worst, std::abs(xi_physical(p, s.rho, c, lambda_bar, dims) - euclid));
  }
  return worst;
}

double weight_wN(double rho, int dims) {
  require_dims(dims, 1);
  if (!(rho > 0.0)) {
    std::ostringstream msg;
    msg << "weight_wN: rho must be positive, got " << rho;
    throw DomainError(msg.str());
  }
  const double m = std::abs(generalized_degree(rho, 0.5 * (dims - 1)));
  return std::pow(rho, 1.0 - dims) * m * m;
}

Complex reduction_multiplier(Complex rho, int dims) {
  require_dims(dims, 1);
  return 1.0 / mirrored_degree(rho, 0.5 * (dims - 1));
}

}  // namespace relosc
