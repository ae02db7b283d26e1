#include <cmath>
#include <numbers>

#include "doctest.h"
#include "relosc/errors.hpp"
#include "relosc/plane_waves.hpp"

using namespace relosc;

TEST_CASE("plane wave values") {
  CHECK(std::abs(xi_3d({0.0, 3}, Complex(2.0), 0.4) - 1.0) < 1e-15);
  const double base = std::cosh(0.5) - std::sinh(0.5) * 0.3;
  const Complex want = std::pow(base, -1.0) * std::exp(-kI * 1.7 * std::log(base));
  CHECK(std::abs(xi_3d({0.5, 3}, Complex(1.7), 0.3) - want) < 1e-14);
  CHECK(std::abs(xi_Nd({0.5, 5}, Complex(1.7), 0.3) - want / base) < 1e-14);
}

TEST_CASE("free Hamiltonian eigenvalue") {
  const auto grid = default_polar_grid();
  CHECK(grid.size() == 33);
  for (int dims : {2, 3, 5}) {
    CHECK(free_hamiltonian_residual({0.0, dims}, grid) < 1e-12);
    CHECK(free_hamiltonian_residual({0.5, dims}, grid) < 1e-6);
    CHECK(free_hamiltonian_residual({0.5, dims}, grid, std::cosh(0.5) + 0.01) > 1e-3);
  }
  CHECK_THROWS_AS(free_hamiltonian_residual({0.5, 1}, grid), DomainError);
}

TEST_CASE("non-relativistic plane-wave limit is first order") {
  const auto grid = default_polar_grid();
  const double a = plane_wave_limit_deviation(1.0, grid, 0.01);
  const double b = plane_wave_limit_deviation(1.0, grid, 0.005);
  CHECK(a / b == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("configurational weights") {
  for (double rho : {0.2, 1.0, 4.0}) {
    CHECK(weight_wN(rho, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weight_wN(rho, 2) == doctest::Approx(std::tanh(std::numbers::pi * rho)).epsilon(1e-13));
    CHECK(weight_wN(rho, 5) == doctest::Approx((1.0 + rho * rho) / (rho * rho)).epsilon(1e-14));
    CHECK(std::abs(reduction_multiplier(rho, 3) + 1.0 / rho) < 1e-15);
  }
  CHECK_THROWS_AS(weight_wN(0.0, 3), DomainError);
}
