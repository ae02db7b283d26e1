#include <cmath>

#include "doctest.h"
#include "relosc/errors.hpp"
#include "relosc/oscillator_model.hpp"
#include "relosc/plane_waves.hpp"

using namespace relosc;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

const ModelParams kExample{3, 1, 0.1, 1.0};

}  // namespace

TEST_CASE("derived parameters of the reference point") {
  const DerivedParams d = derive_params(kExample);
  CHECK(d.L == 1.0);
  CHECK(d.D == doctest::Approx(0.84).epsilon(1e-14));
  CHECK(d.alpha == doctest::Approx(2.6033884687431373).epsilon(1e-13));
  CHECK(d.nu == doctest::Approx(10.301824164386872).epsilon(1e-13));
  CHECK(d.s == doctest::Approx(6.452606316565).epsilon(1e-12));
  CHECK(d.s * (d.s - 1.0) == doctest::Approx(35.183521960010).epsilon(1e-12));
  CHECK(energy(0, d, 0.1) == doctest::Approx(1.2905212633130009).epsilon(1e-14));
  CHECK(energy(3, d, 0.1) - energy(2, d, 0.1) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("free oscillator and degenerate limits") {
  const DerivedParams d = derive_params({3, 0, 0.2, 0.0});
  CHECK(d.alpha == doctest::Approx(1.0).epsilon(1e-14));
  // D = 0 exactly at g0 = 12.5 for w0 = 0.1, L = 0: alpha and nu coincide.
  const DerivedParams e = derive_params({3, 0, 0.1, 12.5});
  CHECK(e.D == 0.0);
  CHECK(e.alpha == doctest::Approx(e.nu).epsilon(1e-14));
  CHECK(std::isfinite(e.alpha));
  const DerivedParams f = derive_params({3, 0, 0.1, 12.5 - 1e-9});
  CHECK(f.alpha == doctest::Approx(e.alpha).epsilon(1e-4));
  // N = 1 with l = 0 and N = 2 with l = 0 are accepted.
  CHECK(derive_params({1, 0, 0.1, 0.5}).L == -1.0);
  CHECK(derive_params({2, 0, 0.1, 0.5}).L == -0.5);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(derive_params({0, 0, 0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(derive_params({3, -1, 0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(derive_params({1, 1, 0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(derive_params({3, 0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(derive_params({3, 0, 0.1, NAN}), ValidationError);
  try {
    derive_params({3, 2, 1.0, 1.0});
    FAIL("expected a discriminant error");
  } catch (const DiscriminantError& e) {
    CHECK(std::string(e.what()).rfind("discriminant-negative", 0) == 0);
  }
}

TEST_CASE("non-relativistic spectrum") {
  CHECK(nonrel_energy(0, 0.0, 0.0) == doctest::Approx(1.5));
  CHECK(nonrel_energy(2, 0.0, 0.0) == doctest::Approx(5.5));
  CHECK(nonrel_energy(0, 0.0, 1.5) == doctest::Approx(2.8027756377319946).epsilon(1e-14));
  CHECK_THROWS_AS(nonrel_energy(0, 0.0, -1.0), DomainError);
  const DerivedParams d = derive_params({3, 0, 1e-4, 0.0});
  CHECK((energy(1, d, 1e-4) - 1.0) / 1e-4 == doctest::Approx(3.5).epsilon(1e-3));
}

TEST_CASE("normalized eigenfunctions") {
  const RadialState r0 = radial_wavefunction(kExample, 0);
  const RadialState r2 = radial_wavefunction(kExample, 2);
  CHECK(rel(r0.fn(Complex(1.7)), {0.077629873334424375, 0.087482941128670439}) < 1e-11);
  CHECK(rel(r2.fn(Complex(3.2)), {0.092818423278140274, 0.30413974365432108}) < 1e-11);
  CHECK(r2.norm_const ==
        doctest::Approx(closed_form_norm_const(r2.derived, 2)).epsilon(1e-9));
  CHECK(r0.norm_est_error < 1e-10);
  CHECK(r0.fn(Complex(0.0)) == Complex(0.0));
  CHECK(std::norm(r0.fn(Complex(1e-8))) < 1e-12);
}

TEST_CASE("eigen-equation of the reduced Hamiltonian") {
  const LinearOperator h = hamiltonian_reduced(kExample);
  for (unsigned n : {0u, 3u}) {
    const RadialState s = radial_wavefunction(kExample, n);
    const AnalyticFunction hr = h.apply(s.fn);
    for (double x : {0.3, 2.0, 20.0}) {
      CHECK(rel(hr(Complex(x)), s.energy * s.fn(Complex(x))) < 1e-10);
      // A shifted eigenvalue is clearly rejected.
      CHECK(rel(hr(Complex(x)), (s.energy + 0.01) * s.fn(Complex(x))) > 1e-3);
    }
  }
}

TEST_CASE("N-dimensional operator pieces") {
  const ModelParams p{3, 2, 0.1, 0.5};
  const AnalyticFunction one = constant_function(1.0);
  const Complex rho(1.3, 0.0);
  // On a constant the sinh term vanishes.
  const Complex want = 1.0 + 6.0 / (rho * 2.0 * rho) +
                       0.5 * 0.01 * (rho + kI) * (rho + kI) + 0.5 / (rho * rho);
  CHECK(rel(hamiltonian_radial_N(p).apply(one)(rho), want) < 1e-14);
  // The physical quasipotential tends to w^2 r^2 / 2 + g / r^2.
  const Complex v = quasipotential_physical(5, 0.7, 0.3, 1e-7).apply(one)(rho);
  CHECK(rel(v, 0.5 * 0.49 * 1.69 + 0.3 / 1.69) < 1e-6);
}

TEST_CASE("reduction to the N-dimensional equation") {
  for (int dims : {2, 3, 5, 8}) {
    const ModelParams p{dims, 1, 0.1, 1.0};
    const RadialState s = radial_wavefunction(p, 1);
    const AnalyticFunction psi = radial_to_psi(s);
    const AnalyticFunction image = hamiltonian_radial_N(p).apply(psi);
    for (double x : {0.5, 3.0, 10.0}) {
      CHECK(rel(image(Complex(x)), s.energy * psi(Complex(x))) < 1e-10);
    }
  }
}
