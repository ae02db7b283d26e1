#include <cmath>
#include <vector>

#include "doctest.h"
#include "relosc/errors.hpp"
#include "relosc/symmetry_algebra.hpp"

using namespace relosc;

namespace {

const ModelParams kParams{3, 1, 0.2, 1.0};

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

const std::vector<double> kPoints{0.5, 1.0, 2.0, 5.0};

}  // namespace

TEST_CASE("ladder constants") {
  const DerivedParams d = derive_params(kParams);
  CHECK(kappa(0, d) == 0.0);
  CHECK(kappa(3, d) * kappa(3, d) == doctest::Approx(3.0 * (2.0 + d.alpha + d.nu)));
  for (unsigned n = 0; n < 5; ++n) {
    CHECK(f_of_energy(energy(n, d, 0.2), d, 0.2) == doctest::Approx(fE(n, d, 0.2)));
  }
  DerivedParams edge = d;
  edge.alpha = 0.5;
  CHECK_THROWS_AS(fE(0, edge, 0.2), DomainError);
  CHECK(aa_commutator_coefficient_residual(kParams, 8) < 1e-12);
}

TEST_CASE("momentum equals i [H, rho]") {
  const AnalyticFunction f = multiplier([](Complex r) { return std::exp(-0.3 * r * r) * r; });
  const AnalyticFunction a = build_momentum(kParams).apply(f);
  const AnalyticFunction b = build_momentum_commutator(kParams).apply(f);
  for (double x : kPoints) CHECK(rel(a(Complex(x)), b(Complex(x))) < 1e-12);
}

TEST_CASE("factorization and ladder operators on the eigenbasis") {
  const EigenBasis basis(kParams, 4);
  const DerivedParams& d = basis.derived();
  const double w = kParams.omega0;
  const LinearOperator fact = Complex(w) * (build_a_plus(kParams) * build_a_minus(kParams)) +
                              Complex(w * (d.alpha + d.nu)) * LinearOperator();
  const AnalyticFunction ground = basis.fn(0);
  const AnalyticFunction lowered = build_A_minus(kParams).apply(ground);
  for (double x : kPoints) {
    const Complex rho(x);
    CHECK(rel(fact.apply(basis.fn(2))(rho), basis.energy(2) * basis.fn(2)(rho)) < 1e-10);
    CHECK(std::abs(lowered(rho)) < 1e-12 * std::abs(ground(rho)));
  }
  // A+ R_n = sqrt(f(E_{n+1})) kappa_{n+1} R_{n+1}.
  const AnalyticFunction raised = build_A_plus(kParams).apply(basis.fn(1));
  const double c = std::sqrt(fE(2, d, w)) * kappa(2, d);
  for (double x : kPoints) CHECK(rel(raised(Complex(x)), c * basis.fn(2)(Complex(x))) < 1e-10);
}

TEST_CASE("pointwise su(1,1) action") {
  const EigenBasis basis(kParams, 4);
  const DerivedParams& d = basis.derived();
  const CoefficientState e2 = CoefficientState::basis_vector(kParams, 2);
  const AnalyticFunction up = K_pointwise(LadderDirection::raise, e2, basis);
  const AnalyticFunction down = K_pointwise(LadderDirection::lower, e2, basis);
  const AnalyticFunction k0 = K_pointwise(LadderDirection::weight, e2, basis);
  for (double x : kPoints) {
    const Complex rho(x);
    CHECK(rel(up(rho), kappa(3, d) * basis.fn(3)(rho)) < 1e-10);
    CHECK(rel(down(rho), kappa(2, d) * basis.fn(1)(rho)) < 1e-10);
    CHECK(rel(k0(rho), (2.0 + d.s) * basis.fn(2)(rho)) < 1e-10);
  }
}

TEST_CASE("[H, A+-] = +-2 w0 A+- on a superposition") {
  const EigenBasis basis(kParams, 3);
  const CoefficientState mix(kParams, {{0, 1.0}, {2, Complex(0.0, 0.5)}, {3, -0.25}});
  const std::vector<AnalyticFunction> tests{memoize(mix.evaluate(basis))};
  const LinearOperator h = hamiltonian_reduced(kParams);
  const LinearOperator up = build_A_plus(kParams);
  CHECK(commutator_residual(h, up, Complex(0.4) * up, tests, kPoints) < 1e-10);
  // The wrong sign is far off.
  CHECK(commutator_residual(h, up, Complex(-0.4) * up, tests, kPoints) > 0.1);
}

TEST_CASE("coefficient algebra and Casimir") {
  const DerivedParams d = derive_params(kParams);
  const CoefficientState mixed(kParams, {{0, 0.3}, {1, Complex(0.0, 1.0)}, {4, -2.0}});
  CHECK(su11_coefficient_residual(mixed) < 1e-13);
  CHECK(casimir(mixed).real() == doctest::Approx(d.s * (d.s - 1.0)).epsilon(1e-13));
  CHECK(std::fabs(casimir(mixed).imag()) < 1e-12);
  CHECK(K_action(LadderDirection::lower, CoefficientState::basis_vector(kParams, 0)).is_zero());
  CHECK_THROWS_AS(casimir(CoefficientState(kParams)), ZeroStateError);
  const CoefficientState g3 = generate_coefficients_via_ladder(kParams, 3);
  CHECK(std::abs(g3.coeff(3) - 1.0) < 1e-14);
  CHECK(g3.coeffs().size() == 1);
}

TEST_CASE("states generated by the ladder") {
  const RadialState direct = radial_wavefunction(kParams, 3);
  const RadialState built = generate_state_via_ladder(kParams, 3);
  CHECK(built.energy == doctest::Approx(direct.energy));
  for (double x : kPoints) CHECK(rel(built.fn(Complex(x)), direct.fn(Complex(x))) < 1e-10);
  CHECK_THROWS_AS(generate_state_via_ladder(kParams, kMaxPointwiseLadder + 1),
                  StripExhaustedError);
}
