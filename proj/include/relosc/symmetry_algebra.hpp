#pragma once

// Dynamical symmetry of the reduced Hamiltonian: the factorization operators
// a-/a+, the generalized momentum P, the ladder operators A-/A+ and the
// su(1,1) generators K-, K+, K0.
//
// Every identity is available in two representations. Pointwise, operators
// are LinearOperator trees evaluated by complex displacement. In coefficient
// space, states are finite expansions over the eigenbasis {R_n} and the
// generators act through kappa_n = sqrt(n (n + alpha + nu - 1)).
//
// Functions of the Hamiltonian (f^{-1/2}(H)) exist only spectrally: they are
// the scalars f(E_n)^{-1/2} on eigencomponents, so K+- act pointwise only on
// finite eigenbasis expansions.

#include <map>
#include <vector>

#include "relosc/fd_operators.hpp"
#include "relosc/oscillator_model.hpp"

namespace relosc {

// kappa_n = sqrt(n (n + alpha + nu - 1)); kappa_0 = 0.
double kappa(unsigned n, const DerivedParams& d);

// f(x) = [x + w0 (alpha - nu - 1)] [x + w0 (nu - alpha - 1)], x in mc^2.
double f_of_energy(double x, const DerivedParams& d, double omega0);

// f(E_n) = w0^2 (2n + 2 alpha - 1)(2n + 2 nu - 1). Throws DomainError when
// it is not positive (alpha = 1/2 edge), since f^{-1/2} is then undefined.
double fE(unsigned n, const DerivedParams& d, double omega0);

// Right side of [A-, A+] on an eigenvalue x: w0 x {1 + (2/w0^2)(x^2 - 1)}.
double aa_commutator_rhs(double x, double omega0);

// Half-step factorization operators; w0 (a+ a- + alpha + nu) = H.
LinearOperator build_a_minus(const ModelParams& p);
LinearOperator build_a_plus(const ModelParams& p);

// Generalized momentum in units of mc:
// P = -[sinh(i d) + (w0^2 rho^(2) / 2 + (g0 + L(L+1)/2) / rho^(2)) e^{i d}].
LinearOperator build_momentum(const ModelParams& p);
// The same operator as i [H, rho], built from the Hamiltonian.
LinearOperator build_momentum_commutator(const ModelParams& p);

// A-+ = (1/2w0) [(w0 rho +- i P)^2 - (2 g0 + L(L+1)) / (1 + rho^2)].
LinearOperator build_A_minus(const ModelParams& p);
LinearOperator build_A_plus(const ModelParams& p);

LinearOperator position_op();

// The eigenfunctions R_0..R_max_n for one parameter point, memoized.
class EigenBasis {
 public:
  EigenBasis(const ModelParams& p, unsigned max_n,
             double strip = kDefaultWavefunctionStrip);

  const ModelParams& params() const { return params_; }
  const DerivedParams& derived() const { return derived_; }
  unsigned max_n() const { return static_cast<unsigned>(states_.size()) - 1; }
  const RadialState& state(unsigned n) const;
  const AnalyticFunction& fn(unsigned n) const { return state(n).fn; }
  double energy(unsigned n) const;

 private:
  ModelParams params_;
  DerivedParams derived_;
  std::vector<RadialState> states_;
};

// Finite expansion sum_n c_n R_n.
class CoefficientState {
 public:
  CoefficientState(const ModelParams& p, std::map<unsigned, Complex> coeffs = {});
  static CoefficientState basis_vector(const ModelParams& p, unsigned n);

  const ModelParams& params() const { return params_; }
  const DerivedParams& derived() const { return derived_; }
  const std::map<unsigned, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(unsigned n) const;
  unsigned max_index() const;
  bool is_zero() const;
  double norm_squared() const;

  CoefficientState operator+(const CoefficientState& o) const;
  CoefficientState operator-(const CoefficientState& o) const;
  CoefficientState operator*(Complex c) const;

  // Largest |c_n|.
  double max_abs() const;

  // Pointwise evaluator sum_n c_n R_n(rho); the basis must cover max_index.
  AnalyticFunction evaluate(const EigenBasis& basis) const;

 private:
  ModelParams params_;
  DerivedParams derived_;
  std::map<unsigned, Complex> coeffs_;
};

enum class LadderDirection { raise, lower, weight };

// Coefficient-space action: K+ c_n -> kappa_{n+1} c_n at n+1, K- c_n ->
// kappa_n c_n at n-1, K0 c_n -> (E_n / 2 w0) c_n = (n + s) c_n.
CoefficientState K_action(LadderDirection dir, const CoefficientState& state);

// Pointwise action through the operators: K+ = f^{-1/2}(H) A+ and
// K- = A- f^{-1/2}(H) on each eigencomponent, K0 = H / 2 w0.
AnalyticFunction K_pointwise(LadderDirection dir, const CoefficientState& state,
                             const EigenBasis& basis);

// Rayleigh quotient of K^2 = K0 (K0 - 1) - K+ K-. Throws ZeroStateError.
Complex casimir(const CoefficientState& state);

// max over the su(1,1) relations [K0, K+-] = +-K+-, [K-, K+] = 2 K0 applied to
// the state, relative to the largest coefficient of the right-hand sides.
double su11_coefficient_residual(const CoefficientState& state);

// max_n<=max_n |f(E_{n+1}) kappa_{n+1}^2 - f(E_n) kappa_n^2 - rhs(E_n)| / |rhs(E_n)|.
double aa_commutator_coefficient_residual(const ModelParams& p, unsigned max_n);

// max over test functions and points of |(XY - YX - rhs) f| divided by the
// largest of |XY f|, |YX f|, |rhs f| at that point.
double commutator_residual(const LinearOperator& x, const LinearOperator& y,
                           const LinearOperator& rhs,
                           const std::vector<AnalyticFunction>& test_functions,
                           const std::vector<double>& points);

inline constexpr unsigned kMaxPointwiseLadder = 8;

// R_n = [n! (alpha+nu)_n]^{-1/2} (K+)^n R_0, pointwise through A+ chains.
// Throws StripExhaustedError for n > kMaxPointwiseLadder.
RadialState generate_state_via_ladder(const ModelParams& p, unsigned n,
                                      double strip = kDefaultWavefunctionStrip);

// The same construction in coefficient space; yields exactly e_n.
CoefficientState generate_coefficients_via_ladder(const ModelParams& p, unsigned n);

}  // namespace relosc
