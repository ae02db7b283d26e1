#pragma once

// Finite-difference operator calculus. An exponential of the derivative,
// e^{tau d/drho}, acts on analytic functions by exact complex displacement
// rho -> rho + tau, so every Hamiltonian and ladder operator of the model is a
// tree of shifts, multiplications, scalings, sums and compositions.
//
// Every function carries a strip half-width s: it may be evaluated wherever
// |Im rho| <= s (apart from isolated singular points). Applying an operator
// that displaces by a total imaginary amount b consumes b of that margin.

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "relosc/special_functions.hpp"

namespace relosc {

inline constexpr double kUnboundedStrip = std::numeric_limits<double>::infinity();

class AnalyticFunction {
 public:
  using Evaluator = std::function<Complex(Complex)>;

  AnalyticFunction(Evaluator eval, double strip_halfwidth);

  // Throws StripExhaustedError if |Im rho| exceeds the strip.
  Complex operator()(Complex rho) const;

  double strip_halfwidth() const { return strip_; }

 private:
  std::shared_ptr<const Evaluator> eval_;
  double strip_;
};

// A multiplier: entire or meromorphic with isolated poles, no strip limit.
AnalyticFunction multiplier(AnalyticFunction::Evaluator eval);

AnalyticFunction constant_function(Complex value);

// sum_k c_k f_k; the strip is the narrowest of the terms.
AnalyticFunction linear_combination(
    std::span<const std::pair<Complex, AnalyticFunction>> terms);

// Caches values keyed on the exact bit pattern of rho. The cache is shared by
// copies and guarded by a mutex, so one memoized function may be evaluated
// from several threads.
AnalyticFunction memoize(const AnalyticFunction& f);

class LinearOperator {
 public:
  // Identity.
  LinearOperator();

  static LinearOperator shift(Complex tau);
  // Pointwise multiplication; non-finite multiplier values raise
  // SingularPointError.
  static LinearOperator multiply_by(AnalyticFunction g);
  static LinearOperator scale(Complex lambda);
  static LinearOperator sum(std::vector<LinearOperator> terms);
  // compose({A, B, C}) = A B C, i.e. C acts first.
  static LinearOperator compose(std::vector<LinearOperator> factors);

  // Total imaginary displacement consumed when the operator is applied.
  double shift_budget() const;

  AnalyticFunction apply(const AnalyticFunction& f) const;
  AnalyticFunction operator()(const AnalyticFunction& f) const { return apply(f); }

  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator*(Complex lambda, const LinearOperator& a);

  struct Node;

 private:
  explicit LinearOperator(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

inline LinearOperator shift(Complex tau) { return LinearOperator::shift(tau); }

// cosh(i step d/drho) f = [f(rho + i step) + f(rho - i step)] / 2.
LinearOperator cosh_shift(double step = 1.0);
// sinh(i step d/drho) f = [f(rho + i step) - f(rho - i step)] / 2.
LinearOperator sinh_shift(double step = 1.0);

LinearOperator multiply_by(AnalyticFunction::Evaluator g);

// X Y - Y X.
LinearOperator commutator(const LinearOperator& x, const LinearOperator& y);

inline AnalyticFunction apply(const LinearOperator& op, const AnalyticFunction& f) {
  return op.apply(f);
}

// A real test function on which operators are checked against calculus.
struct TestFunction {
  AnalyticFunction f;
  std::function<double(double)> second_derivative;
};

TestFunction gaussian_test_function();  // e^{-rho^2}
TestFunction cosine_test_function();    // cos(rho)
TestFunction quadratic_test_function(); // rho^2

// max over the sample points of |(cosh(i lambda d) - 1) f + lambda^2 f'' / 2|,
// which behaves like lambda^4 |f''''| / 24 for small lambda.
double taylor_limit_check(const TestFunction& test, double lambda_bar,
                          std::span<const double> sample_points);
double taylor_limit_check(const TestFunction& test, double lambda_bar);

}  // namespace relosc
