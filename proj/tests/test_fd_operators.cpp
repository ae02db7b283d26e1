#include <cmath>
#include <vector>

#include "doctest.h"
#include "relosc/errors.hpp"
#include "relosc/fd_operators.hpp"

using namespace relosc;

namespace {

AnalyticFunction exponential(double k) {
  return multiplier([k](Complex r) { return std::exp(k * r); });
}

}  // namespace

TEST_CASE("shifts act by complex displacement") {
  const AnalyticFunction f = exponential(0.7);
  const Complex rho(1.2, 0.0);
  // e^{i d} e^{k rho} = e^{ik} e^{k rho}
  CHECK(std::abs(shift(kI).apply(f)(rho) - std::exp(0.7 * kI) * f(rho)) < 1e-14);
  // cosh(i d) e^{k rho} = cos(k) e^{k rho}, sinh(i d) e^{k rho} = i sin(k) e^{k rho}
  CHECK(std::abs(cosh_shift().apply(f)(rho) - std::cos(0.7) * f(rho)) < 1e-14);
  CHECK(std::abs(sinh_shift().apply(f)(rho) - kI * std::sin(0.7) * f(rho)) < 1e-14);
}

TEST_CASE("operator algebra") {
  const AnalyticFunction f = multiplier([](Complex r) { return std::sin(r) + r * r; });
  const LinearOperator x = multiply_by([](Complex r) { return r; });
  const Complex rho(0.4, 0.0);
  // [e^{i d}, rho] = i e^{i d}
  const LinearOperator c = commutator(shift(kI), x);
  CHECK(std::abs(c.apply(f)(rho) - kI * f(rho + kI)) < 1e-13);
  // compose: rightmost acts first
  const LinearOperator xs = x * shift(kI);
  CHECK(std::abs(xs.apply(f)(rho) - rho * f(rho + kI)) < 1e-14);
  CHECK(std::abs((LinearOperator() - LinearOperator()).apply(f)(rho)) == 0.0);
  CHECK(std::abs((Complex(2.0) * LinearOperator()).apply(f)(rho) - 2.0 * f(rho)) < 1e-15);
}

TEST_CASE("shift budget and strips") {
  CHECK(cosh_shift().shift_budget() == doctest::Approx(1.0));
  CHECK((cosh_shift() * sinh_shift(0.5)).shift_budget() == doctest::Approx(1.5));
  CHECK((cosh_shift() + shift(2.0 * kI)).shift_budget() == doctest::Approx(2.0));
  const AnalyticFunction narrow([](Complex r) { return r; }, 1.5);
  CHECK_NOTHROW(cosh_shift().apply(narrow)(Complex(0.3)));
  CHECK_THROWS_AS((cosh_shift() * cosh_shift()).apply(narrow), StripExhaustedError);
  CHECK_THROWS_AS(narrow(Complex(0.0, 2.0)), StripExhaustedError);
}

TEST_CASE("singular multiplier values are reported") {
  const LinearOperator inv = multiply_by([](Complex r) { return 1.0 / r; });
  const AnalyticFunction one = constant_function(1.0);
  CHECK_THROWS_AS(inv.apply(one)(Complex(0.0)), SingularPointError);
}

TEST_CASE("linear combination and memoize") {
  const AnalyticFunction a = exponential(0.3);
  const AnalyticFunction b([](Complex r) { return r; }, 2.0);
  const std::vector<std::pair<Complex, AnalyticFunction>> terms{{2.0, a}, {kI, b}};
  const AnalyticFunction s = linear_combination(terms);
  CHECK(s.strip_halfwidth() == doctest::Approx(2.0));
  const Complex rho(0.9, 0.1);
  CHECK(std::abs(s(rho) - (2.0 * a(rho) + kI * rho)) < 1e-15);
  int calls = 0;
  const AnalyticFunction counted([&calls](Complex r) { ++calls; return r; }, 1.0);
  const AnalyticFunction m = memoize(counted);
  m(rho);
  m(rho);
  CHECK(calls == 1);
}

TEST_CASE("Taylor limit of cosh(i lambda d)") {
  // For cos the residual is lambda^2/2 cos + (cosh(lambda) - 1) (-cos)... exactly
  // |cos x| |cosh(lambda) - 1 - lambda^2/2|.
  const TestFunction t = cosine_test_function();
  const std::vector<double> points{0.0};
  for (double lb : {0.1, 0.05}) {
    const double want = std::cosh(lb) - 1.0 - 0.5 * lb * lb;
    CHECK(taylor_limit_check(t, lb, points) == doctest::Approx(want).epsilon(1e-6));
  }
  // A quadratic is reproduced exactly.
  CHECK(taylor_limit_check(quadratic_test_function(), 0.1) < 1e-14);
  const double r1 = taylor_limit_check(gaussian_test_function(), 0.05);
  const double r2 = taylor_limit_check(gaussian_test_function(), 0.025);
  CHECK(std::log2(r1 / r2) == doctest::Approx(4.0).epsilon(0.02));
}
