#pragma once

// Complex gamma machinery, generalized degrees and continuous dual Hahn
// polynomials. Everything here is pure and thread-safe.

#include <complex>

namespace relosc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Principal logarithm of Gamma(z); the imaginary part lies in (-pi, pi].
// Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// 1/Gamma(z). Entire; exactly zero at z = 0, -1, -2, ...
Complex reciprocal_gamma(Complex z);

// sin(pi z) with exact zeros at the integers.
Complex sin_pi(Complex z);

// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
Complex pochhammer(Complex a, unsigned n);

// i^delta on the principal branch, exp(i pi delta / 2).
Complex i_pow(Complex delta);

// Generalized degree rho^(delta) = i^delta Gamma(-i rho + delta) / Gamma(-i rho).
// For non-negative integer delta this is the exact product
// rho (rho + i) ... (rho + i(delta-1)).
Complex generalized_degree(Complex rho, Complex delta);

// The mirrored degree (-rho)^(delta) = i^delta Gamma(i rho + delta) / Gamma(i rho).
inline Complex mirrored_degree(Complex rho, Complex delta) {
  return generalized_degree(-rho, delta);
}

// Parameters (a, b, c) of the continuous dual Hahn polynomial S_n(x^2; a, b, c).
struct CdhParams {
  double a = 0.5;
  double b = 0.5;
  double c = 0.5;
};

inline constexpr unsigned kCdhMaxDegree = 200;

// S_n(x^2; a, b, c) as the terminating 3F2 sum
//   (a+b)_n (a+c)_n sum_k (-n)_k (a+ix)_k (a-ix)_k / ((a+b)_k (a+c)_k k!),
// written in terms of xsq = x^2 through (a+ix)_k (a-ix)_k = prod_j ((a+j)^2 + x^2),
// so complex arguments (shifted radial points) need no square root.
// Throws DegreeLimitError for n > kCdhMaxDegree, DomainError if a+b or a+c
// is a non-positive integer.
Complex cdh_poly(unsigned n, Complex xsq, const CdhParams& p);

// Real-output boundary for real xsq: the imaginary round-off is dropped when it
// is below 1e-12 |value|, otherwise DomainError.
double cdh_poly_real(unsigned n, double xsq, const CdhParams& p);

// Orthogonality weight |Gamma(a+ix) Gamma(b+ix) Gamma(c+ix) / Gamma(2ix)|^2.
// Requires x > 0 and a, b, c > 0.
double cdh_weight(double x, const CdhParams& p);

// h_n = Gamma(n+a+b) Gamma(n+a+c) Gamma(n+b+c) n!, so that
// (1/2pi) int_0^inf weight S_m S_n dx = h_n delta_mn.
double cdh_norm(unsigned n, const CdhParams& p);
double log_cdh_norm(unsigned n, const CdhParams& p);

}  // namespace relosc
