#include "relosc/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relosc/errors.hpp"

namespace relosc {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2k / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,     -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,      -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

// Below this modulus the argument is pushed up by the recurrence first.
constexpr double kStirlingThreshold = 17.0;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

double sinpi_real(double x) {
  const double r = std::remainder(x, 2.0);  // r in [-1, 1]
  if (r == 0.0 || std::fabs(r) == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cospi_real(double x) {
  const double r = std::remainder(x, 2.0);
  if (std::fabs(r) == 0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (std::fabs(r) == 1.0) return -1.0;
  return std::cos(kPi * r);
}

Complex wrap_imag(Complex w) {
  double im = std::remainder(w.imag(), 2.0 * kPi);  // [-pi, pi]
  if (im == -kPi) im = kPi;
  return {w.real(), im};
}

// log sin(pi z) up to a multiple of 2 pi i, stable for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (std::fabs(z.imag()) < 10.0) return std::log(sin_pi(z));
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(w) = e^{-iw} (1 - e^{2iw}) i / 2 with |e^{2iw}| < 1.
  const Complex w = kPi * z;
  return -kI * w + std::log((1.0 - std::exp(2.0 * kI * w)) * kI * 0.5);
}

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex pw = inv;
  for (double c : kStirling) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

// log Gamma(z) modulo 2 pi i, Re z >= 0.5.
Complex log_gamma_right(Complex z) {
  Complex product = 1.0;
  while (std::abs(z) < kStirlingThreshold) {
    product *= z;
    z += 1.0;
  }
  return stirling(z) - std::log(product);
}

Complex log_gamma_raw(Complex z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z.real();
    throw PoleError(msg.str());
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

void require_positive(const CdhParams& p, const char* who) {
  if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0)) {
    std::ostringstream msg;
    msg << who << ": parameters must be positive, got (" << p.a << ", " << p.b
        << ", " << p.c << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

Complex sin_pi(Complex z) {
  const double x = z.real();
  const double y = kPi * z.imag();
  return {sinpi_real(x) * std::cosh(y), cospi_real(x) * std::sinh(y)};
}

Complex log_gamma(Complex z) { return wrap_imag(log_gamma_raw(z)); }

Complex gamma(Complex z) { return std::exp(log_gamma_raw(z)); }

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) {
    // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi keeps the zeros smooth.
    return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
  }
  return std::exp(-log_gamma_right(z));
}

Complex pochhammer(Complex a, unsigned n) {
  Complex result = 1.0;
  for (unsigned k = 0; k < n; ++k) result *= a + static_cast<double>(k);
  return result;
}

Complex i_pow(Complex delta) { return std::exp(kI * (0.5 * kPi) * delta); }

Complex generalized_degree(Complex rho, Complex delta) {
  const bool small_integer = delta.imag() == 0.0 && delta.real() >= 0.0 &&
                             delta.real() <= 64.0 &&
                             std::floor(delta.real()) == delta.real();
  if (small_integer) {
    const int n = static_cast<int>(delta.real());
    Complex result = 1.0;
    for (int j = 0; j < n; ++j) result *= rho + kI * static_cast<double>(j);
    return result;
  }
  const Complex z = -kI * rho;
  if (z.real() >= 0.5 && (z + delta).real() >= 0.5) {
    return i_pow(delta) * std::exp(log_gamma_right(z + delta) - log_gamma_right(z));
  }
  return i_pow(delta) * gamma(z + delta) * reciprocal_gamma(z);
}

Complex cdh_poly(unsigned n, Complex xsq, const CdhParams& p) {
  if (n > kCdhMaxDegree) {
    std::ostringstream msg;
    msg << "cdh_poly: degree " << n << " exceeds limit " << kCdhMaxDegree;
    throw DegreeLimitError(msg.str());
  }
  const double ab = p.a + p.b;
  const double ac = p.a + p.c;
  auto bad = [](double v) { return v <= 0.0 && std::floor(v) == v; };
  if (bad(ab) || bad(ac)) {
    throw DomainError("cdh_poly: a+b and a+c must not be non-positive integers");
  }
  CompensatedSum sum;
  Complex term = 1.0;
  sum.add(term);
  const double dn = static_cast<double>(n);
  for (unsigned k = 0; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const double ak = p.a + dk;
    term *= (dk - dn) * (ak * ak + xsq) / ((ab + dk) * (ac + dk) * (dk + 1.0));
    sum.add(term);
  }
  return pochhammer(ab, n) * pochhammer(ac, n) * sum.value();
}

double cdh_poly_real(unsigned n, double xsq, const CdhParams& p) {
  const Complex v = cdh_poly(n, Complex(xsq, 0.0), p);
  if (std::fabs(v.imag()) > 1e-12 * std::abs(v)) {
    throw DomainError("cdh_poly_real: value is not real");
  }
  return v.real();
}

double cdh_weight(double x, const CdhParams& p) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "cdh_weight: x must be positive, got " << x;
    throw DomainError(msg.str());
  }
  require_positive(p, "cdh_weight");
  const Complex ix(0.0, x);
  const Complex lg = log_gamma_raw(p.a + ix) + log_gamma_raw(p.b + ix) +
                     log_gamma_raw(p.c + ix) - log_gamma_raw(2.0 * ix);
  return std::exp(2.0 * lg.real());
}

double log_cdh_norm(unsigned n, const CdhParams& p) {
  require_positive(p, "cdh_norm");
  const double dn = static_cast<double>(n);
  // log_gamma_raw rather than std::lgamma, which writes the global signgam.
  return log_gamma_raw(dn + p.a + p.b).real() + log_gamma_raw(dn + p.a + p.c).real() +
         log_gamma_raw(dn + p.b + p.c).real() + log_gamma_raw(dn + 1.0).real();
}

double cdh_norm(unsigned n, const CdhParams& p) {
  return std::exp(log_cdh_norm(n, p));
}

}  // namespace relosc
