#include "relosc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "relosc/errors.hpp"

namespace relosc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rounding floor of a quadrature sum relative to int |f|.
constexpr double kRoundingFloor = 64.0 * kEps;

}  // namespace

QuadratureRule gauss_legendre(unsigned n) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const unsigned half = (n + 1) / 2;
  for (unsigned i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  rule.truncation_rho_max = 1.0;
  return rule;
}

QuadratureRule composite_rule(double rho_max, double panel_width, unsigned nodes_per_panel) {
  if (!(rho_max > 0.0 && panel_width > 0.0)) {
    throw DomainError("composite_rule: rho_max and panel width must be positive");
  }
  const QuadratureRule base = gauss_legendre(nodes_per_panel);
  const auto panels = static_cast<std::size_t>(std::ceil(rho_max / panel_width - 1e-12));
  const double h = rho_max / static_cast<double>(panels);
  QuadratureRule rule;
  rule.nodes.reserve(panels * nodes_per_panel);
  rule.weights.reserve(panels * nodes_per_panel);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (unsigned k = 0; k < nodes_per_panel; ++k) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[k]);
      rule.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  rule.truncation_rho_max = rho_max;
  return rule;
}

double truncation_point(const DecayHint& hint, const QuadratureOptions& opts) {
  if (!(hint.rate > 0.0)) throw DomainError("truncation_point: decay rate must be positive");
  auto log_env = [&](double r) { return hint.power * std::log(r) - hint.rate * r; };
  const double peak = std::max(hint.power / hint.rate, 1.0);
  const double drop = std::log(1e-16);
  const double top = log_env(peak);
  double r = peak;
  while (log_env(r) - top > drop) r += 0.5;
  return std::max(opts.min_rho_max, r + opts.tail_margin);
}

namespace {

// Integrates every column of `values(rule)` at two resolutions and reports
// the refined sums together with their disagreement.
template <typename Evaluate>
std::pair<std::vector<Complex>, std::vector<double>> refine(std::size_t count,
                                                            double rho_max,
                                                            const QuadratureOptions& opts,
                                                            Evaluate&& evaluate) {
  double width = opts.panel_width;
  std::vector<Complex> coarse =
      evaluate(composite_rule(rho_max, width, opts.nodes_per_panel)).first;
  for (unsigned level = 0; level <= opts.max_refinements; ++level) {
    width *= 0.5;
    auto [fine, magnitude] = evaluate(composite_rule(rho_max, width, opts.nodes_per_panel));
    std::vector<double> errors(count);
    bool converged = true;
    for (std::size_t i = 0; i < count; ++i) {
      errors[i] = std::max(std::abs(fine[i] - coarse[i]), kRoundingFloor * magnitude[i]);
      if (errors[i] > opts.rel_tol * magnitude[i]) converged = false;
    }
    if (converged) return {std::move(fine), std::move(errors)};
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "quadrature did not converge after " << opts.max_refinements
      << " panel refinements on [0, " << rho_max << "]";
  throw QuadratureError(msg.str());
}

}  // namespace

ComplexIntegralResult integrate_halfline_complex(const std::function<Complex(double)>& f,
                                                 const DecayHint& hint,
                                                 const QuadratureOptions& opts) {
  const double rho_max = truncation_point(hint, opts);
  auto evaluate = [&](const QuadratureRule& rule) {
    Complex sum = 0.0;
    double mag = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const Complex v = f(rule.nodes[k]);
      sum += rule.weights[k] * v;
      mag += rule.weights[k] * std::abs(v);
    }
    return std::pair{std::vector<Complex>{sum}, std::vector<double>{mag}};
  };
  auto [values, errors] = refine(1, rho_max, opts, evaluate);
  return {values[0], errors[0], rho_max};
}

IntegralResult integrate_halfline(const std::function<double(double)>& f,
                                  const DecayHint& hint, const QuadratureOptions& opts) {
  const auto r = integrate_halfline_complex([&](double x) { return Complex(f(x), 0.0); },
                                            hint, opts);
  return {r.value.real(), r.est_error, r.rho_max};
}

GramResult gram_matrix(std::span<const AnalyticFunction> fns, const DecayHint& hint,
                       const QuadratureOptions& opts) {
  const std::size_t m = fns.size();
  const double rho_max = truncation_point(hint, opts);
  auto evaluate = [&](const QuadratureRule& rule) {
    const std::size_t nodes = rule.nodes.size();
    std::vector<std::vector<Complex>> table(m, std::vector<Complex>(nodes));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < nodes; ++k) table[i][k] = fns[i](Complex(rule.nodes[k], 0.0));
    }
    std::vector<Complex> sums(m * m);
    std::vector<double> mags(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        Complex s = 0.0;
        double mag = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) {
          const Complex v = std::conj(table[i][k]) * table[j][k];
          s += rule.weights[k] * v;
          mag += rule.weights[k] * std::abs(v);
        }
        sums[i * m + j] = s;
        sums[j * m + i] = std::conj(s);
        mags[i * m + j] = mags[j * m + i] = mag;
      }
    }
    return std::pair{std::move(sums), std::move(mags)};
  };
  auto [values, errors] = refine(m * m, rho_max, opts, evaluate);
  GramResult result;
  result.rho_max = rho_max;
  result.matrix.assign(m, std::vector<Complex>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      result.matrix[i][j] = values[i * m + j];
      result.est_error = std::max(result.est_error, errors[i * m + j]);
    }
  }
  return result;
}

ComplexIntegralResult inner_product(const AnalyticFunction& f, const AnalyticFunction& g,
                                    const DecayHint& hint, const QuadratureOptions& opts) {
  return integrate_halfline_complex(
      [&](double x) {
        const Complex r(x, 0.0);
        return std::conj(f(r)) * g(r);
      },
      hint, opts);
}

}  // namespace relosc
