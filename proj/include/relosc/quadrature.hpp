#pragma once

// Composite Gauss-Legendre integration on [0, inf) for integrands with a
// power-times-exponential envelope, plus the inner products built on it.

#include <functional>
#include <span>
#include <vector>

#include "relosc/fd_operators.hpp"

namespace relosc {

// |f(rho)| <~ C rho^power exp(-rate rho) for large rho.
struct DecayHint {
  double power = 0.0;
  double rate = 1.0;
};

struct QuadratureOptions {
  double panel_width = 1.0;
  unsigned nodes_per_panel = 32;
  double min_rho_max = 60.0;
  double tail_margin = 10.0;
  // Acceptance threshold of the refinement estimate, relative to int |f|.
  double rel_tol = 1e-10;
  unsigned max_refinements = 4;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double truncation_rho_max = 0.0;
  double est_error = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double est_error = 0.0;
  double rho_max = 0.0;
};

struct ComplexIntegralResult {
  Complex value = 0.0;
  double est_error = 0.0;
  double rho_max = 0.0;
};

struct GramResult {
  std::vector<std::vector<Complex>> matrix;
  double est_error = 0.0;  // largest estimate over all entries
  double rho_max = 0.0;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(unsigned n);

// Composite rule on [0, rho_max] with panels of the given width.
QuadratureRule composite_rule(double rho_max, double panel_width, unsigned nodes_per_panel);

// Smallest cut-off past the envelope peak where the envelope has dropped by
// 1e-16, plus the safety margin, never below min_rho_max.
double truncation_point(const DecayHint& hint, const QuadratureOptions& opts = {});

// Throws QuadratureError when panel halving does not settle within tolerance.
IntegralResult integrate_halfline(const std::function<double(double)>& f,
                                  const DecayHint& hint,
                                  const QuadratureOptions& opts = {});

ComplexIntegralResult integrate_halfline_complex(const std::function<Complex(double)>& f,
                                                 const DecayHint& hint,
                                                 const QuadratureOptions& opts = {});

// <f, g> = int_0^inf conj(f(rho)) g(rho) drho along the real axis.
ComplexIntegralResult inner_product(const AnalyticFunction& f, const AnalyticFunction& g,
                                    const DecayHint& hint,
                                    const QuadratureOptions& opts = {});

// All pairwise inner products, each function evaluated once per node.
GramResult gram_matrix(std::span<const AnalyticFunction> fns, const DecayHint& hint,
                       const QuadratureOptions& opts = {});

}  // namespace relosc
