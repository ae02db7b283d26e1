#include "relosc/fd_operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "relosc/errors.hpp"

namespace relosc {

AnalyticFunction::AnalyticFunction(Evaluator eval, double strip_halfwidth)
    : eval_(std::make_shared<const Evaluator>(std::move(eval))),
      strip_(strip_halfwidth) {
  if (!(strip_halfwidth >= 0.0)) {
    throw DomainError("AnalyticFunction: strip half-width must be non-negative");
  }
}

Complex AnalyticFunction::operator()(Complex rho) const {
  if (std::fabs(rho.imag()) > strip_ + 1e-12) {
    std::ostringstream msg;
    msg << "evaluation at Im(rho) = " << rho.imag() << " outside strip of half-width "
        << strip_;
    throw StripExhaustedError(msg.str());
  }
  return (*eval_)(rho);
}

AnalyticFunction multiplier(AnalyticFunction::Evaluator eval) {
  return AnalyticFunction(std::move(eval), kUnboundedStrip);
}

AnalyticFunction constant_function(Complex value) {
  return multiplier([value](Complex) { return value; });
}

AnalyticFunction linear_combination(
    std::span<const std::pair<Complex, AnalyticFunction>> terms) {
  std::vector<std::pair<Complex, AnalyticFunction>> copy(terms.begin(), terms.end());
  double strip = kUnboundedStrip;
  for (const auto& [c, f] : copy) strip = std::min(strip, f.strip_halfwidth());
  return AnalyticFunction(
      [copy = std::move(copy)](Complex rho) {
        Complex acc = 0.0;
        for (const auto& [c, f] : copy) acc += c * f(rho);
        return acc;
      },
      strip);
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
  }
};

struct MemoCache {
  std::mutex mutex;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Complex, KeyHash> values;
};

}  // namespace

AnalyticFunction memoize(const AnalyticFunction& f) {
  auto cache = std::make_shared<MemoCache>();
  return AnalyticFunction(
      [f, cache](Complex rho) {
        const std::pair key{std::bit_cast<std::uint64_t>(rho.real()),
                            std::bit_cast<std::uint64_t>(rho.imag())};
        {
          std::lock_guard lock(cache->mutex);
          if (auto it = cache->values.find(key); it != cache->values.end()) {
            return it->second;
          }
        }
        const Complex value = f(rho);
        std::lock_guard lock(cache->mutex);
        cache->values.emplace(key, value);
        return value;
      },
      f.strip_halfwidth());
}

// ---------------------------------------------------------------------------

struct ShiftNode {
  Complex tau;
};
struct MultiplyNode {
  AnalyticFunction g;
};
struct ScaleNode {
  Complex lambda;
};
struct SumNode {
  std::vector<LinearOperator> terms;
};
struct ComposeNode {
  std::vector<LinearOperator> factors;
};

struct LinearOperator::Node {
  std::variant<ShiftNode, MultiplyNode, ScaleNode, SumNode, ComposeNode> kind;
  double budget = 0.0;
};

LinearOperator::LinearOperator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

LinearOperator::LinearOperator() : LinearOperator(scale(1.0)) {}

LinearOperator LinearOperator::shift(Complex tau) {
  return LinearOperator(
      std::make_shared<const Node>(Node{ShiftNode{tau}, std::fabs(tau.imag())}));
}

LinearOperator LinearOperator::multiply_by(AnalyticFunction g) {
  return LinearOperator(std::make_shared<const Node>(Node{MultiplyNode{std::move(g)}, 0.0}));
}

LinearOperator LinearOperator::scale(Complex lambda) {
  return LinearOperator(std::make_shared<const Node>(Node{ScaleNode{lambda}, 0.0}));
}

LinearOperator LinearOperator::sum(std::vector<LinearOperator> terms) {
  double budget = 0.0;
  for (const auto& t : terms) budget = std::max(budget, t.shift_budget());
  return LinearOperator(
      std::make_shared<const Node>(Node{SumNode{std::move(terms)}, budget}));
}

LinearOperator LinearOperator::compose(std::vector<LinearOperator> factors) {
  double budget = 0.0;
  for (const auto& f : factors) budget += f.shift_budget();
  return LinearOperator(
      std::make_shared<const Node>(Node{ComposeNode{std::move(factors)}, budget}));
}

double LinearOperator::shift_budget() const { return node_->budget; }

namespace {

struct Applier {
  const AnalyticFunction& f;

  AnalyticFunction operator()(const ShiftNode& n) const {
    if (n.tau == Complex(0.0)) return f;
    return AnalyticFunction([f = f, tau = n.tau](Complex rho) { return f(rho + tau); },
                            f.strip_halfwidth() - std::fabs(n.tau.imag()));
  }

  AnalyticFunction operator()(const MultiplyNode& n) const {
    return AnalyticFunction(
        [f = f, g = n.g](Complex rho) {
          const Complex m = g(rho);
          if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
            std::ostringstream msg;
            msg << "multiplier evaluated at singular point rho = (" << rho.real() << ", "
                << rho.imag() << ")";
            throw SingularPointError(msg.str());
          }
          return m * f(rho);
        },
        std::min(f.strip_halfwidth(), n.g.strip_halfwidth()));
  }

  AnalyticFunction operator()(const ScaleNode& n) const {
    if (n.lambda == Complex(1.0)) return f;
    return AnalyticFunction([f = f, c = n.lambda](Complex rho) { return c * f(rho); },
                            f.strip_halfwidth());
  }

  AnalyticFunction operator()(const SumNode& n) const {
    std::vector<AnalyticFunction> images;
    images.reserve(n.terms.size());
    double strip = f.strip_halfwidth();
    for (const auto& t : n.terms) {
      images.push_back(t.apply(f));
      strip = std::min(strip, images.back().strip_halfwidth());
    }
    return AnalyticFunction(
        [images = std::move(images)](Complex rho) {
          Complex acc = 0.0;
          for (const auto& g : images) acc += g(rho);
          return acc;
        },
        strip);
  }

  AnalyticFunction operator()(const ComposeNode& n) const {
    AnalyticFunction g = f;
    for (auto it = n.factors.rbegin(); it != n.factors.rend(); ++it) g = it->apply(g);
    return g;
  }
};

}  // namespace

AnalyticFunction LinearOperator::apply(const AnalyticFunction& f) const {
  if (f.strip_halfwidth() + 1e-12 < node_->budget) {
    std::ostringstream msg;
    msg << "operator needs an analyticity strip of " << node_->budget
        << " but the operand only provides " << f.strip_halfwidth();
    throw StripExhaustedError(msg.str());
  }
  return std::visit(Applier{f}, node_->kind);
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator::sum({a, b});
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator::sum({a, LinearOperator::compose({LinearOperator::scale(-1.0), b})});
}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator::compose({a, b});
}

LinearOperator operator*(Complex lambda, const LinearOperator& a) {
  return LinearOperator::compose({LinearOperator::scale(lambda), a});
}

LinearOperator cosh_shift(double step) {
  return 0.5 * (shift(kI * step) + shift(-kI * step));
}

LinearOperator sinh_shift(double step) {
  return 0.5 * (shift(kI * step) - shift(-kI * step));
}

LinearOperator multiply_by(AnalyticFunction::Evaluator g) {
  return LinearOperator::multiply_by(multiplier(std::move(g)));
}

LinearOperator commutator(const LinearOperator& x, const LinearOperator& y) {
  return x * y - y * x;
}

// ---------------------------------------------------------------------------

TestFunction gaussian_test_function() {
  return {multiplier([](Complex r) { return std::exp(-r * r); }),
          [](double r) { return (4.0 * r * r - 2.0) * std::exp(-r * r); }};
}

TestFunction cosine_test_function() {
  return {multiplier([](Complex r) { return std::cos(r); }),
          [](double r) { return -std::cos(r); }};
}

TestFunction quadratic_test_function() {
  return {multiplier([](Complex r) { return r * r; }), [](double) { return 2.0; }};
}

double taylor_limit_check(const TestFunction& test, double lambda_bar,
                          std::span<const double> sample_points) {
  const LinearOperator op = cosh_shift(lambda_bar) - LinearOperator();
  const AnalyticFunction image = op.apply(test.f);
  double worst = 0.0;
  for (double x : sample_points) {
    const Complex r =
        image(Complex(x, 0.0)) + 0.5 * lambda_bar * lambda_bar * test.second_derivative(x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double taylor_limit_check(const TestFunction& test, double lambda_bar) {
  static constexpr double kPoints[] = {-1.7, -0.9, -0.3, 0.0, 0.4, 1.1, 2.2};
  return taylor_limit_check(test, lambda_bar, kPoints);
}

}  // namespace relosc
