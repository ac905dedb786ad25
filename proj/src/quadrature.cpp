#include "ringwell/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "ringwell/errors.hpp"

namespace ringwell {
namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre (QUADPACK dqk15
// abscissae/weights).  xk[7] = 0 is the shared center node; the odd-index
// abscissae are the Gauss nodes.
constexpr std::array<double, 8> kXk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kWk = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr std::array<double, 4> kWg = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double a;
  double b;
  double value;  // Kronrod estimate
  double error;  // |Kronrod - Gauss|
  int depth;
};

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k = kWk[7] * f(c);
  double g = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double lo = f(c - h * kXk[i]);
    const double hi = f(c + h * kXk[i]);
    k += kWk[i] * (lo + hi);
    if (i % 2 == 1) g += kWg[i / 2] * (lo + hi);
  }
  const Panel panel{a, b, k * h, std::abs((k - g) * h), depth};
  if (!std::isfinite(panel.value) || !std::isfinite(panel.error))
    throw IntegrationError("integrand is not finite inside the interval");
  return panel;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  return integrate_piecewise(f, a, b, {}, abs_tol, max_depth);
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     double a, double b,
                                     std::vector<double> breakpoints,
                                     double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
  if (!(a < b)) {
    if (a == b) return {};
    throw DomainError("quadrature interval has a > b");
  }
  std::erase_if(breakpoints, [&](double x) { return !(x > a && x < b); });
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Panel panel = evaluate_panel(f, breakpoints[i], breakpoints[i + 1], 0);
    total_error += panel.error;
    queue.push(std::move(panel));
  }

  int splits = 0;
  constexpr int kMaxSplits = 200000;
  while (total_error > abs_tol) {
    const Panel worst = queue.top();
    if (worst.depth >= max_depth || ++splits > kMaxSplits) {
      std::ostringstream msg;
      msg << "adaptive quadrature stalled: achieved error estimate "
          << total_error << " exceeds tolerance " << abs_tol
          << " (worst panel [" << worst.a << ", " << worst.b << "] at depth "
          << worst.depth << ")";
      throw IntegrationError(msg.str());
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid, worst.depth + 1);
    Panel right = evaluate_panel(f, mid, worst.b, worst.depth + 1);
    total_error += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
  }

  QuadratureResult result;
  result.error_estimate = total_error;
  while (!queue.empty()) {
    result.value += queue.top().value;
    ++result.panels;
    queue.pop();
  }
  return result;
}

}  // namespace ringwell
