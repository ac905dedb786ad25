#pragma once

#include <functional>
#include <vector>

namespace ringwell {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |Kronrod - Gauss| over panels
  int panels = 0;               // leaf panels actually evaluated
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] to an absolute tolerance.
// Keeps global error accounting and repeatedly bisects the panel with the
// largest |K15 - G7| until the accumulated estimate fits abs_tol; throws
// IntegrationError when the worst panel hits max_depth with the budget
// still blown (the message carries the achieved estimate).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 48);

// Same, with interior breakpoints (piecewise-smooth integrands: kinks and
// junctions become panel boundaries instead of subdivision work).
// Breakpoints outside (a, b) are ignored.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     double a, double b,
                                     std::vector<double> breakpoints,
                                     double abs_tol, int max_depth = 48);

}  // namespace ringwell
