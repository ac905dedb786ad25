#pragma once

#include <string>
#include <vector>

#include "ringwell/circulant.hpp"
#include "ringwell/errors.hpp"

namespace ringwell {

// Planar polygons as complex vertex vectors, and the one-parameter family of
// circulant-Hermitian transformations
//
//   z' = M(theta, lambda) z,   w = lambda + i (1 - lambda) tan(theta),
//
// whose action relaxes every polygon toward the eigenpolygon of largest
// eigenvalue.  M has diagonal |1-w|^2 + |w|^2, cyclic sub-diagonal
// w (1 - conj w), cyclic super-diagonal conj(w) (1 - w), and rows summing to
// one, so the centroid is preserved.  Its eigenvalues in the Fourier basis
// are eta_k = |1 - conj(w) + r^k conj(w)|^2 with r = exp(2 pi i / n).

/// Closed polygon with n >= 3 finite complex vertices.
class Polygon {
 public:
  explicit Polygon(std::vector<Complex> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Complex>& vertices() const { return vertices_; }
  const Complex& operator[](int mu) const { return vertices_[mu]; }

 private:
  std::vector<Complex> vertices_;
};

/// Transformation parameters on the open rectangle theta in (0, pi/2),
/// lambda in (0, 1).
class TransformParams {
 public:
  TransformParams(double theta, double lambda);

  double theta() const { return theta_; }
  double lambda() const { return lambda_; }
  Complex w() const { return w_; }

 private:
  double theta_;
  double lambda_;
  Complex w_;
};

/// The n x n transformation matrix M(theta, lambda) as a circulant.
CirculantMatrix build_transform_matrix(const TransformParams& params, int n);

/// Vertex average (preserved by the transformation).
Complex centroid(const Polygon& polygon);

/// One application z -> M z.
Polygon apply_transform(const CirculantMatrix& m, const Polygon& polygon);

/// Spectrum eta_k, k = 0..n-1, via the closed form (always real, eta_0 = 1).
std::vector<double> eigenvalues_eta(const TransformParams& params, int n);

struct DominantIndex {
  int k;              // index of the largest eta_k
  bool from_interval; // true when the lambda = 1/2 threshold formula applied
};

/// Index of the dominant eigenvalue.  For lambda = 1/2 this is the interval
/// formula k = round(n theta / pi) with thresholds theta_k = pi(2k+1)/(2n);
/// theta within threshold_tol of a threshold raises AmbiguousDominanceError.
/// For lambda != 1/2 it falls back to a numeric argmax and clears the flag.
DominantIndex dominant_index(const TransformParams& params, int n,
                             double threshold_tol = 1e-9);

/// k-th eigenpolygon f_k: vertices r^{k mu} / sqrt(n) (unit Euclidean norm).
Polygon eigenpolygon(int k, int n);

/// Coefficients of a polygon in the orthonormal eigenpolygon basis,
/// c_k = <f_k, z>.
class EigenpolygonDecomposition {
 public:
  EigenpolygonDecomposition(std::vector<Complex> coefficients);

  int size() const { return static_cast<int>(coefficients_.size()); }
  const std::vector<Complex>& coefficients() const { return coefficients_; }

  /// z = sum_k c_k f_k.
  Polygon reconstruct() const;
  /// The single term c_k f_k as a polygon.
  Polygon component(int k) const;
  /// |c_k|^2 / sum_j |c_j|^2.
  double mass_fraction(int k) const;

 private:
  std::vector<Complex> coefficients_;
};

EigenpolygonDecomposition decompose(const Polygon& polygon);

struct ConvergenceReport {
  int steps = 0;
  bool converged = false;
  int dominant_k = -1;
  bool dominant_via_interval = false;
  double dominant_mass = 0.0;            // |c_dom|^2 of the final unit iterate
  std::vector<double> direction_residuals;  // ||z_t - z_{t-1}||_2 per step
};

struct IterationResult {
  Polygon shape;  // unit-Euclidean-norm direction of the final iterate
  ConvergenceReport report;
};

/// Power iteration z -> M z with Euclidean renormalization each step.
/// Converged once the direction residual drops below tol and at least
/// 1 - tol of the squared norm sits on the dominant index.  Exhausting
/// max_steps raises ConvergenceError carrying the partial report.
IterationResult iterate_to_eigenshape(const Polygon& polygon,
                                      const TransformParams& params,
                                      int max_steps = 100000,
                                      double tol = 1e-10);

class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, ConvergenceReport report)
      : NumericError(what), report(std::move(report)) {}

  ConvergenceReport report;
};

}  // namespace ringwell
