#include "ringwell/polygon_transform.hpp"

#include <cmath>
#include <sstream>

#include "ringwell/constants.hpp"

namespace ringwell {
namespace {

Eigen::VectorXcd to_vector(const Polygon& polygon) {
  Eigen::VectorXcd z(polygon.size());
  for (int mu = 0; mu < polygon.size(); ++mu) z[mu] = polygon[mu];
  return z;
}

Polygon to_polygon(const Eigen::VectorXcd& z) {
  return Polygon(std::vector<Complex>(z.data(), z.data() + z.size()));
}

Complex unit_root(int n, long long power) {
  const double phase = 2.0 * constants::kPi * static_cast<double>(power) / n;
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace

Polygon::Polygon(std::vector<Complex> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw DomainError("polygon needs at least 3 vertices");
  for (const Complex& v : vertices_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("polygon vertex is not finite");
  }
}

TransformParams::TransformParams(double theta, double lambda)
    : theta_(theta), lambda_(lambda) {
  if (!(theta > 0.0) || !(theta < constants::kPi / 2.0))
    throw DomainError("theta must lie in the open interval (0, pi/2)");
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw DomainError("lambda must lie in the open interval (0, 1)");
  w_ = Complex(lambda, (1.0 - lambda) * std::tan(theta));
}

CirculantMatrix build_transform_matrix(const TransformParams& params, int n) {
  if (n < 3) throw DomainError("transform matrix needs n >= 3");
  const Complex w = params.w();
  const Complex one_minus_w = Complex(1.0, 0.0) - w;
  std::vector<Complex> row(n, Complex(0.0, 0.0));
  row[0] = std::norm(one_minus_w) + std::norm(w);
  row[1] = std::conj(w) * one_minus_w;          // cyclic super-diagonal
  row[n - 1] = w * std::conj(one_minus_w);      // cyclic sub-diagonal
  return CirculantMatrix(std::move(row));
}

Complex centroid(const Polygon& polygon) {
  Complex sum(0.0, 0.0);
  for (const Complex& v : polygon.vertices()) sum += v;
  return sum / static_cast<double>(polygon.size());
}

Polygon apply_transform(const CirculantMatrix& m, const Polygon& polygon) {
  if (m.size() != polygon.size())
    throw DomainError("transform size does not match polygon size");
  return to_polygon(m.dense() * to_vector(polygon));
}

std::vector<double> eigenvalues_eta(const TransformParams& params, int n) {
  if (n < 3) throw DomainError("eigenvalues_eta needs n >= 3");
  const Complex wbar = std::conj(params.w());
  std::vector<double> eta(n);
  for (int k = 0; k < n; ++k)
    eta[k] = std::norm(Complex(1.0, 0.0) - wbar + unit_root(n, k) * wbar);
  return eta;
}

DominantIndex dominant_index(const TransformParams& params, int n,
                             double threshold_tol) {
  if (n < 3) throw DomainError("dominant_index needs n >= 3");
  if (params.lambda() != 0.5) {
    const std::vector<double> eta = eigenvalues_eta(params, n);
    int best = 0;
    for (int k = 1; k < n; ++k)
      if (eta[k] > eta[best]) best = k;
    return {best, false};
  }
  // lambda = 1/2: eta_k is maximized on the interval
  // (theta_{k-1}, theta_k), theta_k = pi(2k+1)/(2n), i.e. k = round(n
  // theta / pi).  Near a threshold two eigenvalues tie and the dominant
  // shape is not well defined.
  const double x = n * params.theta() / constants::kPi;
  // Thresholds sit at half-integers of x; distance back in theta units.
  const double distance =
      std::abs(x - std::floor(x) - 0.5) * constants::kPi / n;
  if (distance < threshold_tol) {
    std::ostringstream msg;
    msg << "theta = " << params.theta() << " lies within " << threshold_tol
        << " of a dominance threshold for n = " << n
        << "; the dominant eigenvalue is ambiguous";
    throw AmbiguousDominanceError(msg.str());
  }
  return {static_cast<int>(std::llround(x)), true};
}

Polygon eigenpolygon(int k, int n) {
  if (n < 3) throw DomainError("eigenpolygon needs n >= 3");
  if (k < 0 || k >= n) throw DomainError("eigenpolygon index out of range");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> vertices(n);
  for (int mu = 0; mu < n; ++mu)
    vertices[mu] = inv_sqrt_n * unit_root(n, static_cast<long long>(k) * mu);
  return Polygon(std::move(vertices));
}

EigenpolygonDecomposition::EigenpolygonDecomposition(
    std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 3)
    throw DomainError("decomposition needs at least 3 coefficients");
}

Polygon EigenpolygonDecomposition::reconstruct() const {
  const int n = size();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> vertices(n, Complex(0.0, 0.0));
  for (int mu = 0; mu < n; ++mu) {
    for (int k = 0; k < n; ++k)
      vertices[mu] +=
          coefficients_[k] * unit_root(n, static_cast<long long>(k) * mu);
    vertices[mu] *= inv_sqrt_n;
  }
  return Polygon(std::move(vertices));
}

Polygon EigenpolygonDecomposition::component(int k) const {
  const int n = size();
  if (k < 0 || k >= n) throw DomainError("component index out of range");
  const Polygon basis = eigenpolygon(k, n);
  std::vector<Complex> vertices(n);
  for (int mu = 0; mu < n; ++mu) vertices[mu] = coefficients_[k] * basis[mu];
  return Polygon(std::move(vertices));
}

double EigenpolygonDecomposition::mass_fraction(int k) const {
  const int n = size();
  if (k < 0 || k >= n) throw DomainError("mass_fraction index out of range");
  double total = 0.0;
  for (const Complex& c : coefficients_) total += std::norm(c);
  if (total == 0.0)
    throw DomainError("mass_fraction undefined for the zero polygon");
  return std::norm(coefficients_[k]) / total;
}

EigenpolygonDecomposition decompose(const Polygon& polygon) {
  const int n = polygon.size();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> coefficients(n, Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    for (int mu = 0; mu < n; ++mu)
      coefficients[k] +=
          unit_root(n, -static_cast<long long>(k) * mu) * polygon[mu];
    coefficients[k] *= inv_sqrt_n;
  }
  return EigenpolygonDecomposition(std::move(coefficients));
}

IterationResult iterate_to_eigenshape(const Polygon& polygon,
                                      const TransformParams& params,
                                      int max_steps, double tol) {
  if (max_steps < 1) throw DomainError("max_steps must be >= 1");
  if (!(tol > 0.0)) throw DomainError("iteration tolerance must be > 0");
  const int n = polygon.size();

  const DominantIndex dom = dominant_index(params, n);
  const Eigen::MatrixXcd m = build_transform_matrix(params, n).dense();

  Eigen::VectorXcd z = to_vector(polygon);
  const double norm0 = z.norm();
  if (norm0 == 0.0)
    throw DomainError("cannot iterate the zero polygon");
  z /= norm0;

  ConvergenceReport report;
  report.dominant_k = dom.k;
  report.dominant_via_interval = dom.from_interval;
  report.direction_residuals.reserve(std::min(max_steps, 4096));

  for (int step = 1; step <= max_steps; ++step) {
    Eigen::VectorXcd next = m * z;
    next /= next.norm();
    const double residual = (next - z).norm();
    z.swap(next);

    report.steps = step;
    report.direction_residuals.push_back(residual);
    // All eta_k > 0, so the iterate's phase along the dominant mode is
    // fixed and plain differences measure direction convergence.  The mass
    // criterion rejects spurious fixed points (e.g. a pure non-dominant
    // eigenpolygon, invariant up to scale but concentrated elsewhere).
    report.dominant_mass = std::norm(decompose(to_polygon(z))
                                         .coefficients()[dom.k]);
    if (residual < tol && report.dominant_mass >= 1.0 - tol) {
      report.converged = true;
      return {to_polygon(z), report};
    }
  }

  std::ostringstream msg;
  msg << "power iteration did not converge within " << max_steps
      << " steps (last residual "
      << (report.direction_residuals.empty()
              ? 0.0
              : report.direction_residuals.back())
      << ", dominant mass " << report.dominant_mass << ")";
  if (report.dominant_mass < 1e-6)
    msg << "; the input has (numerically) zero component along the dominant "
           "eigenpolygon";
  throw ConvergenceError(msg.str(), std::move(report));
}

}  // namespace ringwell
