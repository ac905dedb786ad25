#include "ringwell/circulant.hpp"

#include <cmath>
#include <sstream>

#include "ringwell/constants.hpp"
#include "ringwell/errors.hpp"

namespace ringwell {
namespace {

void require_finite(const std::vector<Complex>& row) {
  for (const Complex& c : row) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("circulant first row contains a non-finite entry");
  }
}

double max_magnitude(const std::vector<Complex>& row) {
  double m = 0.0;
  for (const Complex& c : row) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

CirculantMatrix::CirculantMatrix(std::vector<Complex> first_row)
    : row_(std::move(first_row)) {
  if (row_.empty()) throw DomainError("circulant matrix must have size >= 1");
  require_finite(row_);
}

Complex CirculantMatrix::entry(int mu, int nu) const {
  const int n = size();
  if (mu < 0 || mu >= n || nu < 0 || nu >= n)
    throw DomainError("circulant entry index out of range");
  return row_[((nu - mu) % n + n) % n];
}

Eigen::MatrixXcd CirculantMatrix::dense() const {
  const int n = size();
  Eigen::MatrixXcd m(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) m(mu, nu) = row_[((nu - mu) % n + n) % n];
  return m;
}

bool CirculantMatrix::is_hermitian(double tol) const {
  const int n = size();
  const double scale = std::max(1.0, max_magnitude(row_));
  for (int j = 0; j < n; ++j) {
    if (std::abs(row_[(n - j) % n] - std::conj(row_[j])) > tol * scale)
      return false;
  }
  return true;
}

CirculantMatrix CirculantMatrix::identity(int n) {
  if (n < 1) throw DomainError("circulant matrix must have size >= 1");
  std::vector<Complex> row(n, Complex(0.0, 0.0));
  row[0] = Complex(1.0, 0.0);
  return CirculantMatrix(std::move(row));
}

Eigen::MatrixXcd fourier_eigenvectors(int n) {
  if (n < 1) throw DomainError("fourier_eigenvectors requires n >= 1");
  Eigen::MatrixXcd f(n, n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int mu = 0; mu < n; ++mu) {
      const double phase =
          2.0 * constants::kPi * static_cast<double>(j) * mu / n;
      f(mu, j) = inv_sqrt_n * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

std::vector<Complex> circulant_eigenvalues(const CirculantMatrix& c) {
  const int n = c.size();
  const std::vector<Complex>& row = c.first_row();
  std::vector<Complex> lambda(n);
  for (int j = 0; j < n; ++j) {
    Complex sum(0.0, 0.0);
    for (int m = 0; m < n; ++m) {
      const double phase =
          2.0 * constants::kPi * static_cast<double>(j) * m / n;
      sum += row[m] * Complex(std::cos(phase), std::sin(phase));
    }
    lambda[j] = sum;
  }
  if (c.is_hermitian()) {
    for (Complex& l : lambda) l = Complex(l.real(), 0.0);
  }
  return lambda;
}

CirculantMatrix nearest_circulant(const Eigen::MatrixXcd& a, bool hermitize) {
  const int n = static_cast<int>(a.rows());
  if (n < 1 || a.cols() != n)
    throw DomainError("nearest_circulant requires a nonempty square matrix");
  std::vector<Complex> row(n, Complex(0.0, 0.0));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) row[((nu - mu) % n + n) % n] += a(mu, nu);
  for (Complex& c : row) c /= static_cast<double>(n);
  if (hermitize) {
    std::vector<Complex> h(n);
    for (int j = 0; j < n; ++j)
      h[j] = 0.5 * (row[j] + std::conj(row[(n - j) % n]));
    row = std::move(h);
  }
  return CirculantMatrix(std::move(row));
}

double circulant_deviation(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (n < 1 || a.cols() != n)
    throw DomainError("circulant_deviation requires a nonempty square matrix");
  const Eigen::MatrixXcd p = nearest_circulant(a, false).dense();
  return (a - p).cwiseAbs().maxCoeff();
}

GeneralizedEigenSolution solve_generalized_circulant(const CirculantMatrix& h,
                                                     const CirculantMatrix& s,
                                                     double positivity_tol) {
  const int n = h.size();
  if (s.size() != n)
    throw DomainError("generalized eigenproblem needs H and S of equal size");
  // The closed form below assumes real spectra on both sides; quadrature
  // noise on assembled matrices is already removed upstream by the Hermitian
  // projection, so a loose gate here only catches genuinely bad input.
  if (!h.is_hermitian(1e-8) || !s.is_hermitian(1e-8))
    throw DomainError("generalized eigenproblem needs Hermitian circulants");

  const std::vector<Complex> lh = circulant_eigenvalues(h);
  const std::vector<Complex> ls = circulant_eigenvalues(s);

  GeneralizedEigenSolution sol;
  sol.eigenvalues.resize(n);
  Eigen::VectorXd scale(n);
  for (int j = 0; j < n; ++j) {
    const double sj = ls[j].real();
    if (sj <= positivity_tol) {
      std::ostringstream msg;
      msg << "overlap eigenvalue " << sj << " at Fourier index " << j
          << " is not positive (tolerance " << positivity_tol
          << "): basis is overcomplete or ill-conditioned";
      throw OvercompleteBasisError(msg.str());
    }
    sol.eigenvalues[j] = lh[j].real() / sj;
    scale[j] = 1.0 / std::sqrt(sj);
  }
  sol.eigenvectors = fourier_eigenvectors(n) * scale.asDiagonal();
  return sol;
}

}  // namespace ringwell
