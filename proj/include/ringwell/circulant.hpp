#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ringwell {

using Complex = std::complex<double>;

/// Circulant matrix stored by its first row: entry (mu, nu) = c[(nu - mu) mod n].
/// Every row is the cyclic right-shift of the one above, so the first row
/// determines the matrix; the zero-based layout is the only convention used
/// in this codebase.
class CirculantMatrix {
 public:
  explicit CirculantMatrix(std::vector<Complex> first_row);

  int size() const { return static_cast<int>(row_.size()); }
  const std::vector<Complex>& first_row() const { return row_; }

  Complex entry(int mu, int nu) const;
  Eigen::MatrixXcd dense() const;

  /// Hermitian iff c[(n - j) mod n] == conj(c[j]) for every j.  The
  /// tolerance is absolute, scaled by the largest entry magnitude.
  bool is_hermitian(double tol = 1e-12) const;

  static CirculantMatrix identity(int n);

 private:
  std::vector<Complex> row_;
};

/// Unitary matrix whose column j is (1, w_j, ..., w_j^{n-1}) / sqrt(n) with
/// w_j = exp(2 pi i j / n): the shared eigenvector basis of every n x n
/// circulant matrix.
Eigen::MatrixXcd fourier_eigenvectors(int n);

/// Closed-form eigenvalues lambda_j = sum_m c_m w_j^m, in Fourier order
/// j = 0..n-1.  For a Hermitian circulant the analytically-zero imaginary
/// parts are clamped to exactly zero.
std::vector<Complex> circulant_eigenvalues(const CirculantMatrix& c);

/// Orthogonal projection of a dense matrix onto the circulants (mean over
/// each cyclic diagonal class); with hermitize, additionally onto the
/// Hermitian circulants.
CirculantMatrix nearest_circulant(const Eigen::MatrixXcd& a,
                                  bool hermitize = false);

/// Largest entrywise deviation of a dense square matrix from its circulant
/// projection.
double circulant_deviation(const Eigen::MatrixXcd& a);

struct GeneralizedEigenSolution {
  Eigen::MatrixXcd eigenvectors;  // Phi: column j solves H phi = lambda_j S phi
  Eigen::VectorXd eigenvalues;    // Lambda, Fourier order j = 0..n-1
};

/// Closed-form solution of H Phi = S Phi Lambda for Hermitian circulant H
/// and Hermitian positive-definite circulant S, sharing the Fourier
/// eigenvectors: Lambda = Lambda_H ./ Lambda_S and Phi = F Lambda_S^{-1/2},
/// which whitens the basis (Phi^* S Phi = I).  Any eigenvalue of S at or
/// below positivity_tol raises OvercompleteBasisError.
GeneralizedEigenSolution solve_generalized_circulant(
    const CirculantMatrix& h, const CirculantMatrix& s,
    double positivity_tol = 1e-10);

}  // namespace ringwell
