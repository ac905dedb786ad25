#include <doctest.h>

#include <random>

#include "oracle_helpers.hpp"
#include "ringwell/circulant.hpp"
#include "ringwell/errors.hpp"

using namespace ringwell;

TEST_CASE("first-row layout determines every entry") {
  const CirculantMatrix c({{1.0, 0.0}, {2.0, 1.0}, {3.0, -1.0}, {4.0, 0.5}});
  CHECK(c.size() == 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      CHECK(c.entry(mu, nu) == c.first_row()[((nu - mu) % 4 + 4) % 4]);

  const Eigen::MatrixXcd d = c.dense();
  CHECK(d(0, 1) == Complex(2.0, 1.0));
  CHECK(d(1, 0) == Complex(4.0, 0.5));  // row shift wraps around
  CHECK(d(3, 2) == d(1, 0));

  const CirculantMatrix id = CirculantMatrix::identity(3);
  CHECK(id.dense().isApprox(Eigen::MatrixXcd::Identity(3, 3)));

  CHECK_THROWS_AS(CirculantMatrix(std::vector<Complex>{}), DomainError);
  CHECK_THROWS_AS(c.entry(4, 0), DomainError);
}

TEST_CASE("fourier matrix is unitary and diagonalizes any circulant") {
  CHECK(fourier_eigenvectors(1)(0, 0) == Complex(1.0, 0.0));

  const Eigen::MatrixXcd f2 = fourier_eigenvectors(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f2(0, 0) - Complex(r, 0.0)) < 1e-15);
  CHECK(std::abs(f2(1, 1) - Complex(-r, 0.0)) < 1e-15);

  std::mt19937_64 gen(11);
  for (int n = 2; n <= 12; ++n) {
    const Eigen::MatrixXcd f = fourier_eigenvectors(n);
    CHECK((f.adjoint() * f - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-13);

    // Universality: the same columns are eigenvectors of an arbitrary
    // (non-Hermitian) circulant, with the closed-form eigenvalues.
    std::vector<Complex> row(n);
    for (Complex& x : row)
      x = Complex(testing::uniform_pm1(gen), testing::uniform_pm1(gen));
    const CirculantMatrix c(row);
    const std::vector<Complex> lambda = circulant_eigenvalues(c);
    const Eigen::MatrixXcd d = c.dense();
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd residual = d * f.col(j) - lambda[j] * f.col(j);
      CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("hermitian detection and eigenvalue realness") {
  // Real symmetric circulant: c_j = c_{n-j}.
  const CirculantMatrix s({{2.0, 0.0}, {0.3, 0.0}, {0.1, 0.0}, {0.1, 0.0},
                           {0.3, 0.0}});
  CHECK(s.is_hermitian());
  for (const Complex& l : circulant_eigenvalues(s)) CHECK(l.imag() == 0.0);

  std::mt19937_64 gen(17);
  const CirculantMatrix h = testing::random_hermitian_circulant(6, gen, 1.0, 0.0);
  CHECK(h.is_hermitian());
  CHECK((h.dense() - h.dense().adjoint()).cwiseAbs().maxCoeff() == 0.0);
  for (const Complex& l : circulant_eigenvalues(h)) CHECK(l.imag() == 0.0);

  const CirculantMatrix skew({{0.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
  CHECK_FALSE(skew.is_hermitian());
}

TEST_CASE("circulant projection and deviation") {
  std::mt19937_64 gen(23);
  const CirculantMatrix c = testing::random_hermitian_circulant(5, gen, 1.0, 0.0);
  CHECK(circulant_deviation(c.dense()) < 1e-15);

  Eigen::MatrixXcd perturbed = c.dense();
  perturbed(2, 3) += Complex(0.0, 3e-3);
  CHECK(circulant_deviation(perturbed) > 1e-3);
  CHECK(circulant_deviation(perturbed) < 3e-3);

  // Projection of an exact Hermitian circulant is the identity map.
  const CirculantMatrix back = nearest_circulant(c.dense(), true);
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(back.first_row()[j] - c.first_row()[j]) < 1e-15);
}

TEST_CASE("closed-form generalized solve whitens and matches the oracle") {
  std::mt19937_64 gen(31);
  for (int n = 2; n <= 12; ++n) {
    const CirculantMatrix h =
        testing::random_hermitian_circulant(n, gen, 1.0, 0.0);
    const CirculantMatrix s =
        testing::random_hermitian_circulant(n, gen, 0.2 / n, 1.0);
    const GeneralizedEigenSolution sol = solve_generalized_circulant(h, s);

    const Eigen::MatrixXcd hd = h.dense();
    const Eigen::MatrixXcd sd = s.dense();
    const Eigen::MatrixXcd& phi = sol.eigenvectors;

    const Eigen::MatrixXcd residual =
        hd * phi - sd * phi * sol.eigenvalues.asDiagonal();
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
    CHECK((phi.adjoint() * sd * phi - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    Eigen::VectorXd sorted = sol.eigenvalues;
    std::sort(sorted.data(), sorted.data() + n);
    const Eigen::VectorXd oracle = testing::dense_generalized_spectrum(hd, sd);
    CHECK((sorted - oracle).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("special cases of the generalized solve") {
  const CirculantMatrix h({{2.0, 0.0}, {0.5, 0.25}, {0.0, 0.0},
                           {0.5, -0.25}});
  const CirculantMatrix id = CirculantMatrix::identity(4);

  // S = I reduces to the ordinary eigenproblem.
  const GeneralizedEigenSolution plain = solve_generalized_circulant(h, id);
  const std::vector<Complex> lambda = circulant_eigenvalues(h);
  for (int j = 0; j < 4; ++j)
    CHECK(plain.eigenvalues[j] == doctest::Approx(lambda[j].real()).epsilon(1e-14));

  // H = S collapses the spectrum to ones.
  const GeneralizedEigenSolution unit = solve_generalized_circulant(h, h);
  // ... provided S is positive definite; this h has eigenvalues 2 +- 1 +- 0.5.
  for (int j = 0; j < 4; ++j)
    CHECK(unit.eigenvalues[j] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-positive overlap is rejected") {
  const CirculantMatrix h = CirculantMatrix::identity(4);
  const CirculantMatrix s({{1.0, 0.0}, {0.75, 0.0}, {0.0, 0.0}, {0.75, 0.0}});
  CHECK_THROWS_AS(solve_generalized_circulant(h, s), OvercompleteBasisError);

  const CirculantMatrix mismatch = CirculantMatrix::identity(3);
  CHECK_THROWS_AS(solve_generalized_circulant(h, mismatch), DomainError);

  const CirculantMatrix skew({{0.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(solve_generalized_circulant(skew, h), DomainError);
}
