#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "oracle_helpers.hpp"
#include "ringwell/errors.hpp"
#include "ringwell/ring_system.hpp"

using ringwell::assemble_matrices;
using ringwell::build_basis;
using ringwell::RingBasis;
using ringwell::RingMatrices;
using ringwell::solve_ring;
using ringwell::truncate_nearest_neighbor;
using ringwell::WellGeometry;

namespace {

// Six wells of width 1 nm spaced 2 nm apart: neighbors couple through a
// ~1 nm barrier, next-nearest entries are already ~1e-5 smaller.
WellGeometry coupled_geometry() { return {1.0, 12.0, 800.0}; }
constexpr int kCoupledN = 6;

// Three wells 20 nm apart: overlaps are ~1e-33, the ring is three copies of
// the isolated well.
WellGeometry decoupled_geometry() { return {1.0, 60.0, 800.0}; }

// [DERIVED] Ground offset of the width-1, depth-800 well (40-digit
// bisection of the bounded even residual); the l = 12 and l = 60 values
// agree to all shown digits.
constexpr double kGroundEnergy = -622.139436870630233;

}  // namespace

TEST_CASE("basis: translates, periodicity, junction panels") {
  const RingBasis basis = build_basis(coupled_geometry(), kCoupledN);
  CHECK(basis.count == kCoupledN);
  CHECK(basis.spacing == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(basis.ground.state().energy ==
        doctest::Approx(kGroundEnergy).epsilon(1e-12));

  // psi_nu is psi_0 dragged around the ring.
  for (int nu = 0; nu < kCoupledN; ++nu) {
    CHECK(basis.psi(nu, nu * basis.spacing) == basis.ground.amplitude());
    for (double x : {0.0, 0.7, 3.2, 11.9}) {
      CHECK(basis.psi(nu, x) ==
            doctest::Approx(basis.ground(x - nu * basis.spacing))
                .epsilon(1e-15));
      CHECK(basis.psi(nu, x + 12.0) ==
            doctest::Approx(basis.psi(nu, x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(basis.psi(-1, 0.0), ringwell::DomainError);
  CHECK_THROWS_AS(basis.psi(kCoupledN, 0.0), ringwell::DomainError);

  // All 2n junctions, wrapped into [0, l), sorted and distinct.
  const std::vector<double> junctions = basis.junction_points();
  REQUIRE(junctions.size() == 2 * kCoupledN);
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    CHECK(junctions[i] == doctest::Approx(0.5 + 1.0 * i).epsilon(1e-15));
  }
}

TEST_CASE("basis: geometry guards") {
  CHECK_THROWS_AS(build_basis(coupled_geometry(), 2), ringwell::DomainError);
  // Spacing 12/12 = 1 equals the width: wells touch.
  CHECK_THROWS_AS(build_basis(coupled_geometry(), 12), ringwell::DomainError);
  WellGeometry bad = coupled_geometry();
  bad.depth = -1.0;
  CHECK_THROWS_AS(build_basis(bad, 6), ringwell::DomainError);
}

TEST_CASE("assembly: structure the physics promises, measured not enforced") {
  const RingBasis basis = build_basis(coupled_geometry(), kCoupledN);
  const RingMatrices m = assemble_matrices(basis);
  const int n = kCoupledN;

  // Entries are real analytically; assembly stores exact zeros in imag.
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      CHECK(m.overlap(mu, nu).imag() == 0.0);
      CHECK(m.hamiltonian(mu, nu).imag() == 0.0);
    }
  }

  // S is bitwise symmetric: (mu, nu) and (nu, mu) run the same arithmetic.
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      CHECK(m.overlap(mu, nu) == m.overlap(nu, mu));

  // Unit diagonal to quadrature accuracy; the Hamiltonian diagonal sits a
  // touch below the single-well energy (neighboring wells deepen it).
  for (int mu = 0; mu < n; ++mu) {
    CHECK(m.overlap(mu, mu).real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.hamiltonian(mu, mu).real() < kGroundEnergy);
    CHECK(m.hamiltonian(mu, mu).real() ==
          doctest::Approx(kGroundEnergy).epsilon(1e-4));
  }

  // Hermiticity of H holds only through the quadrature, so it is a
  // measurement: the coupling sums for (mu, nu) and (nu, mu) integrate over
  // different well sets.
  const double herm_dev =
      (m.hamiltonian - m.hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  CHECK(herm_dev < 1e-9);

  // Translate invariance makes both matrices circulant to quadrature
  // accuracy.
  CHECK(ringwell::circulant_deviation(m.overlap) < 1e-8);
  CHECK(ringwell::circulant_deviation(m.hamiltonian) < 1e-8);

  // Neighbor coupling dominates next-nearest by orders of magnitude.
  CHECK(std::abs(m.overlap(0, 1)) > 1e3 * std::abs(m.overlap(0, 2)));
  CHECK(std::abs(m.overlap(0, 1)) > 1e-3);

  // Coupling symmetry around the ring: distance 1 entries agree both ways.
  CHECK(std::abs(m.hamiltonian(0, 1) - m.hamiltonian(0, n - 1)) < 1e-9);

  // Independent route for one off-diagonal entry: same eigen-identity
  // formula, fixed-grid Simpson instead of adaptive panels.
  const auto product = [&](double x) { return basis.psi(0, x) * basis.psi(1, x); };
  const double s01 =
      ringwell::testing::simpson(product, 0.0, 12.0, 240000);
  double coupling = 0.0;
  for (int rho = 0; rho < n; ++rho) {
    if (rho == 1) continue;
    const double lo = rho * basis.spacing - 0.5;
    const double hi = rho * basis.spacing + 0.5;
    coupling += ringwell::testing::simpson(product, lo, hi, 20000);
  }
  const double h01 =
      basis.ground.state().energy * s01 - basis.geometry.depth * coupling;
  CHECK(m.overlap(0, 1).real() == doctest::Approx(s01).epsilon(1e-8));
  CHECK(m.hamiltonian(0, 1).real() ==
        doctest::Approx(h01).scale(std::abs(h01)).epsilon(1e-7));

  CHECK_THROWS_AS(assemble_matrices(basis, {0.0}), ringwell::DomainError);
}

TEST_CASE("assembly: worker cap changes nothing but the schedule") {
  const RingBasis basis = build_basis(coupled_geometry(), kCoupledN);
  const RingMatrices parallel = assemble_matrices(basis);
  setenv("RINGWELL_MAX_WORKERS", "1", 1);
  const RingMatrices serial = assemble_matrices(basis);
  unsetenv("RINGWELL_MAX_WORKERS");
  // Every entry is computed by an isolated integral: bitwise identical.
  CHECK((serial.overlap.array() == parallel.overlap.array()).all());
  CHECK((serial.hamiltonian.array() == parallel.hamiltonian.array()).all());
}

TEST_CASE("solve: closed form with dense cross-check on the coupled ring") {
  const RingBasis basis = build_basis(coupled_geometry(), kCoupledN);
  const RingMatrices m = assemble_matrices(basis);
  const auto solution = solve_ring(m);
  const int n = kCoupledN;

  CHECK(solution.circulant_path);
  REQUIRE(solution.cross_check_deviation.has_value());
  CHECK(*solution.cross_check_deviation < 1e-8);
  CHECK(solution.max_residual < 1e-8);

  // Independent oracle: Eigen's generalized self-adjoint solver on the raw
  // matrices.
  const Eigen::VectorXd oracle =
      ringwell::testing::dense_generalized_spectrum(m.hamiltonian, m.overlap);
  Eigen::VectorXd sorted = solution.energies;
  std::sort(sorted.data(), sorted.data() + n);
  for (int j = 0; j < n; ++j)
    CHECK(sorted[j] == doctest::Approx(oracle[j]).epsilon(1e-10));

  // Fourier order: the first column is the uniform superposition, and the
  // spectrum carries the ring's j <-> n - j degeneracy.
  for (int mu = 1; mu < n; ++mu) {
    CHECK(std::abs(solution.coefficients(mu, 0) -
                   solution.coefficients(0, 0)) < 1e-12);
  }
  for (int j = 1; j < n; ++j) {
    CHECK(solution.energies[j] ==
          doctest::Approx(solution.energies[n - j]).epsilon(1e-12));
  }

  // All bound: energies stay inside the single-well window.
  CHECK(sorted[0] > -800.0);
  CHECK(sorted[n - 1] < 0.0);

  // The solution S-orthonormalizes: a* S a = I.
  const Eigen::MatrixXcd gram = solution.coefficients.adjoint() * m.overlap *
                                solution.coefficients;
  CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <
        1e-8);
}

TEST_CASE("solve: decoupled ring collapses to the isolated well") {
  const RingBasis basis = build_basis(decoupled_geometry(), 3);
  const RingMatrices m = assemble_matrices(basis);

  CHECK((m.overlap - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);

  const auto solution = solve_ring(m);
  CHECK(solution.circulant_path);
  CHECK(solution.energies.maxCoeff() - solution.energies.minCoeff() < 1e-6);
  for (int j = 0; j < 3; ++j) {
    CHECK(solution.energies[j] ==
          doctest::Approx(kGroundEnergy).epsilon(1e-9));
  }
  // Exact two-fold degeneracy of the j = 1, 2 Fourier modes.
  CHECK(solution.energies[1] ==
        doctest::Approx(solution.energies[2]).epsilon(1e-13));
}

TEST_CASE("truncation: beyond-neighbor entries drop, spectrum barely moves") {
  const RingBasis basis = build_basis(coupled_geometry(), kCoupledN);
  const RingMatrices m = assemble_matrices(basis);
  const auto truncated = truncate_nearest_neighbor(m);
  const int n = kCoupledN;

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      const int d = std::abs(mu - nu);
      if (std::min(d, n - d) <= 1) {
        CHECK(truncated.matrices.hamiltonian(mu, nu) ==
              m.hamiltonian(mu, nu));
        CHECK(truncated.matrices.overlap(mu, nu) == m.overlap(mu, nu));
      } else {
        CHECK(truncated.matrices.hamiltonian(mu, nu) ==
              std::complex<double>(0.0, 0.0));
        CHECK(truncated.matrices.overlap(mu, nu) ==
              std::complex<double>(0.0, 0.0));
      }
    }
  }

  // The largest dropped magnitude is a next-nearest Hamiltonian entry:
  // small against the neighbor coupling but well above roundoff.
  CHECK(truncated.dropped_max > 1e-8);
  CHECK(truncated.dropped_max <
        0.1 * std::abs(m.hamiltonian(0, 1)));

  const auto full = solve_ring(m);
  const auto trunc = solve_ring(truncated.matrices);
  CHECK(trunc.circulant_path);
  CHECK(trunc.max_residual < 1e-8);
  Eigen::VectorXd full_sorted = full.energies;
  Eigen::VectorXd trunc_sorted = trunc.energies;
  std::sort(full_sorted.data(), full_sorted.data() + n);
  std::sort(trunc_sorted.data(), trunc_sorted.data() + n);
  CHECK((full_sorted - trunc_sorted).cwiseAbs().maxCoeff() < 0.05);

  RingMatrices bad = m;
  bad.overlap = Eigen::MatrixXcd::Zero(n, n - 1);
  CHECK_THROWS_AS(truncate_nearest_neighbor(bad), ringwell::DomainError);
}

TEST_CASE("shift covariance survives assembly and solve") {
  const RingBasis base = build_basis(coupled_geometry(), kCoupledN);
  WellGeometry shifted_geometry = coupled_geometry();
  shifted_geometry.shift = 800.0;
  const RingBasis shifted = build_basis(shifted_geometry, kCoupledN);

  CHECK(shifted.ground.state().energy ==
        doctest::Approx(base.ground.state().energy + 800.0).epsilon(1e-13));
  // The wavefunction itself never sees the shift.
  CHECK(shifted.ground.amplitude() == base.ground.amplitude());
  CHECK(shifted.ground(0.77) == base.ground(0.77));

  const RingMatrices m0 = assemble_matrices(base);
  const RingMatrices m1 = assemble_matrices(shifted);

  // Same integrals up to the energy-dependent budget split.
  CHECK((m1.overlap - m0.overlap).cwiseAbs().maxCoeff() < 1e-12);
  // H transforms affinely: H' = H + V' S.
  CHECK((m1.hamiltonian - (m0.hamiltonian + 800.0 * m0.overlap))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  const auto s0 = solve_ring(m0);
  const auto s1 = solve_ring(m1);
  for (int j = 0; j < kCoupledN; ++j)
    CHECK(std::abs(s1.energies[j] - (s0.energies[j] + 800.0)) < 1e-10);
}

TEST_CASE("solve: guard rails") {
  const int n = 4;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

  // Non-Hermitian Hamiltonian.
  RingMatrices bad{eye, eye};
  bad.hamiltonian(0, 1) = std::complex<double>(1.0, 0.0);
  CHECK_THROWS_AS(solve_ring(bad), ringwell::DomainError);

  // Indefinite overlap: Hermitian but an eigenvalue is negative.
  RingMatrices indefinite{eye, eye};
  indefinite.overlap(0, 1) = 2.0;
  indefinite.overlap(1, 0) = 2.0;
  CHECK_THROWS_AS(solve_ring(indefinite), ringwell::OvercompleteBasisError);

  // Hermitian but not circulant: dense fallback, ascending energies, no
  // cross-check.
  RingMatrices plain{eye, eye};
  plain.hamiltonian(0, 0) = 5.0;
  plain.hamiltonian(2, 2) = -3.0;
  const auto solution = solve_ring(plain);
  CHECK_FALSE(solution.circulant_path);
  CHECK_FALSE(solution.cross_check_deviation.has_value());
  CHECK(solution.energies[0] == doctest::Approx(-3.0).epsilon(1e-13));
  CHECK(solution.energies[n - 1] == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(solution.max_residual < 1e-12);

  RingMatrices mismatched{eye, Eigen::MatrixXcd::Identity(n - 1, n - 1)};
  CHECK_THROWS_AS(solve_ring(mismatched), ringwell::DomainError);
}
