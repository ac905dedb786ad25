#include "ringwell/ring_system.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "ringwell/quadrature.hpp"

namespace ringwell {
namespace {

int worker_cap(int rows) {
  const unsigned hw = std::thread::hardware_concurrency();
  int cap = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("RINGWELL_MAX_WORKERS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0)
      cap = static_cast<int>(std::min<long>(parsed, 1024));
  }
  return std::clamp(cap, 1, rows);
}

double wrap_into(double x, double l) {
  double y = std::fmod(x, l);
  if (y < 0.0) y += l;
  return y;
}

// Dense whitening route: X = S^{-1/2} from the overlap's spectral
// decomposition, then an ordinary Hermitian solve of X H X.
struct DenseSolution {
  Eigen::VectorXd energies;       // ascending
  Eigen::MatrixXcd coefficients;  // S-orthonormal columns
};

DenseSolution solve_dense_whitened(const Eigen::MatrixXcd& h,
                                   const Eigen::MatrixXcd& s,
                                   double positivity_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_s(s);
  if (es_s.info() != Eigen::Success)
    throw NumericError("overlap eigendecomposition failed");
  const Eigen::VectorXd vals = es_s.eigenvalues();
  if (vals.minCoeff() <= positivity_tol) {
    std::ostringstream msg;
    msg << "overlap eigenvalue " << vals.minCoeff()
        << " is not positive (tolerance " << positivity_tol
        << "): basis is overcomplete or ill-conditioned";
    throw OvercompleteBasisError(msg.str());
  }
  const Eigen::MatrixXcd x = es_s.eigenvectors() *
                             vals.cwiseSqrt().cwiseInverse().asDiagonal() *
                             es_s.eigenvectors().adjoint();
  Eigen::MatrixXcd b = x * h * x;
  b = 0.5 * (b + b.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_b(b);
  if (es_b.info() != Eigen::Success)
    throw NumericError("whitened Hamiltonian eigendecomposition failed");
  return {es_b.eigenvalues(), x * es_b.eigenvectors()};
}

}  // namespace

double RingBasis::psi(int nu, double x) const {
  if (nu < 0 || nu >= count) throw DomainError("translate index out of range");
  return ground(x - nu * spacing);
}

std::vector<double> RingBasis::junction_points() const {
  const double l = geometry.circumference;
  const double half = 0.5 * geometry.width;
  std::vector<double> points;
  points.reserve(2 * static_cast<std::size_t>(count));
  for (int nu = 0; nu < count; ++nu) {
    points.push_back(wrap_into(nu * spacing - half, l));
    points.push_back(wrap_into(nu * spacing + half, l));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RingBasis build_basis(const WellGeometry& geometry, int n) {
  geometry.validate();
  if (n < 3) throw DomainError("ring basis needs n >= 3 wells");
  const double spacing = geometry.circumference / n;
  if (!(geometry.width < spacing))
    throw DomainError(
        "wells overlap: width must stay below the spacing l / n");
  for (const BoundState& state : find_bound_states(geometry)) {
    if (state.symmetric)
      return RingBasis{geometry, n, spacing, Wavefunction(state, geometry)};
  }
  throw EmptyBasisError("well binds no symmetric state; ring basis is empty");
}

RingMatrices assemble_matrices(const RingBasis& basis,
                               const AssemblyOptions& options) {
  if (!(options.quad_tol > 0.0))
    throw DomainError("assembly quadrature tolerance must be > 0");
  const int n = basis.count;
  const double l = basis.geometry.circumference;
  const double half = 0.5 * basis.geometry.width;
  const double energy = basis.ground.state().energy;
  const double depth = basis.geometry.depth;
  const std::vector<double> junctions = basis.junction_points();

  // quad_tol is an entry budget.  Integrals entering H are multiplied by W
  // or V0, so their raw budgets shrink accordingly (floored well above the
  // roundoff of O(1) integrands).
  const double overlap_budget =
      std::max(options.quad_tol / std::max(1.0, std::abs(energy)), 1e-14);
  const double well_budget =
      std::max(options.quad_tol / (n * std::max(1.0, depth)), 1e-14);

  RingMatrices m{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};

  std::atomic<int> next_row{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto fill_row = [&](int mu) {
    for (int nu = 0; nu < n; ++nu) {
      const auto product = [&basis, mu, nu](double x) {
        return basis.psi(mu, x) * basis.psi(nu, x);
      };
      const double overlap =
          integrate_piecewise(product, 0.0, l, junctions, overlap_budget)
              .value;

      double coupling = 0.0;
      for (int rho = 0; rho < n; ++rho) {
        if (rho == nu) continue;
        const double lo = rho * basis.spacing - half;
        const double hi = rho * basis.spacing + half;
        // Wrap the well interval into [0, l); it splits in two when it
        // straddles the origin.
        if (lo < 0.0) {
          coupling +=
              integrate_piecewise(product, lo + l, l, junctions, well_budget)
                  .value;
          coupling +=
              integrate_piecewise(product, 0.0, hi, junctions, well_budget)
                  .value;
        } else if (hi > l) {
          coupling +=
              integrate_piecewise(product, lo, l, junctions, well_budget)
                  .value;
          coupling +=
              integrate_piecewise(product, 0.0, hi - l, junctions, well_budget)
                  .value;
        } else {
          coupling +=
              integrate_piecewise(product, lo, hi, junctions, well_budget)
                  .value;
        }
      }
      m.overlap(mu, nu) = overlap;
      m.hamiltonian(mu, nu) = energy * overlap - depth * coupling;
    }
  };

  const int workers = worker_cap(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int mu = next_row.fetch_add(1);
        if (mu >= n) return;
        try {
          fill_row(mu);
        } catch (...) {
          const std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return m;
}

TruncationResult truncate_nearest_neighbor(const RingMatrices& m) {
  const int n = static_cast<int>(m.hamiltonian.rows());
  if (n < 1 || m.hamiltonian.cols() != n || m.overlap.rows() != n ||
      m.overlap.cols() != n)
    throw DomainError("truncation requires square matrices of equal size");
  TruncationResult result{m, 0.0};
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      const int d = std::abs(mu - nu);
      if (std::min(d, n - d) <= 1) continue;
      result.dropped_max = std::max({result.dropped_max,
                                     std::abs(m.hamiltonian(mu, nu)),
                                     std::abs(m.overlap(mu, nu))});
      result.matrices.hamiltonian(mu, nu) = Complex(0.0, 0.0);
      result.matrices.overlap(mu, nu) = Complex(0.0, 0.0);
    }
  }
  return result;
}

RingSolution solve_ring(const RingMatrices& m, double circulant_tol) {
  const int n = static_cast<int>(m.hamiltonian.rows());
  if (n < 1 || m.hamiltonian.cols() != n || m.overlap.rows() != n ||
      m.overlap.cols() != n)
    throw DomainError("solve_ring requires square matrices of equal size");
  const double scale =
      std::max({1.0, m.hamiltonian.cwiseAbs().maxCoeff(),
                m.overlap.cwiseAbs().maxCoeff()});
  const double herm_dev =
      std::max((m.hamiltonian - m.hamiltonian.adjoint()).cwiseAbs().maxCoeff(),
               (m.overlap - m.overlap.adjoint()).cwiseAbs().maxCoeff());
  if (herm_dev > 1e-8 * scale)
    throw DomainError("solve_ring requires (numerically) Hermitian matrices");

  constexpr double kPositivityTol = 1e-10;
  const DenseSolution dense =
      solve_dense_whitened(m.hamiltonian, m.overlap, kPositivityTol);

  RingSolution solution;
  const double circ_dev = std::max(circulant_deviation(m.hamiltonian),
                                   circulant_deviation(m.overlap));
  if (circ_dev <= circulant_tol) {
    const GeneralizedEigenSolution closed = solve_generalized_circulant(
        nearest_circulant(m.hamiltonian, true),
        nearest_circulant(m.overlap, true), kPositivityTol);
    Eigen::VectorXd sorted = closed.eigenvalues;
    std::sort(sorted.data(), sorted.data() + n);
    solution.energies = closed.eigenvalues;
    solution.coefficients = closed.eigenvectors;
    solution.circulant_path = true;
    solution.cross_check_deviation =
        (sorted - dense.energies).cwiseAbs().maxCoeff();
  } else {
    solution.energies = dense.energies;
    solution.coefficients = dense.coefficients;
    solution.circulant_path = false;
    solution.cross_check_deviation = std::nullopt;
  }

  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXcd r =
        m.hamiltonian * solution.coefficients.col(j) -
        solution.energies[j] * (m.overlap * solution.coefficients.col(j));
    residual = std::max(residual, r.cwiseAbs().maxCoeff());
  }
  solution.max_residual = residual;
  return solution;
}

}  // namespace ringwell
