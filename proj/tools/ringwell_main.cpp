// ringwell: polygon transformations, quantum wells on a ring, and the
// parameter correspondence between them.  Subcommands: polygon, well, ring,
// map.  Exit codes: 0 ok, 2 domain/validation error, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringwell/constants.hpp"
#include "ringwell/correspondence.hpp"
#include "ringwell/errors.hpp"
#include "ringwell/polygon_transform.hpp"
#include "ringwell/quantum_well.hpp"
#include "ringwell/ring_system.hpp"
#include "ringwell/version.hpp"

namespace {

using ringwell::Complex;
using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json complex_json(const Complex& z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

// Documented generator for --random polygons: mt19937_64 seeded with
// --seed; each vertex draws re then im as 2 u - 1 where u = (x >> 11) *
// 2^-53 maps the raw 64-bit output to [0, 1).
class VertexRng {
 public:
  explicit VertexRng(std::uint64_t seed) : gen_(seed) {}
  double pm1() { return 2.0 * ((gen_() >> 11) * 0x1.0p-53) - 1.0; }

 private:
  std::mt19937_64 gen_;
};

// Output sink: path "-" or "" means stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_)
        throw ringwell::DomainError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_csv_meta(std::ostream& os, const std::string& command,
                    const std::string& config) {
  os << "# ringwell " << ringwell::kVersion << "\n";
  os << "# command: " << command << "\n";
  os << "# config: " << config << "\n";
}

ordered_json json_meta(const std::string& command,
                       const ordered_json& config) {
  return ordered_json{{"tool", "ringwell"},
                      {"version", ringwell::kVersion},
                      {"command", command},
                      {"config", config}};
}

Complex parse_vertex_token(const std::string& token, const std::string& where) {
  std::string body = token;
  for (char& c : body)
    if (c == ',') c = ' ';
  std::istringstream ss(body);
  double re = 0.0, im = 0.0;
  std::string rest;
  if (!(ss >> re >> im) || (ss >> rest))
    throw ringwell::DomainError("malformed vertex at " + where + ": '" +
                                token + "' (expected re,im)");
  return {re, im};
}

ringwell::Polygon read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ringwell::DomainError("cannot open polygon file: " + path);
  std::vector<Complex> vertices;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    vertices.push_back(parse_vertex_token(
        line, path + ":" + std::to_string(lineno)));
  }
  if (vertices.empty())
    throw ringwell::DomainError("polygon file " + path +
                                " contains no vertices");
  return ringwell::Polygon(std::move(vertices));
}

// ---------------------------------------------------------------------------
// polygon

struct PolygonArgs {
  int random_n = 0;
  int regular_n = 0;
  std::string file;
  std::vector<std::string> vertices;
  std::uint64_t seed = 0;
  double theta = 0.0;
  std::vector<double> theta_frac;
  double lambda = 0.5;

  // decompose
  std::string format = "csv";
  std::string output = "-";

  // iterate
  double tol = 1e-10;
  int max_steps = 100000;
  std::string trace;
  std::string iter_output = "-";
};

double resolve_theta(double theta, const std::vector<double>& frac,
                     bool theta_set) {
  if (!frac.empty()) {
    if (theta_set)
      throw ringwell::DomainError(
          "--theta and --theta-frac are mutually exclusive");
    if (frac.size() != 2 || frac[1] == 0.0)
      throw ringwell::DomainError("--theta-frac expects p q with q != 0");
    return frac[0] * ringwell::constants::kPi / frac[1];
  }
  if (!theta_set)
    throw ringwell::DomainError("theta is required: --theta or --theta-frac");
  return theta;
}

ringwell::Polygon make_polygon(const PolygonArgs& args, std::string* source) {
  const int sources = (args.random_n > 0) + (args.regular_n > 0) +
                      (!args.file.empty()) + (!args.vertices.empty());
  if (sources != 1)
    throw ringwell::DomainError(
        "exactly one polygon source required: --random, --regular, --file, "
        "or --vertices");
  if (args.random_n > 0) {
    *source = "random n=" + std::to_string(args.random_n) +
              " seed=" + std::to_string(args.seed);
    VertexRng rng(args.seed);
    std::vector<Complex> vertices;
    vertices.reserve(args.random_n);
    for (int i = 0; i < args.random_n; ++i) {
      const double re = rng.pm1();
      const double im = rng.pm1();
      vertices.emplace_back(re, im);
    }
    return ringwell::Polygon(std::move(vertices));
  }
  if (args.regular_n > 0) {
    *source = "regular n=" + std::to_string(args.regular_n);
    std::vector<Complex> vertices;
    vertices.reserve(args.regular_n);
    for (int mu = 0; mu < args.regular_n; ++mu) {
      const double angle =
          2.0 * ringwell::constants::kPi * mu / args.regular_n;
      vertices.emplace_back(std::cos(angle), std::sin(angle));
    }
    return ringwell::Polygon(std::move(vertices));
  }
  if (!args.file.empty()) {
    *source = "file " + args.file;
    return read_polygon_file(args.file);
  }
  *source = "vertices n=" + std::to_string(args.vertices.size());
  std::vector<Complex> vertices;
  vertices.reserve(args.vertices.size());
  for (std::size_t i = 0; i < args.vertices.size(); ++i)
    vertices.push_back(parse_vertex_token(
        args.vertices[i], "--vertices[" + std::to_string(i) + "]"));
  return ringwell::Polygon(std::move(vertices));
}

double reconstruction_residual(const ringwell::Polygon& polygon,
                               const ringwell::EigenpolygonDecomposition& d) {
  const ringwell::Polygon back = d.reconstruct();
  double residual = 0.0;
  for (int mu = 0; mu < polygon.size(); ++mu)
    residual = std::max(residual, std::abs(back[mu] - polygon[mu]));
  return residual;
}

int run_polygon_decompose(const PolygonArgs& args, double theta,
                          const std::string& config) {
  const ringwell::TransformParams params(theta, args.lambda);
  std::string source;
  const ringwell::Polygon polygon = make_polygon(args, &source);
  const int n = polygon.size();
  const auto decomposition = ringwell::decompose(polygon);
  const auto eta = ringwell::eigenvalues_eta(params, n);
  const auto dominant = ringwell::dominant_index(params, n);
  const double residual = reconstruction_residual(polygon, decomposition);

  Sink sink(args.output);
  std::ostream& os = sink.stream();
  if (args.format == "csv") {
    write_csv_meta(os, "polygon decompose", config);
    os << "# columns: k,re_c,im_c,abs_c,eta,dominant\n";
    for (int k = 0; k < n; ++k) {
      const Complex c = decomposition.coefficients()[k];
      os << k << "," << fmt(c.real()) << "," << fmt(c.imag()) << ","
         << fmt(std::abs(c)) << "," << fmt(eta[k]) << ","
         << (k == dominant.k ? 1 : 0) << "\n";
    }
    os << "# reconstruction_residual " << fmt(residual) << "\n";
  } else {
    ordered_json out;
    out["meta"] = json_meta("polygon decompose",
                            ordered_json::parse(config));
    ordered_json components = ordered_json::array();
    for (int k = 0; k < n; ++k) {
      const Complex c = decomposition.coefficients()[k];
      components.push_back(ordered_json{{"k", k},
                                        {"c", complex_json(c)},
                                        {"abs", std::abs(c)},
                                        {"eta", eta[k]},
                                        {"dominant", k == dominant.k}});
    }
    out["components"] = components;
    out["dominant_k"] = dominant.k;
    out["dominant_via_interval"] = dominant.from_interval;
    out["reconstruction_residual"] = residual;
    os << out.dump(2) << "\n";
  }
  return 0;
}

int run_polygon_iterate(const PolygonArgs& args, double theta,
                        const std::string& config) {
  const ringwell::TransformParams params(theta, args.lambda);
  std::string source;
  const ringwell::Polygon polygon = make_polygon(args, &source);

  const auto result =
      ringwell::iterate_to_eigenshape(polygon, params, args.max_steps,
                                      args.tol);

  if (!args.trace.empty()) {
    Sink sink(args.trace);
    std::ostream& os = sink.stream();
    write_csv_meta(os, "polygon iterate trace", config);
    os << "# columns: step,direction_residual\n";
    for (std::size_t i = 0; i < result.report.direction_residuals.size(); ++i)
      os << (i + 1) << "," << fmt(result.report.direction_residuals[i])
         << "\n";
  }

  ordered_json out;
  out["meta"] = json_meta("polygon iterate", ordered_json::parse(config));
  out["steps"] = result.report.steps;
  out["converged"] = result.report.converged;
  out["dominant_k"] = result.report.dominant_k;
  out["dominant_via_interval"] = result.report.dominant_via_interval;
  out["dominant_mass"] = result.report.dominant_mass;
  out["final_direction_residual"] =
      result.report.direction_residuals.empty()
          ? 0.0
          : result.report.direction_residuals.back();
  ordered_json shape = ordered_json::array();
  for (const Complex& z : result.shape.vertices())
    shape.push_back(complex_json(z));
  out["shape"] = shape;

  Sink sink(args.iter_output);
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// well

struct WellArgs {
  double width = 0.0;
  double depth = 0.0;
  double circumference = 0.0;
  double shift = 0.0;
  int count = -1;
  int grid = 10000;
  std::string format = "csv";
  std::string output = "-";
  int psi_samples = 0;
  std::string psi_output = "-";
};

int run_well(const WellArgs& args, const std::string& config) {
  const ringwell::WellGeometry geometry{args.width, args.circumference,
                                        args.depth, args.shift};
  ringwell::RootSearchOptions options;
  options.grid_points = args.grid;
  const auto states = ringwell::find_bound_states(geometry, args.count,
                                                  options);

  {
    Sink sink(args.output);
    std::ostream& os = sink.stream();
    if (args.format == "csv") {
      write_csv_meta(os, "well", config);
      os << "# columns: index,energy,k,kappa,amplitude,symmetric\n";
      if (states.empty()) os << "# no bound states\n";
      for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        os << i << "," << fmt(s.energy) << "," << fmt(s.k) << ","
           << fmt(s.kappa) << "," << fmt(s.amplitude) << ","
           << (s.symmetric ? 1 : 0) << "\n";
      }
    } else {
      ordered_json out;
      out["meta"] = json_meta("well", ordered_json::parse(config));
      ordered_json table = ordered_json::array();
      for (const auto& s : states)
        table.push_back(ordered_json{{"energy", s.energy},
                                     {"k", s.k},
                                     {"kappa", s.kappa},
                                     {"amplitude", s.amplitude},
                                     {"symmetric", s.symmetric}});
      out["states"] = table;
      out["count"] = states.size();
      if (states.empty()) out["note"] = "no bound states";
      os << out.dump(2) << "\n";
    }
  }

  if (args.psi_samples > 0) {
    const ringwell::BoundState* ground = nullptr;
    for (const auto& s : states)
      if (s.symmetric) {
        ground = &s;
        break;
      }
    Sink sink(args.psi_output);
    std::ostream& os = sink.stream();
    write_csv_meta(os, "well psi", config);
    os << "# columns: x,psi\n";
    if (ground == nullptr) {
      os << "# no symmetric state\n";
    } else {
      const ringwell::Wavefunction psi(*ground, geometry);
      const double x0 = -0.5 * geometry.width;
      const double step =
          geometry.circumference / std::max(1, args.psi_samples - 1);
      for (int i = 0; i < args.psi_samples; ++i) {
        const double x = x0 + i * step;
        os << fmt(x) << "," << fmt(psi(x)) << "\n";
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ring

struct RingArgs {
  int n = 0;
  double width = 0.0;
  double depth = 0.0;
  double spacing = 0.0;
  double shift = 0.0;
  double quad_tol = 1e-10;
  bool truncate = false;
  std::string out_prefix;
};

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m,
                      const std::string& command, const std::string& config,
                      const double* dropped_max) {
  Sink sink(path);
  std::ostream& os = sink.stream();
  write_csv_meta(os, command, config);
  if (dropped_max != nullptr)
    os << "# truncation_dropped_max " << fmt(*dropped_max) << "\n";
  os << "# columns: mu,nu,re,im\n";
  for (int mu = 0; mu < m.rows(); ++mu)
    for (int nu = 0; nu < m.cols(); ++nu)
      os << mu << "," << nu << "," << fmt(m(mu, nu).real()) << ","
         << fmt(m(mu, nu).imag()) << "\n";
}

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (int mu = 0; mu < m.rows(); ++mu) {
    ordered_json row = ordered_json::array();
    for (int nu = 0; nu < m.cols(); ++nu) row.push_back(complex_json(m(mu, nu)));
    rows.push_back(row);
  }
  return rows;
}

int run_ring(const RingArgs& args, const std::string& config) {
  const ringwell::WellGeometry geometry{
      args.width, args.spacing * args.n, args.depth, args.shift};
  const auto basis = ringwell::build_basis(geometry, args.n);
  const auto assembled = ringwell::assemble_matrices(basis, {args.quad_tol});

  const ringwell::RingMatrices* matrices = &assembled;
  double dropped_max = 0.0;
  ringwell::TruncationResult truncated{{}, 0.0};
  if (args.truncate) {
    truncated = ringwell::truncate_nearest_neighbor(assembled);
    matrices = &truncated.matrices;
    dropped_max = truncated.dropped_max;
  }

  const auto solution = ringwell::solve_ring(*matrices);

  ordered_json out;
  out["meta"] = json_meta("ring", ordered_json::parse(config));
  out["well"] = ordered_json{
      {"ground_energy", basis.ground.state().energy},
      {"k", basis.ground.state().k},
      {"kappa", basis.ground.state().kappa},
      {"amplitude", basis.ground.amplitude()}};
  ordered_json energies = ordered_json::array();
  for (int j = 0; j < solution.energies.size(); ++j)
    energies.push_back(solution.energies[j]);
  out["energies"] = energies;
  ordered_json states = ordered_json::array();
  for (int j = 0; j < solution.energies.size(); ++j) {
    ordered_json coeffs = ordered_json::array();
    for (int mu = 0; mu < solution.coefficients.rows(); ++mu)
      coeffs.push_back(complex_json(solution.coefficients(mu, j)));
    states.push_back(ordered_json{{"energy", solution.energies[j]},
                                  {"coefficients", coeffs}});
  }
  out["states"] = states;
  out["circulant_path"] = solution.circulant_path;
  if (solution.cross_check_deviation.has_value())
    out["cross_check_deviation"] = *solution.cross_check_deviation;
  else
    out["cross_check_deviation"] = nullptr;
  out["max_residual"] = solution.max_residual;
  if (args.truncate)
    out["truncation"] = ordered_json{{"dropped_max", dropped_max}};
  else
    out["truncation"] = nullptr;

  if (args.out_prefix.empty()) {
    out["overlap"] = matrix_json(matrices->overlap);
    out["hamiltonian"] = matrix_json(matrices->hamiltonian);
    std::cout << out.dump(2) << "\n";
  } else {
    const double* dropped = args.truncate ? &dropped_max : nullptr;
    write_matrix_csv(args.out_prefix + "_overlap.csv", matrices->overlap,
                     "ring overlap", config, dropped);
    write_matrix_csv(args.out_prefix + "_hamiltonian.csv",
                     matrices->hamiltonian, "ring hamiltonian", config,
                     dropped);
    Sink sink(args.out_prefix + "_solution.json");
    sink.stream() << out.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// map

struct MapArgs {
  double theta = 0.0;
  std::vector<double> theta_frac;
  double lambda = 0.5;
  bool w_only = false;
  double h11 = 0.0;
  double h12 = 0.0;
  bool h11_set = false;
  bool h12_set = false;
  // ring reference
  int n = 0;
  double width = 0.0;
  double depth = 0.0;
  double spacing = 0.0;
  double shift = 0.0;
  double quad_tol = 1e-10;
  std::string output = "-";
};

int run_map(const MapArgs& args, double theta, const std::string& config) {
  ordered_json out;
  out["meta"] = json_meta("map", ordered_json::parse(config));

  const bool raw_mode = args.h11_set || args.h12_set;
  const bool ring_mode = args.n > 0;
  if (static_cast<int>(raw_mode) + static_cast<int>(ring_mode) +
          static_cast<int>(args.w_only) !=
      1)
    throw ringwell::DomainError(
        "map needs exactly one of: --h11/--h12, --w-only, or a ring "
        "reference (--n with geometry flags)");

  if (args.w_only) {
    const auto target = ringwell::target_entries(theta, args.lambda);
    out["w1"] = target.w1;
    out["w2"] = complex_json(target.w2);
  } else {
    ringwell::CorrespondenceResult result{};
    if (raw_mode) {
      if (!args.h11_set || !args.h12_set)
        throw ringwell::DomainError("--h11 and --h12 must come together");
      result = ringwell::correspondence_from_raw(theta, args.lambda,
                                                 args.h11, args.h12);
    } else {
      const ringwell::WellGeometry geometry{
          args.width, args.spacing * args.n, args.depth, args.shift};
      const auto basis = ringwell::build_basis(geometry, args.n);
      const auto assembled =
          ringwell::assemble_matrices(basis, {args.quad_tol});
      // The correspondence wants a nearest-neighbor circulant: truncate.
      const auto truncated = ringwell::truncate_nearest_neighbor(assembled);
      result = ringwell::full_correspondence(theta, args.lambda,
                                             truncated.matrices);
      out["truncation"] =
          ordered_json{{"dropped_max", truncated.dropped_max}};
    }
    out["w1"] = result.w1;
    out["w2"] = complex_json(result.w2);
    out["h11_raw"] = result.h11_raw;
    out["h12_raw"] = result.h12_raw;
    out["shift_T"] = result.shift;
    out["alpha"] = result.alpha;
    out["beta"] = result.beta;
    out["basis_not_normalized"] = result.basis_not_normalized;
    out["warning"] =
        "the rotated basis (alpha + i beta) psi_2 is not normalized";
  }

  Sink sink(args.output);
  sink.stream() << out.dump(2) << "\n";
  return 0;
}

std::string config_echo_json(const ordered_json& config) {
  return config.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringwell: circulant polygon transformations, quantum wells "
               "on a circle, and the ring-to-polygon correspondence"};
  app.require_subcommand(1);

  // --- polygon ---------------------------------------------------------
  PolygonArgs poly;
  CLI::App* polygon =
      app.add_subcommand("polygon", "eigenpolygon decompositions and "
                                    "transformation dynamics");
  polygon->add_option("--random", poly.random_n,
                      "random polygon with this many vertices");
  polygon->add_option("--regular", poly.regular_n,
                      "regular polygon with this many vertices");
  polygon->add_option("--file", poly.file,
                      "polygon file: one 're,im' or 're im' vertex per line, "
                      "'#' comments");
  polygon->add_option("--vertices", poly.vertices,
                      "inline vertices as re,im tokens");
  polygon->add_option("--seed", poly.seed, "seed for --random (mt19937_64)");
  CLI::Option* poly_theta =
      polygon->add_option("--theta", poly.theta, "rotation angle (radians)");
  polygon->add_option("--theta-frac", poly.theta_frac,
                      "theta as p q meaning p*pi/q")
      ->expected(2);
  polygon->add_option("--lambda", poly.lambda,
                      "transformation parameter (default 0.5)");
  polygon->require_subcommand(1);

  CLI::App* decompose = polygon->add_subcommand(
      "decompose", "coefficients, eigenvalue table, residual");
  decompose->add_option("--format", poly.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  decompose->add_option("--output", poly.output, "output path (default '-')");

  CLI::App* iterate = polygon->add_subcommand(
      "iterate", "power-iterate to the dominant eigenshape");
  iterate->add_option("--tol", poly.tol, "direction tolerance");
  iterate->add_option("--max-steps", poly.max_steps, "iteration cap");
  iterate->add_option("--trace", poly.trace, "per-step residual CSV path");
  iterate->add_option("--output", poly.iter_output,
                      "report path (default '-')");

  // --- well ------------------------------------------------------------
  WellArgs well;
  CLI::App* well_cmd = app.add_subcommand(
      "well", "bound states of one finite well on a circle");
  well_cmd->add_option("--L", well.width, "well width (nm)")->required();
  well_cmd->add_option("--V0", well.depth, "well depth (meV)")->required();
  well_cmd->add_option("--l", well.circumference, "circumference (nm)")
      ->required();
  well_cmd->add_option("--shift", well.shift, "potential shift V' (meV)");
  well_cmd->add_option("--count", well.count,
                       "max states to report (-1 = all)");
  well_cmd->add_option("--grid", well.grid, "root-scan grid points");
  well_cmd->add_option("--format", well.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  well_cmd->add_option("--output", well.output, "output path (default '-')");
  well_cmd->add_option("--psi-samples", well.psi_samples,
                       "sample the symmetric ground wavefunction");
  well_cmd->add_option("--psi-output", well.psi_output,
                       "wavefunction CSV path (default '-')");

  // --- ring ------------------------------------------------------------
  RingArgs ring;
  CLI::App* ring_cmd = app.add_subcommand(
      "ring", "assemble and solve the n-well ring eigenproblem");
  ring_cmd->add_option("--n", ring.n, "number of wells")->required();
  ring_cmd->add_option("--L", ring.width, "well width (nm)")->required();
  ring_cmd->add_option("--V0", ring.depth, "well depth (meV)")->required();
  ring_cmd->add_option("--a", ring.spacing, "well spacing (nm); l = n a")
      ->required();
  ring_cmd->add_option("--shift", ring.shift, "potential shift V' (meV)");
  ring_cmd->add_option("--quad-tol", ring.quad_tol,
                       "quadrature budget per matrix entry");
  ring_cmd->add_flag("--truncate-nn", ring.truncate,
                     "zero entries beyond cyclic nearest neighbors");
  ring_cmd->add_option(
      "--out-prefix", ring.out_prefix,
      "write <prefix>_overlap.csv, <prefix>_hamiltonian.csv, "
      "<prefix>_solution.json instead of one JSON on stdout");

  // --- map -------------------------------------------------------------
  MapArgs map_args;
  CLI::App* map_cmd = app.add_subcommand(
      "map", "ring-to-polygon parameter correspondence");
  CLI::Option* map_theta =
      map_cmd->add_option("--theta", map_args.theta, "angle (radians)");
  map_cmd->add_option("--theta-frac", map_args.theta_frac,
                      "theta as p q meaning p*pi/q")
      ->expected(2);
  map_cmd->add_option("--lambda", map_args.lambda,
                      "transformation parameter (default 0.5)");
  map_cmd->add_flag("--w-only", map_args.w_only,
                    "emit W1 and W2 only, no ring pair");
  CLI::Option* h11_opt =
      map_cmd->add_option("--h11", map_args.h11, "raw ring diagonal");
  CLI::Option* h12_opt =
      map_cmd->add_option("--h12", map_args.h12, "raw neighbor coupling");
  map_cmd->add_option("--n", map_args.n, "ring reference: number of wells");
  map_cmd->add_option("--L", map_args.width, "ring reference: width (nm)");
  map_cmd->add_option("--V0", map_args.depth, "ring reference: depth (meV)");
  map_cmd->add_option("--a", map_args.spacing,
                      "ring reference: spacing (nm)");
  map_cmd->add_option("--shift", map_args.shift,
                      "ring reference: potential shift (meV)");
  map_cmd->add_option("--quad-tol", map_args.quad_tol,
                      "ring reference: quadrature budget");
  map_cmd->add_option("--output", map_args.output,
                      "output path (default '-')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(polygon)) {
      const double theta =
          resolve_theta(poly.theta, poly.theta_frac, poly_theta->count() > 0);
      ordered_json config{{"theta", theta},
                          {"lambda", poly.lambda},
                          {"seed", poly.seed}};
      std::string source;
      {
        // Echo the source exactly; make_polygon validates multiplicity.
        PolygonArgs probe = poly;
        make_polygon(probe, &source);
      }
      config["source"] = source;
      if (polygon->got_subcommand(decompose)) {
        config["format"] = poly.format;
        return run_polygon_decompose(poly, theta, config_echo_json(config));
      }
      config["tol"] = poly.tol;
      config["max_steps"] = poly.max_steps;
      return run_polygon_iterate(poly, theta, config_echo_json(config));
    }
    if (app.got_subcommand(well_cmd)) {
      const ordered_json config{{"L", well.width},
                                {"V0", well.depth},
                                {"l", well.circumference},
                                {"shift", well.shift},
                                {"count", well.count},
                                {"grid", well.grid},
                                {"format", well.format},
                                {"psi_samples", well.psi_samples}};
      return run_well(well, config_echo_json(config));
    }
    if (app.got_subcommand(ring_cmd)) {
      const ordered_json config{{"n", ring.n},
                                {"L", ring.width},
                                {"V0", ring.depth},
                                {"a", ring.spacing},
                                {"shift", ring.shift},
                                {"quad_tol", ring.quad_tol},
                                {"truncate_nn", ring.truncate}};
      return run_ring(ring, config_echo_json(config));
    }
    if (app.got_subcommand(map_cmd)) {
      map_args.h11_set = h11_opt->count() > 0;
      map_args.h12_set = h12_opt->count() > 0;
      const double theta = resolve_theta(map_args.theta, map_args.theta_frac,
                                         map_theta->count() > 0);
      ordered_json config{{"theta", theta}, {"lambda", map_args.lambda}};
      if (map_args.w_only) config["mode"] = "w-only";
      if (map_args.h11_set) {
        config["mode"] = "raw";
        config["h11"] = map_args.h11;
        config["h12"] = map_args.h12;
      }
      if (map_args.n > 0) {
        config["mode"] = "ring";
        config["n"] = map_args.n;
        config["L"] = map_args.width;
        config["V0"] = map_args.depth;
        config["a"] = map_args.spacing;
        config["shift"] = map_args.shift;
        config["quad_tol"] = map_args.quad_tol;
      }
      return run_map(map_args, theta, config_echo_json(config));
    }
  } catch (const ringwell::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ringwell::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
