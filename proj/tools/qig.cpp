// qig: command-line front end for the quantum-state geometry library.
//
//   qig divergence <sigma> <tau>                 Umegaki relative entropy
//   qig metric <rho> <sigma> <tau> [--method m]  Bogoliubov metric
//   qig geodesic <rho0> <rho1> [--kind k] [--grid n]   CSV along a geodesic
//   qig thermal <H> --beta b [--out file]        Gibbs state file
//   qig verify [--dims ..] [--seeds n] [...]     property-check report
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include "qig/qig.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string format_fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", x);
  return buf;
}

std::string format_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qig::DomainError("cannot write '" + out_path + "'");
  out << text;
}

int cmd_divergence(const std::string& sigma_path, const std::string& tau_path) {
  qig::DensityMatrix sigma = qig::load_density(sigma_path);
  qig::DensityMatrix tau = qig::load_density(tau_path);
  std::cout << format_fixed12(qig::umegaki_divergence(sigma, tau)) << "\n";
  return 0;
}

int cmd_metric(const std::string& rho_path, const std::string& sigma_path,
               const std::string& tau_path, const std::string& method) {
  qig::DensityMatrix rho = qig::load_density(rho_path);
  qig::DensityMatrix sigma = qig::load_density(sigma_path);
  qig::DensityMatrix tau = qig::load_density(tau_path);
  double value = 0.0;
  if (method == "integral")
    value = qig::bogoliubov_metric(rho, sigma, tau);
  else if (method == "superop")
    value = qig::metric_via_G(rho, sigma, tau);
  else if (method == "fd")
    value = qig::metric_fd(rho, sigma, tau, 1e-4);
  else
    throw CLI::ValidationError("--method must be integral, superop or fd");
  std::cout << format_sig(value) << "\n";
  return 0;
}

int cmd_geodesic(const std::string& rho0_path, const std::string& rho1_path,
                 const std::string& kind, int grid,
                 const std::string& out_path) {
  qig::DensityMatrix rho0 = qig::load_density(rho0_path);
  qig::DensityMatrix rho1 = qig::load_density(rho1_path);
  const int n = rho0.dim();
  if (rho1.dim() != n)
    throw qig::DomainError("geodesic: endpoint dimensions differ");
  std::ostringstream csv;
  auto eig_header = [&]() {
    for (int i = 1; i <= n; ++i) csv << ",eig" << i;
  };
  if (kind == "exponential") {
    qig::ExponentialArc arc(rho0, rho1);
    qig::GnsSpace center(rho0);
    csv << "t";
    eig_header();
    csv << ",zeta,zeta_dot,zeta_ddot,d_rho0,d_rho1,chi_affine_residual\n";
    for (int i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / (grid - 1);
      auto [state, zeta] = qig::exp_geodesic(arc, t);
      auto dz = arc.zeta_derivatives(t);
      csv << format_sig(t);
      for (int k = 0; k < n; ++k)
        csv << ',' << format_sig(state.spec().eigenvalues(k));
      csv << ',' << format_sig(zeta) << ',' << format_sig(dz.first) << ','
          << format_sig(dz.second) << ','
          << format_sig(qig::umegaki_divergence(state, rho0)) << ','
          << format_sig(qig::umegaki_divergence(state, rho1)) << ','
          << format_sig(qig::affine_coordinate_check(rho0, arc, t)) << "\n";
    }
  } else if (kind == "mixture") {
    qig::GnsSpace center(rho0);
    const qig::cmat k1 = qig::xi_chart(center, rho1).B();
    csv << "t";
    eig_header();
    csv << ",d_rho0,d_rho1,xi_affine_residual\n";
    for (int i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / (grid - 1);
      qig::DensityMatrix state = qig::mixture_geodesic(rho0, rho1, t);
      // the xi-chart image of the mixture path is generally non-affine;
      // reported, not asserted
      const double residual =
          qig::op_norm(qig::xi_chart(center, state).B() - t * k1);
      csv << format_sig(t);
      for (int k = 0; k < n; ++k)
        csv << ',' << format_sig(state.spec().eigenvalues(k));
      csv << ',' << format_sig(qig::umegaki_divergence(state, rho0)) << ','
          << format_sig(qig::umegaki_divergence(state, rho1)) << ','
          << format_sig(residual) << "\n";
    }
  } else {
    throw CLI::ValidationError("--kind must be mixture or exponential");
  }
  write_output(out_path, csv.str());
  return 0;
}

int cmd_thermal(const std::string& h_path, double beta,
                const std::string& out_path) {
  qig::Hamiltonian h = qig::load_hamiltonian(h_path);
  qig::DensityMatrix rho = qig::thermal_state(h, beta);
  const std::string text =
      qig::format_matrix_file(rho.matrix(), qig::MatrixKind::density);
  if (out_path.empty())
    std::cout << text;
  else
    qig::save_matrix_file(out_path, rho.matrix(), qig::MatrixKind::density);
  return 0;
}

int cmd_verify(const qig::VerifyOptions& options, const std::string& out_path) {
  std::vector<qig::ReportRow> rows = qig::run_verification(options);
  write_output(out_path, qig::report_csv(rows));
  int failures = 0;
  for (const auto& r : rows)
    if (!r.passed) {
      if (failures == 0)
        std::cerr << "verification failed: " << r.check_name << " (dim "
                  << r.dim << ", seed " << r.seed << ", residual "
                  << format_sig(r.residual) << " > " << format_sig(r.tolerance)
                  << ")\n";
      ++failures;
    }
  if (failures > 0) {
    std::cerr << failures << " of " << rows.size() << " rows failed\n";
    return 1;
  }
  return 0;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    dims.push_back(std::stoi(item));
  }
  if (dims.empty()) throw std::invalid_argument("empty --dims list");
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of faithful quantum states"};
  app.require_subcommand(1);

  std::string sigma_path, tau_path, rho_path, rho0_path, rho1_path, h_path;
  std::string out_path;
  std::string method = "integral";
  std::string kind = "exponential";
  std::string dims_spec = "2,3,4";
  int grid = 11;
  double beta = 1.0;
  qig::VerifyOptions vopt;

  auto* divergence = app.add_subcommand("divergence", "Umegaki divergence");
  divergence->add_option("sigma", sigma_path)->required();
  divergence->add_option("tau", tau_path)->required();

  auto* metric = app.add_subcommand("metric", "Bogoliubov metric");
  metric->add_option("rho", rho_path)->required();
  metric->add_option("sigma", sigma_path)->required();
  metric->add_option("tau", tau_path)->required();
  metric->add_option("--method", method, "integral | superop | fd");

  auto* geodesic = app.add_subcommand("geodesic", "geodesic report as CSV");
  geodesic->add_option("rho0", rho0_path)->required();
  geodesic->add_option("rho1", rho1_path)->required();
  geodesic->add_option("--kind", kind, "mixture | exponential");
  geodesic->add_option("--grid", grid, "number of samples (>= 2)")
      ->check(CLI::Range(2, 100000));
  geodesic->add_option("--out", out_path, "output path (default stdout)");

  auto* thermal = app.add_subcommand("thermal", "Gibbs state from a Hamiltonian");
  thermal->add_option("hamiltonian", h_path)->required();
  thermal->add_option("--beta", beta, "inverse temperature")->required();
  thermal->add_option("--out", out_path, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the property-check suite");
  verify->add_option("--dims", dims_spec, "comma-separated dimensions");
  verify->add_option("--seeds", vopt.seeds, "seeds per (check, dim)");
  verify->add_option("--tol-profile", vopt.tol_profile, "strict | fd");
  verify->add_option("--seed", vopt.master_seed, "master 64-bit seed");
  verify->add_option("--out", out_path, "CSV output path (default stdout)");
  verify->add_option("--perturb", vopt.perturb,
                     "test-only: force the named check to fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(divergence))
      return cmd_divergence(sigma_path, tau_path);
    if (app.got_subcommand(metric))
      return cmd_metric(rho_path, sigma_path, tau_path, method);
    if (app.got_subcommand(geodesic))
      return cmd_geodesic(rho0_path, rho1_path, kind, grid, out_path);
    if (app.got_subcommand(thermal)) return cmd_thermal(h_path, beta, out_path);
    if (app.got_subcommand(verify)) {
      vopt.dims = parse_dims(dims_spec);
      return cmd_verify(vopt, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
