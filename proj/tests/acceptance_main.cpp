// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails. argv[1] names the CLI binary
// used by the determinism check.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sagnac/characterization.hpp"
#include "sagnac/elements.hpp"
#include "sagnac/experiments.hpp"
#include "sagnac/fresnel.hpp"
#include "sagnac/interferometer.hpp"
#include "sagnac/metrics.hpp"

using namespace sagnac;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const DoveParams kBenchDove{0.9877, 0.9475, 0.159 * kPi};

bool g_all_ok = true;

void report(int number, bool ok, const std::string& detail) {
  std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", number, detail.c_str());
  if (!ok) g_all_ok = false;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

InterferometerConfig bssi_config(const DoveParams& dove, double alpha) {
  InterferometerConfig config;
  config.kind = InterferometerKind::Bssi;
  config.dove = dove;
  config.alpha = alpha;
  return config;
}

// 1. minimum sorting fidelity of the plain splitter loop on a dense angle grid
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  SweepSpec spec;
  spec.variable = SweepVariable::Alpha;
  spec.grid = linspace(0.0, kPi / 2.0, 721);  // step pi/1440
  spec.config = bssi_config(kBenchDove, 0.0);
  const SweepResult curve = sweep_bssi_alpha(spec);
  double min_fidelity = 2.0;
  double argmin = 0.0;
  for (const auto& row : curve.rows) {
    if (row.fidelity < min_fidelity) {
      min_fidelity = row.fidelity;
      argmin = row.x;
    }
  }
  const double elapsed = seconds_since(start);
  const double step = (kPi / 2.0) / 720.0;
  const bool ok = std::abs(min_fidelity - 0.939) <= 0.001 &&
                  std::abs(argmin - kPi / 4.0) <= 3.0 * step && elapsed < 1.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "splitter-loop minimum fidelity %.6f at %.6f rad (want 0.939 +/- 0.001 near "
                "pi/4 = %.6f) in %.2f s",
                min_fidelity, argmin, kPi / 4.0, elapsed);
  report(1, ok, buf);
}

// 2. polarizing-loop fidelity floor on the same grid, exact at pi/4
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> grid = linspace(0.0, kPi / 2.0, 721);
  double min_fidelity = 2.0;
  for (const double alpha : grid) {
    min_fidelity = std::min(min_fidelity, pbssi_fidelity(kBenchDove, alpha));
  }
  const double at_quarter = pbssi_fidelity(kBenchDove, kPi / 4.0);
  const double elapsed = seconds_since(start);
  const bool ok = min_fidelity >= 0.9995 && at_quarter == 1.0 && elapsed < 1.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "polarizing-loop fidelity floor %.7f (want >= 0.9995), value at pi/4 %.17g "
                "(want exactly 1) in %.2f s",
                min_fidelity, at_quarter, elapsed);
  report(2, ok, buf);
}

// 3. polarizing-loop intensity loss at the operating angle
void criterion_3() {
  InterferometerConfig config;
  config.kind = InterferometerKind::Pbssi;
  config.dove = kBenchDove;
  config.alpha = kPi / 4.0;
  const JonesVector diag{std::sqrt(0.5), std::sqrt(0.5)};
  const PortOutput out = run_pbssi(config, make_port_input(diag, 0));
  const bool ok = std::abs(out.p_d - 0.031) <= 0.002;
  char buf[160];
  std::snprintf(buf, sizeof buf, "polarizing-loop loss p_d(pi/4) = %.6f (want 0.031 +/- 0.002)",
                out.p_d);
  report(3, ok, buf);
}

// 4. phase bounds from the reflection model
void criterion_4() {
  const double ceiling = max_tir_phase(1.52);
  const double index = min_index_for_phase(kPi / 2.0);
  const bool ok = std::abs(ceiling - 0.259 * kPi) <= 0.001 * kPi &&
                  std::abs(index - 2.414) <= 0.005;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "phase ceiling at n=1.52 is %.6fpi (want 0.259pi +/- 0.001pi); index for a "
                "half-wave delay %.6f (want 2.414 +/- 0.005)",
                ceiling / kPi, index);
  report(4, ok, buf);
}

// 5. bench characterization: phase inversion and noiseless transmission fit
void criterion_5() {
  const double inverted = invert_delta_phi(0.939, 0.987, 0.945);
  std::vector<double> settings;
  for (int i = 0; i < 25; ++i) settings.push_back(static_cast<double>(i) * kPi / 25.0);
  const FitResult fit = fit_transmissions(simulate_hwp_sweep(kBenchDove, settings, 0.0, 0));
  const double fit_err =
      std::max(std::abs(fit.t_par - kBenchDove.t_par), std::abs(fit.t_perp - kBenchDove.t_perp));
  const bool ok = std::abs(inverted - 0.159 * kPi) <= 0.001 * kPi && fit_err <= 1e-9;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "inverted phase %.6fpi (want 0.159pi +/- 0.001pi); noiseless fit error %.2e "
                "(want <= 1e-9)",
                inverted / kPi, fit_err);
  report(5, ok, buf);
}

// 6. plate-compensated loop sorts perfectly on the operating grid
void criterion_6() {
  double worst = 0.0;
  int checked = 0;
  InterferometerConfig config;
  config.kind = InterferometerKind::ModifiedBssi;
  config.dove = kBenchDove;
  const auto pols = standard_polarizations();
  for (int k = 0; k < 33; ++k) {
    config.alpha = static_cast<double>(2 * k + 1) * kPi / 4.0;
    for (int l = -10; l <= 10; ++l) {
      const Port expected = expected_bssi_port(l, config.alpha);
      for (const auto& pol : pols) {
        const PortOutput out = run_modified_bssi(config, make_port_input(pol.state, l));
        worst = std::max(worst, std::abs(bssi_fidelity(out, expected).fidelity - 1.0));
        ++checked;
      }
    }
  }
  const bool ok = worst <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "compensated loop worst |fidelity - 1| = %.2e over %d runs, 33 angles x 6 "
                "polarizations x l in [-10, 10] (want <= 1e-12)",
                worst, checked);
  report(6, ok, buf);
}

// 7. alignment-error trend: fidelity decays with the mode order, no
// polarization stands out
void criterion_7() {
  const auto start = std::chrono::steady_clock::now();
  ImperfectionSpec spec;
  spec.rotation_error_rms = 2.0 * kPi / 180.0;
  spec.l_range = {1, 10};
  spec.polarizations = standard_polarizations();
  spec.trials = 10000;
  spec.seed = 2024;
  InterferometerConfig config;
  config.kind = InterferometerKind::ModifiedBssi;
  config.dove = kBenchDove;
  config.alpha = kPi / 4.0;
  const ImperfectionResult result = imperfection_study(spec, config);
  const double elapsed = seconds_since(start);

  const std::size_t pol_count = spec.polarizations.size();
  std::vector<double> mean(10, 0.0);
  std::vector<double> stderr_max(10, 0.0);
  std::vector<double> spread(10, 0.0);
  for (int l = 1; l <= 10; ++l) {
    double lo = 2.0;
    double hi = -1.0;
    for (std::size_t p = 0; p < pol_count; ++p) {
      const auto& cell = result.cells[static_cast<std::size_t>(l - 1) * pol_count + p];
      mean[l - 1] += cell.mean_fidelity;
      stderr_max[l - 1] = std::max(stderr_max[l - 1], cell.stderr_fidelity);
      lo = std::min(lo, cell.mean_fidelity);
      hi = std::max(hi, cell.mean_fidelity);
    }
    mean[l - 1] /= static_cast<double>(pol_count);
    spread[l - 1] = hi - lo;
  }

  bool monotone = true;
  for (int l = 1; l <= 9; ++l) {
    const double slack =
        3.0 * std::sqrt(stderr_max[l - 1] * stderr_max[l - 1] + stderr_max[l] * stderr_max[l]);
    if (mean[l] > mean[l - 1] + slack) monotone = false;
  }
  bool pol_agnostic = true;
  for (int l = 1; l <= 10; ++l) {
    if (spread[l - 1] >= 10.0 * stderr_max[l - 1]) pol_agnostic = false;
  }
  const bool ok = monotone && pol_agnostic && elapsed < 30.0;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "2-degree-RMS study: mean fidelity %.4f (l=1) -> %.4f (l=10), decay monotone "
                "within 3 se: %s; polarization spread within 10 se: %s; %.2f s (want < 30 s)",
                mean[0], mean[9], monotone ? "yes" : "no", pol_agnostic ? "yes" : "no", elapsed);
  report(7, ok, buf);
}

// 8. two independent routes agree: numeric loop propagation vs closed form,
// and inner-product class overlap vs its closed form
void criterion_8() {
  double worst_amp = 0.0;
  const auto pols = standard_polarizations();
  for (int k = 0; k < 4; ++k) {
    const double alpha = static_cast<double>(2 * k + 1) * kPi / 4.0;
    const InterferometerConfig config = bssi_config(kBenchDove, alpha);
    for (int l = -3; l <= 3; ++l) {
      for (const auto& pol : pols) {
        const PortOutput numeric = run_bssi(config, make_port_input(pol.state, l));
        const PortOutput closed = closed_form_bssi(config, pol.state, l);
        for (const Port port : {Port::C, Port::D}) {
          for (const Pol basis : {Pol::H, Pol::V}) {
            for (int order = -12; order <= 12; ++order) {
              worst_amp = std::max(worst_amp,
                                   std::abs(numeric.state.at(port, basis, order) -
                                            closed.state.at(port, basis, order)));
            }
          }
        }
        worst_amp = std::max(worst_amp, std::abs(numeric.p_c - closed.p_c));
        worst_amp = std::max(worst_amp, std::abs(numeric.p_d - closed.p_d));
      }
    }
  }

  // class overlap: build the two exit-port polarization states carrying a
  // half-turn relative mode phase straight from the prism matrix, and compare
  // their squared inner product with the closed form
  double worst_overlap = 0.0;
  const Complex quarter_turn = std::polar(1.0, kPi / 4.0);
  for (const double t_par : {0.9, 0.95, 1.0}) {
    for (const double t_perp : {0.9, 0.95, 1.0}) {
      for (const double delta_phi : {0.0, 0.159 * kPi, kPi / 2.0}) {
        const DoveParams params{t_par, t_perp, delta_phi};
        for (const double alpha : linspace(0.0, kPi / 2.0, 73)) {
          const Complex a = dove_jones(params, alpha).at(0, 0);
          const Complex b = dove_jones(params, -alpha).at(1, 1);
          const JonesVector plus_class{a * quarter_turn, b * std::conj(quarter_turn)};
          const JonesVector minus_class{a * std::conj(quarter_turn), b * quarter_turn};
          const double via_inner = polarization_overlap(plus_class, minus_class);
          worst_overlap =
              std::max(worst_overlap, std::abs(via_inner - pbssi_overlap(params, alpha)));
        }
      }
    }
  }
  const bool ok = worst_amp <= 1e-12 && worst_overlap <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "route agreement: propagation vs closed form %.2e; inner product vs closed "
                "overlap %.2e (want both <= 1e-12)",
                worst_amp, worst_overlap);
  report(8, ok, buf);
}

// 9. analytic anchors: the half-half point, and the port swap between
// neighboring mode orders
void criterion_9() {
  double worst_half = 0.0;
  for (const auto& pair : std::vector<std::pair<double, double>>{
           {0.9877, 0.9475}, {0.9, 0.2}, {1.0, 0.35}, {0.6, 0.6}}) {
    InterferometerConfig config = bssi_config({pair.first, pair.second, kPi / 2.0}, kPi / 4.0);
    const PortOutput out = run_bssi(config, make_port_input(JonesVector{1.0, 0.0}, 0));
    worst_half = std::max(worst_half, std::abs(out.p_d - 0.5));
  }

  double worst_swap = 0.0;
  const InterferometerConfig config = bssi_config(kBenchDove, kPi / 4.0);
  const JonesVector diag{std::sqrt(0.5), std::sqrt(0.5)};
  for (int l = -2; l <= 2; ++l) {
    const PortOutput at_l = run_bssi(config, make_port_input(diag, l));
    const PortOutput at_next = run_bssi(config, make_port_input(diag, l + 1));
    worst_swap = std::max(worst_swap, std::abs(at_l.p_c - at_next.p_d));
    worst_swap = std::max(worst_swap, std::abs(at_l.p_d - at_next.p_c));
  }
  const bool ok = worst_half <= 1e-12 && worst_swap <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "half-delay balance |p_d - 1/2| = %.2e over four transmission pairs; "
                "neighbor-order port swap residual %.2e (want both <= 1e-12)",
                worst_half, worst_swap);
  report(9, ok, buf);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// 10. repeated CLI runs are bit-identical
void criterion_10(const char* cli_path) {
  if (cli_path == nullptr) {
    report(10, false, "determinism: no simulator binary path supplied");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "sagnac_acceptance";
  fs::create_directories(dir);
  const std::string cli = cli_path;

  struct Job {
    std::string name;
    std::string args;
  };
  const std::vector<Job> jobs = {
      {"fig3", "fig3 --count 721 --out "},
      {"fig4", "fig4 --count 721 --out "},
      {"trend", "table1-trend --trials 2000 --l-lo 1 --l-hi 5 --seed 2024 --out "},
  };
  bool ok = true;
  std::string detail;
  for (const auto& job : jobs) {
    const fs::path first = dir / (job.name + "_a.csv");
    const fs::path second = dir / (job.name + "_b.csv");
    for (const fs::path& target : {first, second}) {
      const std::string command =
          cli + " " + job.args + target.string() + " > /dev/null 2>&1";
      if (std::system(command.c_str()) != 0) {
        ok = false;
        detail += job.name + " run failed; ";
      }
    }
    const std::string a = read_file(first);
    if (a.empty() || a != read_file(second)) {
      ok = false;
      detail += job.name + " outputs differ; ";
    }
    if (job.name == "fig3") {
      const std::string dashed_a = read_file(dir / "fig3_a_dashed.csv");
      if (dashed_a.empty() || dashed_a != read_file(dir / "fig3_b_dashed.csv")) {
        ok = false;
        detail += "fig3 companion outputs differ; ";
      }
    }
  }
  if (detail.empty()) {
    detail = "determinism: fig3, fig4, and table1-trend rewrites are bit-identical";
  } else {
    detail = "determinism: " + detail;
  }
  report(10, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(argc > 1 ? argv[1] : nullptr);
  return g_all_ok ? 0 : 1;
}
