#include "sagnac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sagnac/bench.hpp"
#include "sagnac/characterization.hpp"
#include "sagnac/errors.hpp"
#include "sagnac/experiments.hpp"
#include "sagnac/fresnel.hpp"
#include "sagnac/interferometer.hpp"
#include "sagnac/io.hpp"
#include "sagnac/metrics.hpp"

namespace sagnac {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

JonesVector pol_from_label(const std::string& label) {
  for (const auto& pol : standard_polarizations()) {
    if (pol.label == label) return pol.state;
  }
  throw std::invalid_argument("unknown polarization label '" + label + "'");
}

std::string default_dashed_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return path + "_dashed";
  return path.substr(0, dot) + "_dashed" + path.substr(dot);
}

// ---- result serialization ------------------------------------------------

std::string alpha_sweep_csv(const SweepResult& result) {
  std::string text = "alpha_rad,fidelity,p_c,p_d\n";
  for (const auto& row : result.rows) {
    text += fmt(row.x) + "," + fmt(row.fidelity) + "," + fmt(row.p_c) + "," + fmt(row.p_d) + "\n";
  }
  return text;
}

std::string dashed_sweep_csv(const SweepResult& result) {
  std::string text = "delta_phi_rad,fidelity\n";
  for (const auto& row : result.rows) {
    text += fmt(row.x) + "," + fmt(row.fidelity) + "\n";
  }
  return text;
}

std::string pbssi_sweep_csv(const SweepResult& result) {
  std::string text = "alpha_rad,fidelity_prime,p_c\n";
  for (const auto& row : result.rows) {
    text += fmt(row.x) + "," + fmt(row.fidelity) + "," + fmt(row.p_c) + "\n";
  }
  return text;
}

std::string trend_csv(const ImperfectionResult& result) {
  std::string text = "l,polarization,mean_fidelity,stderr\n";
  for (const auto& cell : result.cells) {
    text += std::to_string(cell.l) + "," + cell.polarization + "," + fmt(cell.mean_fidelity) +
            "," + fmt(cell.stderr_fidelity) + "\n";
  }
  return text;
}

nlohmann::json alpha_sweep_rows(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"alpha_rad", row.x},
                    {"fidelity", row.fidelity},
                    {"p_c", row.p_c},
                    {"p_d", row.p_d}});
  }
  return rows;
}

nlohmann::json dashed_sweep_rows(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"delta_phi_rad", row.x}, {"fidelity", row.fidelity}});
  }
  return rows;
}

nlohmann::json pbssi_sweep_rows(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) {
    rows.push_back(
        {{"alpha_rad", row.x}, {"fidelity_prime", row.fidelity}, {"p_c", row.p_c}});
  }
  return rows;
}

nlohmann::json trend_rows(const ImperfectionResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& cell : result.cells) {
    rows.push_back({{"l", cell.l},
                    {"polarization", cell.polarization},
                    {"mean_fidelity", cell.mean_fidelity},
                    {"stderr", cell.stderr_fidelity}});
  }
  return rows;
}

std::string json_document(const nlohmann::json& spec, std::uint64_t seed,
                          const nlohmann::json& results, const nlohmann::json& summary) {
  nlohmann::json doc;
  doc["spec"] = spec;
  doc["seed"] = seed;
  doc["results"] = results;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

struct SweepSummary {
  double min_fidelity = 1.0;
  double min_fidelity_x = 0.0;
  double min_p_c = 1.0;
};

SweepSummary summarize(const SweepResult& result) {
  SweepSummary summary;
  bool first = true;
  for (const auto& row : result.rows) {
    if (first || row.fidelity < summary.min_fidelity) {
      summary.min_fidelity = row.fidelity;
      summary.min_fidelity_x = row.x;
    }
    if (first || row.p_c < summary.min_p_c) summary.min_p_c = row.p_c;
    first = false;
  }
  return summary;
}

// ---- subcommand option blocks -------------------------------------------

struct DoveFlags {
  double t_par = 0.9877;
  double t_perp = 0.9475;
  std::string delta_phi = "0.159pi";

  DoveParams resolve() const {
    DoveParams params;
    params.t_par = t_par;
    params.t_perp = t_perp;
    params.delta_phi = parse_angle_flag(delta_phi);
    params.validate();  // flag values, so violations are usage errors
    return params;
  }
};

void add_dove_flags(CLI::App* cmd, DoveFlags& flags) {
  cmd->add_option("--t-par", flags.t_par, "intensity transmission of the parallel component")
      ->capture_default_str();
  cmd->add_option("--t-perp", flags.t_perp,
                  "intensity transmission of the perpendicular component")
      ->capture_default_str();
  cmd->add_option("--delta-phi", flags.delta_phi,
                  "internal phase delay; needs a deg/rad/pi suffix")
      ->capture_default_str();
}

// ---- bench execution -----------------------------------------------------

int execute_bench(const BenchDocument& doc, std::ostream& out) {
  const DoveParams dove = doc.resolved_dove();
  InterferometerConfig config = doc.interferometer;
  config.dove = dove;

  const nlohmann::json spec_echo = {{"bench", print_bench(doc)}};
  std::string csv_text;
  nlohmann::json rows;
  nlohmann::json summary_json;
  std::uint64_t seed = 0;
  std::string summary_line;

  try {
    if (doc.sweep) {
      SweepSpec spec;
      spec.variable = doc.sweep->variable;
      spec.grid = linspace(doc.sweep->first, doc.sweep->last, doc.sweep->count);
      spec.config = config;
      spec.input_polarization = pol_from_label(doc.sweep->polarization);
      spec.l = doc.sweep->l;
      SweepResult result;
      if (spec.variable == SweepVariable::DeltaPhi) {
        result = sweep_bssi_delta_phi(spec);
        csv_text = dashed_sweep_csv(result);
        rows = dashed_sweep_rows(result);
      } else if (config.kind == InterferometerKind::Bssi) {
        result = sweep_bssi_alpha(spec);
        csv_text = alpha_sweep_csv(result);
        rows = alpha_sweep_rows(result);
      } else if (config.kind == InterferometerKind::Pbssi) {
        result = sweep_pbssi_alpha(spec);
        csv_text = pbssi_sweep_csv(result);
        rows = pbssi_sweep_rows(result);
      } else {
        throw std::invalid_argument("bench sweeps support the bssi and pbssi kinds");
      }
      const SweepSummary s = summarize(result);
      summary_json = {{"min_fidelity", s.min_fidelity}, {"argmin", s.min_fidelity_x}};
      char buf[160];
      std::snprintf(buf, sizeof buf, "run: min fidelity %.6f at %.9g rad over %zu points",
                    s.min_fidelity, s.min_fidelity_x, result.rows.size());
      summary_line = buf;
    } else if (doc.imperfection) {
      if (config.kind != InterferometerKind::ModifiedBssi) {
        throw std::invalid_argument("imperfection studies need the modified kind");
      }
      ImperfectionSpec spec;
      spec.rotation_error_rms = doc.imperfection->rms;
      spec.l_range = {doc.imperfection->l_lo, doc.imperfection->l_hi};
      spec.polarizations = standard_polarizations();
      spec.trials = doc.imperfection->trials;
      spec.seed = doc.imperfection->seed;
      seed = spec.seed;
      const ImperfectionResult result = imperfection_study(spec, config);
      csv_text = trend_csv(result);
      rows = trend_rows(result);
      double lowest = 1.0;
      for (const auto& cell : result.cells) lowest = std::min(lowest, cell.mean_fidelity);
      summary_json = {{"min_mean_fidelity", lowest}};
      char buf[160];
      std::snprintf(buf, sizeof buf, "run: lowest mean fidelity %.6f over %zu cells", lowest,
                    result.cells.size());
      summary_line = buf;
    } else {
      const bool polarizing = config.kind == InterferometerKind::Pbssi;
      const JonesVector input = pol_from_label(polarizing ? "+" : "H");
      PortOutput output;
      double fidelity = 0.0;
      switch (config.kind) {
        case InterferometerKind::Bssi:
          output = run_bssi(config, make_port_input(input, 0));
          fidelity = bssi_fidelity(output, expected_bssi_port(0, config.alpha)).fidelity;
          break;
        case InterferometerKind::Pbssi:
          output = run_pbssi(config, make_port_input(input, 0));
          fidelity = pbssi_fidelity(config.dove, config.alpha);
          break;
        case InterferometerKind::ModifiedBssi:
          output = run_modified_bssi(config, make_port_input(input, 0));
          fidelity = bssi_fidelity(output, expected_bssi_port(0, config.alpha)).fidelity;
          break;
      }
      csv_text = "alpha_rad,fidelity,p_c,p_d\n" + fmt(config.alpha) + "," + fmt(fidelity) +
                 "," + fmt(output.p_c) + "," + fmt(output.p_d) + "\n";
      rows = nlohmann::json::array({{{"alpha_rad", config.alpha},
                                     {"fidelity", fidelity},
                                     {"p_c", output.p_c},
                                     {"p_d", output.p_d}}});
      summary_json = {{"fidelity", fidelity}, {"p_c", output.p_c}, {"p_d", output.p_d}};
      char buf[160];
      std::snprintf(buf, sizeof buf, "run: fidelity %.6f, p_c %.6f, p_d %.6f", fidelity,
                    output.p_c, output.p_d);
      summary_line = buf;
    }
  } catch (const std::invalid_argument& e) {
    // the offending values came from the bench file, so this is a data error
    throw PhysicsError(e.what());
  }

  if (doc.output) {
    if (doc.output->format == OutputFormat::Csv) {
      write_text_atomic(doc.output->path, csv_text);
    } else {
      write_text_atomic(doc.output->path, json_document(spec_echo, seed, rows, summary_json));
    }
    summary_line += "; wrote " + doc.output->path;
  }
  out << summary_line << "\n";
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"single-path Sagnac loop simulator", "sagnacsim"};
  app.require_subcommand(1);

  // fig3: plain-loop fidelity versus prism angle, plus the phase-delay curve
  auto* fig3 = app.add_subcommand(
      "fig3", "fidelity of the plain splitter loop versus prism angle and phase delay");
  DoveFlags fig3_dove;
  add_dove_flags(fig3, fig3_dove);
  std::size_t fig3_count = 721;
  std::string fig3_out = "fig3.csv";
  std::string fig3_dashed;
  std::string fig3_format = "csv";
  fig3->add_option("--count", fig3_count, "grid points per curve")->capture_default_str();
  fig3->add_option("--out", fig3_out, "output file for the angle curve")->capture_default_str();
  fig3->add_option("--dashed-out", fig3_dashed,
                   "output file for the phase-delay curve (default: derived from --out)");
  fig3->add_option("--format", fig3_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // fig4: polarizing-loop fidelity and port-C probability versus prism angle
  auto* fig4 = app.add_subcommand(
      "fig4", "fidelity and port-C probability of the polarizing loop versus prism angle");
  DoveFlags fig4_dove;
  add_dove_flags(fig4, fig4_dove);
  std::size_t fig4_count = 721;
  std::string fig4_out = "fig4.csv";
  std::string fig4_format = "csv";
  fig4->add_option("--count", fig4_count, "grid points")->capture_default_str();
  fig4->add_option("--out", fig4_out, "output file")->capture_default_str();
  fig4->add_option("--format", fig4_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // table1-trend: Monte Carlo misalignment study of the compensated loop
  auto* trend = app.add_subcommand(
      "table1-trend", "mean sorting fidelity under seeded rotation errors, by mode order");
  DoveFlags trend_dove;
  add_dove_flags(trend, trend_dove);
  std::string trend_rms = "2deg";
  std::string trend_alpha = "0.25pi";
  std::size_t trend_trials = 10000;
  int trend_l_lo = 1;
  int trend_l_hi = 10;
  std::uint64_t trend_seed = 2024;
  std::string trend_out = "table1_trend.csv";
  std::string trend_format = "csv";
  trend->add_option("--rms", trend_rms, "rotation error RMS; needs a deg/rad/pi suffix")
      ->capture_default_str();
  trend->add_option("--alpha", trend_alpha, "nominal prism angle; needs a deg/rad/pi suffix")
      ->capture_default_str();
  trend->add_option("--trials", trend_trials, "Monte Carlo trials")->capture_default_str();
  trend->add_option("--l-lo", trend_l_lo, "lowest mode order")->capture_default_str();
  trend->add_option("--l-hi", trend_l_hi, "highest mode order")->capture_default_str();
  trend->add_option("--seed", trend_seed, "master random seed")->capture_default_str();
  trend->add_option("--out", trend_out, "output file")->capture_default_str();
  trend->add_option("--format", trend_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // characterize: fit prism transmissions from a measured plate sweep
  auto* characterize = app.add_subcommand(
      "characterize", "fit prism transmissions from a plate-sweep intensity CSV");
  std::string charac_sweep;
  double charac_balanced = -1.0;
  std::string charac_out;
  characterize->add_option("--sweep", charac_sweep, "input CSV (setting_rad,intensity)")
      ->required();
  auto* charac_balanced_opt = characterize->add_option(
      "--balanced-probability", charac_balanced,
      "balanced-port probability to invert into the phase delay");
  characterize->add_option("--out", charac_out, "optional JSON report file");

  // dp-physics: predict prism polarization action from shape and index
  auto* physics = app.add_subcommand(
      "dp-physics", "predict the prism's polarization action from its geometry");
  double physics_n = 0.0;
  std::string physics_base;
  double physics_length = 0.0;
  std::string physics_out;
  physics->add_option("--n", physics_n, "refractive index")->required();
  physics->add_option("--base", physics_base, "base angle; needs a deg/rad/pi suffix")
      ->required();
  physics->add_option("--length", physics_length, "prism length in mm (informational)");
  physics->add_option("--out", physics_out, "optional JSON report file");

  // run: execute a bench file
  auto* run = app.add_subcommand("run", "execute a bench description file");
  std::string run_path;
  bool run_lenient = false;
  run->add_option("file", run_path, "bench file")->required();
  run->add_flag("--lenient", run_lenient, "downgrade unknown keys and sections to warnings");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(fig3)) {
      const DoveParams dove = fig3_dove.resolve();
      if (fig3_count < 2) throw std::invalid_argument("--count must be at least 2");
      const std::string dashed_path =
          fig3_dashed.empty() ? default_dashed_path(fig3_out) : fig3_dashed;

      SweepSpec alpha_spec;
      alpha_spec.variable = SweepVariable::Alpha;
      alpha_spec.grid = linspace(0.0, kPi / 2.0, fig3_count);
      alpha_spec.config.kind = InterferometerKind::Bssi;
      alpha_spec.config.dove = dove;
      const SweepResult alpha_curve = sweep_bssi_alpha(alpha_spec);

      SweepSpec phi_spec;
      phi_spec.variable = SweepVariable::DeltaPhi;
      phi_spec.grid = linspace(0.0, kPi, fig3_count);
      phi_spec.config.kind = InterferometerKind::Bssi;
      phi_spec.config.dove = dove;
      phi_spec.config.alpha = kPi / 4.0;
      const SweepResult phi_curve = sweep_bssi_delta_phi(phi_spec);

      const SweepSummary s = summarize(alpha_curve);
      const nlohmann::json spec_echo = {{"t_par", dove.t_par},
                                        {"t_perp", dove.t_perp},
                                        {"delta_phi_rad", dove.delta_phi},
                                        {"count", fig3_count},
                                        {"input", {{"pol", "H"}, {"l", 0}}}};
      if (fig3_format == "csv") {
        write_text_atomic(fig3_out, alpha_sweep_csv(alpha_curve));
        write_text_atomic(dashed_path, dashed_sweep_csv(phi_curve));
      } else {
        write_text_atomic(fig3_out,
                          json_document(spec_echo, 0, alpha_sweep_rows(alpha_curve),
                                        {{"min_fidelity", s.min_fidelity},
                                         {"argmin_alpha_rad", s.min_fidelity_x}}));
        write_text_atomic(dashed_path,
                          json_document(spec_echo, 0, dashed_sweep_rows(phi_curve),
                                        {{"min_fidelity", summarize(phi_curve).min_fidelity}}));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "fig3: min fidelity %.6f at alpha %.9g rad; wrote %s and %s",
                    s.min_fidelity, s.min_fidelity_x, fig3_out.c_str(), dashed_path.c_str());
      out << buf << "\n";
      return 0;
    }

    if (app.got_subcommand(fig4)) {
      const DoveParams dove = fig4_dove.resolve();
      if (fig4_count < 2) throw std::invalid_argument("--count must be at least 2");
      SweepSpec spec;
      spec.variable = SweepVariable::Alpha;
      spec.grid = linspace(0.0, kPi / 2.0, fig4_count);
      spec.config.kind = InterferometerKind::Pbssi;
      spec.config.dove = dove;
      spec.input_polarization = pol_from_label("+");
      const SweepResult curve = sweep_pbssi_alpha(spec);
      const SweepSummary s = summarize(curve);
      if (fig4_format == "csv") {
        write_text_atomic(fig4_out, pbssi_sweep_csv(curve));
      } else {
        const nlohmann::json spec_echo = {{"t_par", dove.t_par},
                                          {"t_perp", dove.t_perp},
                                          {"delta_phi_rad", dove.delta_phi},
                                          {"count", fig4_count},
                                          {"input", {{"pol", "+"}, {"l", 0}}}};
        write_text_atomic(fig4_out,
                          json_document(spec_echo, 0, pbssi_sweep_rows(curve),
                                        {{"min_fidelity", s.min_fidelity},
                                         {"min_p_c", s.min_p_c}}));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "fig4: min fidelity %.6f, min port-C probability %.6f; wrote %s",
                    s.min_fidelity, s.min_p_c, fig4_out.c_str());
      out << buf << "\n";
      return 0;
    }

    if (app.got_subcommand(trend)) {
      const DoveParams dove = trend_dove.resolve();
      InterferometerConfig config;
      config.kind = InterferometerKind::ModifiedBssi;
      config.dove = dove;
      config.alpha = parse_angle_flag(trend_alpha);
      ImperfectionSpec spec;
      spec.rotation_error_rms = parse_angle_flag(trend_rms);
      spec.l_range = {trend_l_lo, trend_l_hi};
      spec.polarizations = standard_polarizations();
      spec.trials = trend_trials;
      spec.seed = trend_seed;
      const ImperfectionResult result = imperfection_study(spec, config);

      // headline: per-order means averaged over the polarizations
      const std::size_t pol_count = spec.polarizations.size();
      double first_mean = 0.0;
      double last_mean = 0.0;
      for (std::size_t i = 0; i < pol_count; ++i) {
        first_mean += result.cells[i].mean_fidelity;
        last_mean += result.cells[result.cells.size() - pol_count + i].mean_fidelity;
      }
      first_mean /= static_cast<double>(pol_count);
      last_mean /= static_cast<double>(pol_count);

      if (trend_format == "csv") {
        write_text_atomic(trend_out, trend_csv(result));
      } else {
        const nlohmann::json spec_echo = {{"t_par", dove.t_par},
                                          {"t_perp", dove.t_perp},
                                          {"delta_phi_rad", dove.delta_phi},
                                          {"alpha_rad", config.alpha},
                                          {"rms_rad", spec.rotation_error_rms},
                                          {"trials", spec.trials},
                                          {"l_lo", trend_l_lo},
                                          {"l_hi", trend_l_hi}};
        write_text_atomic(trend_out,
                          json_document(spec_echo, spec.seed, trend_rows(result),
                                        {{"mean_fidelity_l_lo", first_mean},
                                         {"mean_fidelity_l_hi", last_mean}}));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "table1-trend: mean fidelity %.6f at l=%d, %.6f at l=%d; wrote %s",
                    first_mean, trend_l_lo, last_mean, trend_l_hi, trend_out.c_str());
      out << buf << "\n";
      return 0;
    }

    if (app.got_subcommand(characterize)) {
      IntensitySweep sweep;
      try {
        sweep = read_intensity_csv(charac_sweep);
      } catch (const ParseError&) {
        throw;  // malformed content keeps its location info
      } catch (const std::exception&) {
        throw PhysicsError("cannot read sweep file '" + charac_sweep + "'");
      }
      const FitResult fit = fit_transmissions(sweep);
      out << "t_par=" << fmt(fit.t_par) << "\n";
      out << "t_perp=" << fmt(fit.t_perp) << "\n";
      out << "residual_rms=" << fmt(fit.residual_rms) << "\n";
      nlohmann::json summary_json = {{"t_par", fit.t_par},
                                     {"t_perp", fit.t_perp},
                                     {"residual_rms", fit.residual_rms}};
      std::string delta_note;
      if (charac_balanced_opt->count() > 0) {
        double delta = 0.0;
        try {
          delta = invert_delta_phi(charac_balanced, fit.t_par, fit.t_perp);
        } catch (const std::invalid_argument& e) {
          // fitted values drove the failure, so report it as a data error
          throw InconsistentMeasurement(e.what());
        }
        out << "delta_phi_rad=" << fmt(delta) << "\n";
        out << "delta_phi_pi=" << fmt(delta / kPi) << "\n";
        summary_json["delta_phi_rad"] = delta;
        char note[80];
        std::snprintf(note, sizeof note, ", delta_phi %.6fpi", delta / kPi);
        delta_note = note;
      }
      if (!charac_out.empty()) {
        const nlohmann::json spec_echo = {{"sweep", charac_sweep},
                                          {"samples", sweep.settings.size()}};
        write_text_atomic(charac_out,
                          json_document(spec_echo, 0, nlohmann::json::array(), summary_json));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf, "characterize: t_par %.6f, t_perp %.6f%s", fit.t_par,
                    fit.t_perp, delta_note.c_str());
      out << buf << "\n";
      return 0;
    }

    if (app.got_subcommand(physics)) {
      PrismGeometry geometry;
      geometry.n = physics_n;
      geometry.base_angle = parse_angle_flag(physics_base);
      geometry.length_mm = physics_length;
      geometry.validate();  // flag values, so violations are usage errors
      const RayAngles angles = ray_angles(geometry);
      const DoveParams params = dove_params_from_physics(geometry);
      const double best = max_tir_phase(geometry.n);
      out << "theta1_rad=" << fmt(angles.theta1) << "\n";
      out << "theta2_rad=" << fmt(angles.theta2) << "\n";
      out << "theta3_rad=" << fmt(angles.theta3) << "\n";
      out << "t_par=" << fmt(params.t_par) << "\n";
      out << "t_perp=" << fmt(params.t_perp) << "\n";
      out << "delta_phi_rad=" << fmt(params.delta_phi) << "\n";
      out << "delta_phi_pi=" << fmt(params.delta_phi / kPi) << "\n";
      out << "max_delta_phi_rad=" << fmt(best) << "\n";
      out << "max_delta_phi_pi=" << fmt(best / kPi) << "\n";
      if (!physics_out.empty()) {
        const nlohmann::json spec_echo = {{"n", geometry.n},
                                          {"base_rad", geometry.base_angle},
                                          {"length_mm", geometry.length_mm}};
        const nlohmann::json summary_json = {{"t_par", params.t_par},
                                             {"t_perp", params.t_perp},
                                             {"delta_phi_rad", params.delta_phi},
                                             {"max_delta_phi_rad", best}};
        write_text_atomic(physics_out,
                          json_document(spec_echo, 0, nlohmann::json::array(), summary_json));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf, "dp-physics: delta_phi %.6fpi, max %.6fpi",
                    params.delta_phi / kPi, best / kPi);
      out << buf << "\n";
      return 0;
    }

    if (app.got_subcommand(run)) {
      std::string text;
      try {
        text = read_text(run_path);
      } catch (const std::exception&) {
        throw PhysicsError("cannot read bench file '" + run_path + "'");
      }
      std::vector<std::string> warnings;
      const BenchDocument doc = parse_bench(
          text, run_lenient ? BenchParseMode::Lenient : BenchParseMode::Strict, &warnings);
      for (const auto& warning : warnings) err << "warning: " << warning << "\n";
      return execute_bench(doc, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.line > 0) err << " (line " << e.line << ", column " << e.column << ")";
    err << "\n";
    return 2;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace sagnac
