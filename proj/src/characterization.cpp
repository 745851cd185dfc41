#include "sagnac/characterization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sagnac/errors.hpp"
#include "sagnac/io.hpp"
#include "sagnac/random.hpp"

namespace sagnac {

void IntensitySweep::validate() const {
  if (settings.size() != intensities.size()) {
    throw std::invalid_argument("sweep settings and intensities differ in length");
  }
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (!std::isfinite(settings[i]) || !std::isfinite(intensities[i])) {
      throw std::invalid_argument("sweep samples must be finite");
    }
    if (intensities[i] < 0.0) {
      throw std::invalid_argument("sweep intensities must be non-negative");
    }
    if (i > 0 && !(settings[i] > settings[i - 1])) {
      throw std::invalid_argument("sweep settings must be strictly increasing");
    }
  }
}

IntensitySweep simulate_hwp_sweep(const DoveParams& params,
                                  const std::vector<double>& settings, double noise_rms,
                                  std::uint64_t seed) {
  params.validate();
  if (!std::isfinite(noise_rms) || noise_rms < 0.0) {
    throw std::invalid_argument("noise RMS must be non-negative");
  }
  GaussianSampler noise(seed);
  IntensitySweep sweep;
  sweep.settings = settings;
  sweep.intensities.reserve(settings.size());
  for (const double theta : settings) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    double value = params.t_par * c * c + params.t_perp * s * s;
    if (noise_rms > 0.0) value += noise_rms * noise.next();
    sweep.intensities.push_back(value < 0.0 ? 0.0 : value);
  }
  sweep.validate();
  return sweep;
}

FitResult fit_transmissions(const IntensitySweep& sweep) {
  sweep.validate();
  const std::size_t n = sweep.settings.size();
  if (n < 4) {
    throw UnderdeterminedFit("need at least four sweep samples");
  }
  double scc = 0.0, scs = 0.0, sss = 0.0, bc = 0.0, bs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(2.0 * sweep.settings[i]);
    const double s = std::sin(2.0 * sweep.settings[i]);
    const double c2 = c * c;
    const double s2 = s * s;
    scc += c2 * c2;
    scs += c2 * s2;
    sss += s2 * s2;
    bc += c2 * sweep.intensities[i];
    bs += s2 * sweep.intensities[i];
  }
  const double det = scc * sss - scs * scs;
  if (!(det > 1e-9 * (scc + sss) * (scc + sss))) {
    throw UnderdeterminedFit("sweep settings do not separate the two transmissions");
  }
  FitResult fit;
  fit.t_par = (bc * sss - bs * scs) / det;
  fit.t_perp = (bs * scc - bc * scs) / det;
  fit.iterations = 1;  // closed-form normal equations
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(2.0 * sweep.settings[i]);
    const double s = std::sin(2.0 * sweep.settings[i]);
    const double model = fit.t_par * c * c + fit.t_perp * s * s;
    const double r = sweep.intensities[i] - model;
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / static_cast<double>(n));
  return fit;
}

double invert_delta_phi(double p_out_h, double t_par, double t_perp) {
  if (!std::isfinite(p_out_h) || p_out_h < 0.0 || p_out_h > 1.0) {
    throw std::invalid_argument("balanced-port probability must lie in [0, 1]");
  }
  if (!std::isfinite(t_par) || !std::isfinite(t_perp) || !(t_par > 0.0) || !(t_perp > 0.0) ||
      t_par > 1.0 || t_perp > 1.0) {
    throw std::invalid_argument("transmissions must lie in (0, 1]");
  }
  const double c = (2.0 * p_out_h - 1.0) * (t_par + t_perp) / (2.0 * std::sqrt(t_par * t_perp));
  if (c < -1.0 || c > 1.0) {
    throw InconsistentMeasurement("measured probability is outside the reachable range");
  }
  return std::acos(c);
}

IntensitySweep read_intensity_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  IntensitySweep sweep;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "setting_rad,intensity") {
        throw ParseError("expected header 'setting_rad,intensity'", line_no, 1);
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected two comma-separated values", line_no, 1);
    }
    try {
      std::size_t used = 0;
      const std::string first = line.substr(0, comma);
      const std::string second = line.substr(comma + 1);
      const double setting = std::stod(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
      const double intensity = std::stod(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
      sweep.settings.push_back(setting);
      sweep.intensities.push_back(intensity);
    } catch (const std::exception&) {
      throw ParseError("malformed number", line_no, 1);
    }
  }
  try {
    sweep.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 0);
  }
  return sweep;
}

void write_intensity_csv(const IntensitySweep& sweep, const std::filesystem::path& path) {
  sweep.validate();
  std::string text = "setting_rad,intensity\n";
  char buf[80];
  for (std::size_t i = 0; i < sweep.settings.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", sweep.settings[i], sweep.intensities[i]);
    text += buf;
  }
  write_text_atomic(path, text);
}

}  // namespace sagnac
