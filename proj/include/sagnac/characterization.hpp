#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sagnac/fresnel.hpp"

namespace sagnac {

/// A measured (or simulated) transmitted-power curve versus half-waveplate
/// setting. Settings are radians, strictly increasing; intensities are
/// non-negative.
struct IntensitySweep {
  std::vector<double> settings;
  std::vector<double> intensities;

  void validate() const;  // throws std::invalid_argument on violation
};

/// Model the bench procedure that measures the two transmissions: rotate a
/// half waveplate in front of the prism at alpha = 0 and record the total
/// transmitted power, t_par cos^2(2 theta) + t_perp sin^2(2 theta), plus
/// additive Gaussian noise of the given RMS (deterministic per seed; values
/// are clamped at zero).
IntensitySweep simulate_hwp_sweep(const DoveParams& params,
                                  const std::vector<double>& settings, double noise_rms,
                                  std::uint64_t seed);

/// Least-squares estimate of the two transmissions from a sweep. The phase is
/// not observable in this procedure, so only the transmissions are reported.
struct FitResult {
  double t_par = 0.0;
  double t_perp = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
};

/// Linear least squares on the two-basis model above. Throws
/// UnderdeterminedFit for fewer than four samples or a degenerate design
/// (all settings congruent modulo pi/2).
FitResult fit_transmissions(const IntensitySweep& sweep);

/// Recover the prism phase from the interferometric balanced-port probability
/// measured with |H> input at alpha = pi/4:
///   cos(delta_phi) = (2 p_out_h - 1)(t_par + t_perp) / (2 sqrt(t_par t_perp)),
/// returned on the arccos branch [0, pi]. Throws InconsistentMeasurement when
/// the right-hand side leaves [-1, 1].
double invert_delta_phi(double p_out_h, double t_par, double t_perp);

/// CSV round-trip for sweeps; header `setting_rad,intensity`, one row per
/// sample, full double precision. Reading validates the sweep; errors carry
/// the offending line number.
IntensitySweep read_intensity_csv(const std::filesystem::path& path);
void write_intensity_csv(const IntensitySweep& sweep, const std::filesystem::path& path);

}  // namespace sagnac
