#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagnac/algebra.hpp"
#include "sagnac/fresnel.hpp"
#include "sagnac/interferometer.hpp"

namespace sagnac {

// The six canonical probe polarizations: H, V, diagonal +/-, circular L/R.
struct LabeledPolarization {
  std::string label;
  JonesVector state;
};

std::vector<LabeledPolarization> standard_polarizations();

// Uniform closed grid with `count` samples from first to last inclusive.
std::vector<double> linspace(double first, double last, std::size_t count);

enum class SweepVariable { Alpha, DeltaPhi };

/// One sweep: which variable runs over `grid` (radians, strictly
/// increasing), the device it runs on, and the input mode.
struct SweepSpec {
  SweepVariable variable = SweepVariable::Alpha;
  std::vector<double> grid;
  InterferometerConfig config{};
  JonesVector input_polarization{1.0, 0.0};
  int l = 0;

  void validate() const;
};

struct SweepRow {
  double x = 0.0;         // the swept variable (alpha or delta_phi, radians)
  double fidelity = 0.0;  // sorting fidelity at this point
  double p_c = 0.0;       // port-C probability
  double p_d = 0.0;       // port-D probability
  double raw_p_c = 0.0;   // port-C probability before loss renormalization
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Fidelity of the plain splitter loop versus prism angle. Fidelity is the
/// renormalized probability of leaving through the port the input's mode
/// order targets; a nonzero order therefore requires every grid point to be
/// an operating angle (round-trip phase +/-1), while order zero admits any
/// grid. Throws std::invalid_argument on a spec that names another variable
/// or device kind.
SweepResult sweep_bssi_alpha(const SweepSpec& spec);

/// Same loop pinned at alpha = pi/4, sweeping the prism's internal phase
/// delay. The grid must stay within [0, pi]; an endpoint of exactly pi is
/// evaluated one ulp inside the half-open parameter domain.
SweepResult sweep_bssi_delta_phi(const SweepSpec& spec);

/// Polarizing-loop fidelity (1 - counter-propagating class overlap) versus
/// prism angle, with the port-C probability for the spec's input alongside.
SweepResult sweep_pbssi_alpha(const SweepSpec& spec);

/// Inclusive mode-order interval.
struct OrderRange {
  int lo = 0;
  int hi = 0;
};

/// Monte Carlo alignment study. Every trial draws three independent
/// Gaussian angle errors (prism and both plates) at the given RMS, rebuilds
/// the device, and scores every (order, polarization) cell with the same
/// three draws, so cells differ only in the quantity under study.
struct ImperfectionSpec {
  double rotation_error_rms = 0.0;
  OrderRange l_range{1, 1};
  std::vector<LabeledPolarization> polarizations;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ImperfectionCell {
  int l = 0;
  std::string polarization;
  double mean_fidelity = 0.0;
  double stderr_fidelity = 0.0;
};

struct ImperfectionResult {
  std::vector<ImperfectionCell> cells;  // ordered by (order, polarization index)
};

/// Runs the study on a plate-compensated loop. `config` supplies the prism
/// parameters and the nominal angle, which must be an operating point for
/// every order in range; the expected port is judged at the nominal angle,
/// so misalignment shows up as lost fidelity rather than rewired ports.
ImperfectionResult imperfection_study(const ImperfectionSpec& spec,
                                      const InterferometerConfig& config);

}  // namespace sagnac
