#include "sagnac/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sagnac/metrics.hpp"
#include "sagnac/random.hpp"

namespace sagnac {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<LabeledPolarization> standard_polarizations() {
  return {
      {"H", {1.0, 0.0}},
      {"V", {0.0, 1.0}},
      {"+", {kInvSqrt2, kInvSqrt2}},
      {"-", {kInvSqrt2, -kInvSqrt2}},
      {"L", {kInvSqrt2, Complex{0.0, -kInvSqrt2}}},
      {"R", {kInvSqrt2, Complex{0.0, kInvSqrt2}}},
  };
}

std::vector<double> linspace(double first, double last, std::size_t count) {
  if (count == 0) throw std::invalid_argument("linspace needs at least one sample");
  if (!std::isfinite(first) || !std::isfinite(last)) {
    throw std::invalid_argument("linspace endpoints must be finite");
  }
  std::vector<double> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(first);
    return grid;
  }
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(first +
                   (last - first) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return grid;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep needs a non-empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw std::invalid_argument("sweep grid must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("sweep grid must be strictly increasing");
    }
  }
  config.dove.validate();
  if (!(input_polarization.norm2() > 0.0)) {
    throw std::invalid_argument("sweep input polarization must be nonzero");
  }
  if (l < -kMaxOamOrder || l > kMaxOamOrder) {
    throw std::invalid_argument("sweep mode order out of supported range");
  }
}

SweepResult sweep_bssi_alpha(const SweepSpec& spec) {
  spec.validate();
  if (spec.variable != SweepVariable::Alpha) {
    throw std::invalid_argument("sweep variable must be the prism angle");
  }
  if (spec.config.kind != InterferometerKind::Bssi) {
    throw std::invalid_argument("sweep device must be the plain splitter loop");
  }
  InterferometerConfig config = spec.config;
  const CompositeState input = make_port_input(spec.input_polarization, spec.l);
  SweepResult result;
  result.rows.reserve(spec.grid.size());
  for (const double alpha : spec.grid) {
    config.alpha = alpha;
    const PortOutput out = run_bssi(config, input);
    SweepRow row;
    row.x = alpha;
    row.p_c = out.p_c;
    row.p_d = out.p_d;
    row.raw_p_c = out.state.path_probability(Port::C);
    row.fidelity = bssi_fidelity(out, expected_bssi_port(spec.l, alpha)).fidelity;
    result.rows.push_back(row);
  }
  return result;
}

SweepResult sweep_bssi_delta_phi(const SweepSpec& spec) {
  spec.validate();
  if (spec.variable != SweepVariable::DeltaPhi) {
    throw std::invalid_argument("sweep variable must be the prism phase delay");
  }
  if (spec.config.kind != InterferometerKind::Bssi) {
    throw std::invalid_argument("sweep device must be the plain splitter loop");
  }
  if (std::abs(spec.config.alpha - kPi / 4.0) > kEps) {
    throw std::invalid_argument("phase-delay sweep runs at alpha = pi/4");
  }
  InterferometerConfig config = spec.config;
  const CompositeState input = make_port_input(spec.input_polarization, spec.l);
  SweepResult result;
  result.rows.reserve(spec.grid.size());
  for (const double phi_raw : spec.grid) {
    double phi = phi_raw;
    // the diagonal phase lives on [0, pi); fold a closed top endpoint inside
    if (phi >= kPi && phi <= kPi + kEps) {
      phi = std::nextafter(kPi, 0.0);
    }
    config.dove.delta_phi = phi;
    const PortOutput out = run_bssi(config, input);
    SweepRow row;
    row.x = phi;
    row.p_c = out.p_c;
    row.p_d = out.p_d;
    row.raw_p_c = out.state.path_probability(Port::C);
    row.fidelity = bssi_fidelity(out, expected_bssi_port(spec.l, config.alpha)).fidelity;
    result.rows.push_back(row);
  }
  return result;
}

SweepResult sweep_pbssi_alpha(const SweepSpec& spec) {
  spec.validate();
  if (spec.variable != SweepVariable::Alpha) {
    throw std::invalid_argument("sweep variable must be the prism angle");
  }
  if (spec.config.kind != InterferometerKind::Pbssi) {
    throw std::invalid_argument("sweep device must be the polarizing loop");
  }
  InterferometerConfig config = spec.config;
  const CompositeState input = make_port_input(spec.input_polarization, spec.l);
  SweepResult result;
  result.rows.reserve(spec.grid.size());
  for (const double alpha : spec.grid) {
    config.alpha = alpha;
    const PortOutput out = run_pbssi(config, input);
    SweepRow row;
    row.x = alpha;
    row.p_c = out.p_c;
    row.p_d = out.p_d;
    row.raw_p_c = out.p_c;
    row.fidelity = pbssi_fidelity(config.dove, alpha);
    result.rows.push_back(row);
  }
  return result;
}

void ImperfectionSpec::validate() const {
  if (!std::isfinite(rotation_error_rms) || rotation_error_rms < 0.0) {
    throw std::invalid_argument("rotation error RMS must be non-negative");
  }
  if (trials == 0) throw std::invalid_argument("study needs at least one trial");
  if (l_range.lo > l_range.hi) throw std::invalid_argument("order range must be non-empty");
  if (l_range.lo < -kMaxOamOrder || l_range.hi > kMaxOamOrder) {
    throw std::invalid_argument("order range out of supported bounds");
  }
  if (polarizations.empty()) throw std::invalid_argument("study needs at least one polarization");
}

ImperfectionResult imperfection_study(const ImperfectionSpec& spec,
                                      const InterferometerConfig& config) {
  spec.validate();
  if (config.kind != InterferometerKind::ModifiedBssi) {
    throw std::invalid_argument("study device must be the plate-compensated loop");
  }
  config.dove.validate();

  const std::size_t order_count = static_cast<std::size_t>(spec.l_range.hi - spec.l_range.lo) + 1;
  const std::size_t cell_count = order_count * spec.polarizations.size();

  std::vector<Port> expected;
  std::vector<CompositeState> inputs;
  expected.reserve(order_count);
  inputs.reserve(cell_count);
  for (int l = spec.l_range.lo; l <= spec.l_range.hi; ++l) {
    expected.push_back(expected_bssi_port(l, config.alpha));
    for (const auto& pol : spec.polarizations) {
      inputs.push_back(make_port_input(pol.state, l));
    }
  }

  std::vector<double> sum(cell_count, 0.0);
  std::vector<double> sum_sq(cell_count, 0.0);
  InterferometerConfig trial_config = config;
  for (std::size_t trial = 0; trial < spec.trials; ++trial) {
    GaussianSampler noise(derive_seed(spec.seed, trial));
    trial_config.dove_angle_error = spec.rotation_error_rms * noise.next();
    trial_config.plate1_error = spec.rotation_error_rms * noise.next();
    trial_config.plate2_error = spec.rotation_error_rms * noise.next();
    std::size_t cell = 0;
    for (std::size_t oi = 0; oi < order_count; ++oi) {
      for (std::size_t pi = 0; pi < spec.polarizations.size(); ++pi) {
        const PortOutput out = run_modified_bssi(trial_config, inputs[cell]);
        const double f = bssi_fidelity(out, expected[oi]).fidelity;
        sum[cell] += f;
        sum_sq[cell] += f * f;
        ++cell;
      }
    }
  }

  ImperfectionResult result;
  result.cells.reserve(cell_count);
  const double n = static_cast<double>(spec.trials);
  std::size_t cell = 0;
  for (int l = spec.l_range.lo; l <= spec.l_range.hi; ++l) {
    for (const auto& pol : spec.polarizations) {
      ImperfectionCell entry;
      entry.l = l;
      entry.polarization = pol.label;
      entry.mean_fidelity = sum[cell] / n;
      if (spec.trials > 1) {
        double var = (sum_sq[cell] - n * entry.mean_fidelity * entry.mean_fidelity) / (n - 1.0);
        if (var < 0.0) var = 0.0;  // cancellation noise when every trial agrees
        entry.stderr_fidelity = std::sqrt(var / n);
      }
      result.cells.push_back(entry);
      ++cell;
    }
  }
  return result;
}

}  // namespace sagnac
