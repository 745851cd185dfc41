#include "sagnac/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sagnac/errors.hpp"

namespace sagnac {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_config(const InterferometerConfig& config) {
  config.dove.validate();
  if (!std::isfinite(config.alpha)) {
    throw std::invalid_argument("alpha must be finite");
  }
  if (!std::isfinite(config.transmissivity) || config.transmissivity < 0.0 ||
      config.transmissivity > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  if (!std::isfinite(config.dove_angle_error) || !std::isfinite(config.plate1_error) ||
      !std::isfinite(config.plate2_error)) {
    throw std::invalid_argument("misalignment offsets must be finite");
  }
}

void validate_port_d_input(const CompositeState& input) {
  if (input.basis() != Basis::Ports) {
    throw std::invalid_argument("interferometer input must be in the ports basis");
  }
  const double total = input.total_probability();
  if (!(total > 0.0)) {
    throw std::invalid_argument("interferometer input must carry amplitude");
  }
  if (total > 1.0 + kEps) {
    throw std::invalid_argument("interferometer input must have probability <= 1");
  }
  if (input.path_probability(Port::C) > kEps * total) {
    throw std::invalid_argument("interferometer input must live on port D");
  }
}

/// (A, B) = BS * (C, D).
CompositeState bs_enter(const CompositeState& ports, double transmissivity) {
  const JonesMatrix bs = beam_splitter(transmissivity);
  CompositeState loop(Basis::Loop);
  for (const auto& [key, amp] : ports.amplitudes()) {
    const bool on_c = key.path == static_cast<std::uint8_t>(Port::C);
    const int col = on_c ? 0 : 1;
    loop.accumulate(Direction::A, key.pol, key.l, bs.at(0, col) * amp);
    loop.accumulate(Direction::B, key.pol, key.l, bs.at(1, col) * amp);
  }
  return loop;
}

/// (D, C) = BS * (A, B).
CompositeState bs_exit(const CompositeState& loop, double transmissivity) {
  const JonesMatrix bs = beam_splitter(transmissivity);
  CompositeState ports(Basis::Ports);
  for (const auto& [key, amp] : loop.amplitudes()) {
    const bool on_a = key.path == static_cast<std::uint8_t>(Direction::A);
    const int col = on_a ? 0 : 1;
    ports.accumulate(Port::D, key.pol, key.l, bs.at(0, col) * amp);
    ports.accumulate(Port::C, key.pol, key.l, bs.at(1, col) * amp);
  }
  return ports;
}

CompositeState apply_oam_phases(const CompositeState& loop, double phase_alpha) {
  CompositeState out(Basis::Loop);
  for (const auto& [key, amp] : loop.amplitudes()) {
    const bool on_a = key.path == static_cast<std::uint8_t>(Direction::A);
    const Complex phase = oam_phase(on_a ? phase_alpha : -phase_alpha, key.l);
    out.accumulate(static_cast<Direction>(key.path), key.pol, key.l, phase * amp);
  }
  return out;
}

PortOutput finish_output(CompositeState&& ports) {
  PortOutput out{std::move(ports), 0.0, 0.0, 0.0};
  out.raw_norm = out.state.total_probability();
  if (out.raw_norm > 0.0) {
    out.p_c = out.state.path_probability(Port::C) / out.raw_norm;
    out.p_d = out.state.path_probability(Port::D) / out.raw_norm;
  }
  return out;
}

}  // namespace

CompositeState make_port_input(const JonesVector& pol, int l) {
  CompositeState input(Basis::Ports);
  input.set(Port::D, Pol::H, l, pol.h);
  input.set(Port::D, Pol::V, l, pol.v);
  return input;
}

DirectionOperators direction_operators(const InterferometerConfig& config) {
  validate_config(config);
  const double alpha_dp = config.alpha + config.dove_angle_error;
  DirectionOperators ops;
  switch (config.kind) {
    case InterferometerKind::Bssi:
    case InterferometerKind::Pbssi:
      ops.a = dove_jones(config.dove, alpha_dp);
      ops.b = dove_jones(config.dove, kPi - alpha_dp);
      break;
    case InterferometerKind::ModifiedBssi: {
      // Direction A meets plate 1, the prism, then plate 2; direction B the
      // same physical elements in reverse order with all axes read negated.
      // Booking convention for setting errors in the compensated loop: the
      // prism stage error enters only the mode phase (see run_modified_bssi),
      // while compensation misalignment is carried by the plate errors. The
      // prism Jones frame therefore stays at the set point here.
      const double theta1 = config.alpha / 2.0 + config.plate1_error;
      const double theta2 = config.alpha / 2.0 + config.plate2_error;
      ops.a = waveplate(WaveplateKind::Half, theta2) * dove_jones(config.dove, config.alpha) *
              waveplate(WaveplateKind::Half, theta1);
      ops.b = waveplate(WaveplateKind::Half, -theta1) * dove_jones(config.dove, -config.alpha) *
              waveplate(WaveplateKind::Half, -theta2);
      break;
    }
  }
  return ops;
}

PortOutput propagate_dual_arm(const CompositeState& input, const DirectionOperators& ops,
                              double phase_alpha, double transmissivity) {
  validate_port_d_input(input);
  CompositeState loop = bs_enter(input, transmissivity);
  loop = apply_pol_operator(loop, ops.a, Direction::A);
  loop = apply_pol_operator(loop, ops.b, Direction::B);
  loop = apply_oam_phases(loop, phase_alpha);
  return finish_output(bs_exit(loop, transmissivity));
}

PortOutput run_bssi(const InterferometerConfig& config, const CompositeState& input) {
  validate_config(config);
  return propagate_dual_arm(input, direction_operators(config),
                            config.alpha + config.dove_angle_error, config.transmissivity);
}

PortOutput closed_form_bssi(const InterferometerConfig& config, const JonesVector& pol,
                            int l) {
  validate_config(config);
  if (std::abs(config.transmissivity - 0.5) > kEps) {
    throw std::invalid_argument("closed form requires T = 1/2");
  }
  const double round_trip = std::cos(4.0 * static_cast<double>(l) * config.alpha);
  double sign = 0.0;
  if (std::abs(round_trip - 1.0) <= 1e-9) {
    sign = 1.0;
  } else if (std::abs(round_trip + 1.0) <= 1e-9) {
    sign = -1.0;
  } else {
    throw std::invalid_argument("closed form requires a round-trip OAM phase of +/-1");
  }

  const Complex u{std::sqrt(config.dove.t_par), 0.0};
  const Complex w = std::polar(std::sqrt(config.dove.t_perp), config.dove.delta_phi);
  const double c = std::cos(config.alpha);
  const double s = std::sin(config.alpha);
  const Complex f = u * (c * c) + w * (s * s);
  const Complex g = u * (s * s) + w * (c * c);
  const Complex demi = 0.5 * (u - w) * std::sin(2.0 * config.alpha);

  // Physical-scale amplitudes, matching the engine's global phase
  // -e^{i 2 l alpha}: the balanced port carries (f h, g v), the dark port
  // (u - w) sin(2 alpha)/2 with swapped components. The sign of the
  // round-trip phase exchanges the port roles.
  const Complex global = -oam_phase(config.alpha, l);
  const JonesVector balanced{global * f * pol.h, global * g * pol.v};
  const JonesVector dark{global * demi * pol.v, global * demi * pol.h};
  const JonesVector& on_d = sign > 0.0 ? balanced : dark;
  const JonesVector& on_c = sign > 0.0 ? dark : balanced;

  CompositeState state(Basis::Ports);
  state.set(Port::C, Pol::H, l, on_c.h);
  state.set(Port::C, Pol::V, l, on_c.v);
  state.set(Port::D, Pol::H, l, on_d.h);
  state.set(Port::D, Pol::V, l, on_d.v);
  return finish_output(std::move(state));
}

PortOutput run_pbssi(const InterferometerConfig& config, const CompositeState& input) {
  validate_config(config);
  validate_port_d_input(input);

  const double alpha_dp = config.alpha + config.dove_angle_error;
  // Balanced-polarization family check, per OAM order present.
  for (const auto& [key, amp] : input.amplitudes()) {
    const Complex h = input.at(Port::D, Pol::H, key.l);
    const Complex v = input.at(Port::D, Pol::V, key.l);
    const double mag = std::sqrt(std::norm(h) + std::norm(v));
    if (!(mag > 0.0)) continue;
    if (std::abs(std::abs(h) - std::abs(v)) > 1e-9 * mag) {
      throw UnsupportedInput("polarizing loop requires equal H and V magnitudes");
    }
    const Complex round_trip =
        oam_phase(-2.0 * alpha_dp, key.l) * (v / h) * (std::abs(h) / std::abs(v));
    if (std::abs(round_trip.real() * round_trip.real() - 1.0) > 1e-6 ||
        std::abs(round_trip.imag()) > 1e-6) {
      throw UnsupportedInput(
          "polarizing loop requires the round-trip phase times the input phase to be +/-1");
    }
  }

  CompositeState loop = pbs_route(input);
  const DirectionOperators ops = direction_operators(config);
  loop = apply_pol_operator(loop, ops.a, Direction::A);
  loop = apply_pol_operator(loop, ops.b, Direction::B);
  loop = apply_oam_phases(loop, alpha_dp);
  CompositeState ports = pbs_route(loop);

  PortOutput out{std::move(ports), 0.0, 0.0, 0.0};
  out.raw_norm = out.state.total_probability();
  // The port-D components originate from different arms in orthogonal
  // polarizations; quote their average, not their sum (see header).
  out.p_d = out.state.path_probability(Port::D) / (config.dove.t_par + config.dove.t_perp);
  out.p_c = 1.0 - out.p_d;
  return out;
}

double pbssi_overlap(const DoveParams& params, double alpha) {
  params.validate();
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite");
  }
  const double s2 = std::sin(2.0 * alpha) * std::sin(2.0 * alpha);
  const double num = (params.t_par - params.t_perp) * std::cos(2.0 * alpha);
  const double n = (params.t_par + params.t_perp) * (1.0 - 0.5 * s2) +
                   std::sqrt(params.t_par * params.t_perp) * s2 * std::cos(params.delta_phi);
  const double ratio = num / n;
  return ratio * ratio;
}

PortOutput run_modified_bssi(const InterferometerConfig& config, const CompositeState& input) {
  validate_config(config);
  InterferometerConfig cfg = config;
  cfg.kind = InterferometerKind::ModifiedBssi;
  return propagate_dual_arm(input, direction_operators(cfg),
                            cfg.alpha + cfg.dove_angle_error, cfg.transmissivity);
}

}  // namespace sagnac
