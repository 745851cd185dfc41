#include "sagnac/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace sagnac {

JonesMatrix dove_jones(const DoveParams& params, double alpha) {
  params.validate();
  const JonesMatrix core = JonesMatrix::diagonal(
      {std::sqrt(params.t_par), 0.0},
      std::polar(std::sqrt(params.t_perp), params.delta_phi));
  return rotation_matrix(-alpha) * core * rotation_matrix(alpha);
}

Complex oam_phase(double alpha, int l) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  if (l < -kMaxOamOrder || l > kMaxOamOrder) {
    throw std::invalid_argument("OAM order outside the supported range");
  }
  return std::polar(1.0, 2.0 * static_cast<double>(l) * alpha);
}

JonesMatrix beam_splitter(double transmissivity) {
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 || transmissivity > 1.0) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  JonesMatrix m;
  m.at(0, 0) = t;
  m.at(0, 1) = -r;
  m.at(1, 0) = r;
  m.at(1, 1) = t;
  return m;
}

JonesMatrix waveplate(WaveplateKind kind, double fast_axis) {
  const Complex slow = kind == WaveplateKind::Half ? Complex{-1.0, 0.0} : Complex{0.0, 1.0};
  return rotation_matrix(-fast_axis) * JonesMatrix::diagonal({1.0, 0.0}, slow) *
         rotation_matrix(fast_axis);
}

CompositeState pbs_route(const CompositeState& state) {
  const bool from_ports = state.basis() == Basis::Ports;
  CompositeState out(from_ports ? Basis::Loop : Basis::Ports);
  for (const auto& [key, amp] : state.amplitudes()) {
    const bool h = key.pol == Pol::H;
    if (from_ports) {
      const bool from_d = key.path == static_cast<std::uint8_t>(Port::D);
      const Direction to = (from_d == h) ? Direction::A : Direction::B;
      out.accumulate(to, key.pol, key.l, amp);
    } else {
      const bool from_a = key.path == static_cast<std::uint8_t>(Direction::A);
      const Port to = (from_a == h) ? Port::C : Port::D;
      out.accumulate(to, key.pol, key.l, amp);
    }
  }
  return out;
}

}  // namespace sagnac
