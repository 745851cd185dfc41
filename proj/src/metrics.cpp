#include "sagnac/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace sagnac {

Port expected_bssi_port(int l, double alpha, double tol) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite");
  }
  const double round_trip = std::cos(4.0 * static_cast<double>(l) * alpha);
  if (std::abs(round_trip - 1.0) <= tol) return Port::D;
  if (std::abs(round_trip + 1.0) <= tol) return Port::C;
  throw std::invalid_argument("round-trip OAM phase is not +/-1 at this (l, alpha)");
}

FidelityReport bssi_fidelity(const PortOutput& output, Port expected) {
  FidelityReport report;
  report.constructive_port = expected;
  report.fidelity = expected == Port::D ? output.p_d : output.p_c;
  const Port dark = expected == Port::D ? Port::C : Port::D;
  if (output.raw_norm > 0.0 &&
      output.state.path_probability(dark) > kEps * output.raw_norm) {
    if (auto pol = path_polarization(output.state, dark)) {
      report.destructive_polarization = pol->normalized();
    }
  }
  return report;
}

double polarization_overlap(const JonesVector& a, const JonesVector& b) {
  const double na = a.norm2();
  const double nb = b.norm2();
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw std::invalid_argument("polarization overlap requires nonzero states");
  }
  const Complex inner = std::conj(a.h) * b.h + std::conj(a.v) * b.v;
  return std::norm(inner) / (na * nb);
}

double pbssi_fidelity(const DoveParams& params, double alpha) {
  return 1.0 - pbssi_overlap(params, alpha);
}

}  // namespace sagnac
