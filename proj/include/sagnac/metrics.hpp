#pragma once

#include <optional>

#include "sagnac/algebra.hpp"
#include "sagnac/fresnel.hpp"
#include "sagnac/interferometer.hpp"

namespace sagnac {

/// Sorting outcome for one run: the probability of leaving through the
/// expected port, and the polarization left on the other (dark) port when it
/// carries any probability.
struct FidelityReport {
  double fidelity = 0.0;
  Port constructive_port = Port::D;
  std::optional<JonesVector> destructive_polarization;
};

/// Which port the non-polarizing sorter is designed to light up: port D when
/// the round-trip OAM phase e^{-i 4 l alpha} is +1, port C when it is -1.
/// Throws std::invalid_argument when the phase is not +/-1 within `tol`.
Port expected_bssi_port(int l, double alpha, double tol = 1e-9);

/// Read the renormalized probability at `expected` out of a run, along with
/// the dark-port polarization (normalized; absent when the dark port is
/// empty).
FidelityReport bssi_fidelity(const PortOutput& output, Port expected);

/// |<a|b>|^2 for normalized a, b. Throws std::invalid_argument on zero input.
double polarization_overlap(const JonesVector& a, const JonesVector& b);

/// Sorting fidelity of the polarizing variant: 1 minus the squared overlap of
/// the two port-C states it emits for oppositely-signed OAM classes.
double pbssi_fidelity(const DoveParams& params, double alpha);

}  // namespace sagnac
