#pragma once

#include "sagnac/algebra.hpp"
#include "sagnac/elements.hpp"
#include "sagnac/fresnel.hpp"

namespace sagnac {

enum class InterferometerKind { Bssi, Pbssi, ModifiedBssi };

/// One single-path Sagnac configuration: the prism's polarization action, its
/// rotation angle, and the splitter transmissivity (ignored by the polarizing
/// variant). The misalignment offsets model rotation-setting errors of the
/// prism and, for the modified variant, of its two compensation plates; they
/// default to zero. In the plate-compensated variant the prism stage error is
/// booked against the mode-dependent phase only, and misalignment of the
/// polarization compensation is booked against the plate errors; in the bare
/// variants the prism error rotates both its Jones frame and the mode phase.
struct InterferometerConfig {
  InterferometerKind kind = InterferometerKind::Bssi;
  DoveParams dove{};
  double alpha = 0.0;
  double transmissivity = 0.5;

  double dove_angle_error = 0.0;
  double plate1_error = 0.0;
  double plate2_error = 0.0;

  friend bool operator==(const InterferometerConfig&, const InterferometerConfig&) = default;
};

/// Amplitudes leaving the two output ports, with probabilities.
///
/// `state` carries the physical (unrenormalized) output amplitudes, so
/// `raw_norm` = total output probability reports the prism's insertion loss.
/// `p_c` and `p_d` are the per-port probabilities renormalized to sum to 1.
/// The polarizing variant quotes its ports differently; see run_pbssi.
struct PortOutput {
  CompositeState state{Basis::Ports};
  double p_c = 0.0;
  double p_d = 0.0;
  double raw_norm = 0.0;
};

/// Build the canonical input: polarization `pol` and OAM order l on port D.
CompositeState make_port_input(const JonesVector& pol, int l);

/// Per-direction loop operators for a configuration: the polarization matrix
/// each propagation direction sees, and the sign of its OAM phase angle
/// (direction A accumulates e^{+i 2 l alpha_eff}, direction B the conjugate).
struct DirectionOperators {
  JonesMatrix a{};
  JonesMatrix b{};
  int oam_sign_a = +1;
  int oam_sign_b = -1;
};

DirectionOperators direction_operators(const InterferometerConfig& config);

/// Shared two-arm engine: split the port-basis input on the beam splitter,
/// apply `ops` and the OAM phase angle +/- `phase_alpha` per direction, and
/// recombine. Port convention (fixed so a trivial loop at T = 1/2
/// retroreflects port D onto port D):
///   enter:  (A, B) = BS * (C, D)     exit:  (D, C) = BS * (A, B).
PortOutput propagate_dual_arm(const CompositeState& input, const DirectionOperators& ops,
                              double phase_alpha, double transmissivity);

/// Non-polarizing single-path Sagnac with the rotated prism in the loop.
/// Input must live on port D with total probability <= 1.
PortOutput run_bssi(const InterferometerConfig& config, const CompositeState& input);

/// Closed-form output of the same device for a single polarization and OAM
/// order, valid at T = 1/2 when the round-trip OAM phase e^{-i 4 l alpha} is
/// +1 or -1 (the two cases exchange the port roles). Amplitudes are written
/// on the physical scale, so this agrees with run_bssi to rounding.
PortOutput closed_form_bssi(const InterferometerConfig& config, const JonesVector& pol,
                            int l);

/// Polarizing variant: the splitter is a PBS, so H circulates via direction A
/// and V via direction B. Defined on inputs (|H> + e^{i phi}|V>)/sqrt(2) with
/// e^{-i 4 l alpha} e^{i phi} = +/-1; anything else throws UnsupportedInput.
///
/// Port probabilities: the port-D field holds one component from each arm in
/// orthogonal polarizations; `p_d` quotes their incoherent average rather
/// than their sum, p_d = |psi_d|^2 / (t_par + t_perp), and p_c = 1 - p_d.
PortOutput run_pbssi(const InterferometerConfig& config, const CompositeState& input);

/// Squared overlap of the two port-C polarization states a polarizing loop
/// emits for OAM orders sorted with opposite round-trip signs:
///   (t_par - t_perp)^2 cos^2(2 alpha) / N^2,
///   N = (t_par + t_perp)(1 - sin^2(2 alpha)/2)
///     + sqrt(t_par t_perp) sin^2(2 alpha) cos(delta_phi).
double pbssi_overlap(const DoveParams& params, double alpha);

/// Non-polarizing loop with a half waveplate on each side of the prism (fast
/// axes at alpha/2; the reverse direction sees both at -alpha/2 and in
/// reverse order). The plate sandwich reduces each direction's polarization
/// action to diag(sqrt(t_par), sqrt(t_perp) e^{i delta_phi}) independent of
/// alpha, which restores perfect sorting contrast for every polarization.
/// `dove_angle_error` shifts the mode phase the rotated prism imprints; the
/// plate errors misalign the compensation sandwich.
PortOutput run_modified_bssi(const InterferometerConfig& config, const CompositeState& input);

}  // namespace sagnac
