#pragma once

#include "sagnac/algebra.hpp"
#include "sagnac/fresnel.hpp"

namespace sagnac {

/// Jones matrix of a Dove prism rotated by alpha about the beam axis:
///   R_s(-alpha) diag(sqrt(t_par), sqrt(t_perp) e^{i delta_phi}) R_s(alpha).
/// Pi-periodic in alpha; singular values are sqrt(t_par), sqrt(t_perp) at
/// every angle.
JonesMatrix dove_jones(const DoveParams& params, double alpha);

/// Phase e^{i 2 l alpha} an OAM order l acquires from a prism rotated by
/// alpha. Throws std::invalid_argument for |l| > kMaxOamOrder or non-finite
/// alpha.
Complex oam_phase(double alpha, int l);

/// Real path-space beam-splitter matrix for intensity transmissivity T:
///   [ sqrt(T), -sqrt(1-T); sqrt(1-T), sqrt(T) ].
/// Throws std::invalid_argument unless T lies in [0, 1].
JonesMatrix beam_splitter(double transmissivity);

enum class WaveplateKind { Half, Quarter };

/// Waveplate with its fast axis at `fast_axis` radians from H:
/// R_s(-theta) diag(1, r) R_s(theta) with r = -1 (half) or i (quarter).
JonesMatrix waveplate(WaveplateKind kind, double fast_axis);

/// Route a state through the polarizing beam-splitter. H amplitudes follow
/// the transmitted path, V amplitudes the reflected path, losslessly, and the
/// path basis toggles. Fixed port map:
///   ports -> loop:  D,H -> A   D,V -> B   C,H -> B   C,V -> A
///   loop -> ports:  A,H -> C   A,V -> D   B,H -> D   B,V -> C
/// so a loop with trivial arms sends a port-D input entirely to port C.
CompositeState pbs_route(const CompositeState& state);

/// One optical element for composing systems and reporting configurations.
struct ElementDescriptor {
  enum class Kind { DovePrism, HalfWaveplate, QuarterWaveplate, BeamSplitter, PolarizingBeamSplitter };

  Kind kind = Kind::DovePrism;
  double angle = 0.0;           // rotation or fast-axis angle, radians
  DoveParams dove{};            // DovePrism only
  double transmissivity = 0.5;  // BeamSplitter only
};

}  // namespace sagnac
