#pragma once

#include "sagnac/algebra.hpp"

namespace sagnac {

/// Measured or derived optical action of a Dove prism on polarization:
/// amplitude transmissions sqrt(t_par), sqrt(t_perp) and the relative phase
/// delta_phi picked up by the perpendicular component.
struct DoveParams {
  double t_par = 1.0;    // intensity transmission, parallel component, in (0, 1]
  double t_perp = 1.0;   // intensity transmission, perpendicular component, in (0, 1]
  double delta_phi = 0.0;  // radians, in [0, pi)

  void validate() const;  // throws std::invalid_argument on violation

  friend bool operator==(const DoveParams&, const DoveParams&) = default;
};

/// Prism shape and material. The ray is assumed to enter parallel to the
/// base, so the entrance incidence angle is pi/2 - base_angle.
struct PrismGeometry {
  double base_angle = 0.0;  // radians, in (0, pi/2)
  double n = 1.0;           // refractive index, > 1
  double length_mm = 0.0;   // informational only

  void validate() const;  // throws std::invalid_argument on violation

  friend bool operator==(const PrismGeometry&, const PrismGeometry&) = default;
};

/// Angles along the internal ray path: incidence on the entrance face
/// (theta1), refraction into the glass (theta2), and incidence on the base
/// (theta3 = base_angle + theta2).
struct RayAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

/// Trace the base-parallel input ray through the entrance face to the base.
/// Throws NoTotalInternalReflection if the base bounce is below the critical
/// angle. (For this entry geometry that reduces to n^2 > 1, so the check can
/// only fire for degenerate inputs; it guards the invariant all the same.)
RayAngles ray_angles(const PrismGeometry& geometry);

/// Relative phase between the s and p components picked up by one total
/// internal reflection at internal incidence theta3:
///   delta = 2 atan(cos t3 * sqrt(sin^2 t3 - 1/n^2) / sin^2 t3).
/// Throws NoTotalInternalReflection when sin(theta3) <= 1/n.
double tir_relative_phase(double n, double theta3);

/// Largest TIR relative phase over all internal angles, 2 atan((n - 1/n)/2).
double max_tir_phase(double n);

/// Smallest index whose best-angle TIR phase reaches `target_phase`
/// (radians, in (0, pi)). Inverse of max_tir_phase.
double min_index_for_phase(double target_phase);

/// Two-pass (entrance plus exit face) intensity transmissions for the p
/// (parallel) and s (perpendicular) polarizations at external incidence
/// theta1. The faces are uncoated; the TIR bounce itself is lossless.
struct FaceTransmittances {
  double t_par = 1.0;
  double t_perp = 1.0;
};

FaceTransmittances face_transmittances(double n, double theta1);

/// Predict the full polarization action of an uncoated prism from its shape
/// and index: Fresnel transmission losses on the two faces and the TIR phase
/// at the base.
DoveParams dove_params_from_physics(const PrismGeometry& geometry);

/// Find the index whose geometry-constrained TIR phase (for a base-parallel
/// input ray at the given base angle) equals `delta_phi` (radians, in
/// (0, pi/2)). Solved by bisection on [1, n_max] to 1e-9; throws NoSolution
/// when the phase is not reachable below n_max.
double infer_index_from_phase(double delta_phi, double base_angle, double n_max = 4.0);

}  // namespace sagnac
