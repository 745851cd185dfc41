#include "sagnac/fresnel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sagnac/errors.hpp"

namespace sagnac {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_index(double n) {
  require_finite(n, "refractive index");
  if (!(n > 1.0)) {
    throw std::invalid_argument("refractive index must exceed 1");
  }
}

}  // namespace

void DoveParams::validate() const {
  require_finite(t_par, "t_par");
  require_finite(t_perp, "t_perp");
  require_finite(delta_phi, "delta_phi");
  if (!(t_par > 0.0 && t_par <= 1.0) || !(t_perp > 0.0 && t_perp <= 1.0)) {
    throw std::invalid_argument("transmissions must lie in (0, 1]");
  }
  if (!(delta_phi >= 0.0 && delta_phi < kPi)) {
    throw std::invalid_argument("delta_phi must lie in [0, pi)");
  }
}

void PrismGeometry::validate() const {
  require_finite(base_angle, "base_angle");
  require_finite(length_mm, "length_mm");
  require_index(n);
  if (!(base_angle > 0.0 && base_angle < kPi / 2.0)) {
    throw std::invalid_argument("base_angle must lie in (0, pi/2)");
  }
  if (length_mm < 0.0) {
    throw std::invalid_argument("length_mm must be non-negative");
  }
}

RayAngles ray_angles(const PrismGeometry& geometry) {
  geometry.validate();
  RayAngles r;
  r.theta1 = kPi / 2.0 - geometry.base_angle;
  r.theta2 = std::asin(std::sin(r.theta1) / geometry.n);
  r.theta3 = geometry.base_angle + r.theta2;
  if (!(std::sin(r.theta3) > 1.0 / geometry.n)) {
    throw NoTotalInternalReflection("base bounce is below the critical angle");
  }
  return r;
}

double tir_relative_phase(double n, double theta3) {
  require_index(n);
  require_finite(theta3, "theta3");
  if (!(theta3 > 0.0 && theta3 < kPi / 2.0)) {
    throw std::invalid_argument("theta3 must lie in (0, pi/2)");
  }
  const double s2 = std::sin(theta3) * std::sin(theta3);
  const double inv2 = 1.0 / (n * n);
  if (!(s2 > inv2)) {
    throw NoTotalInternalReflection("incidence below the critical angle");
  }
  return 2.0 * std::atan(std::cos(theta3) * std::sqrt(s2 - inv2) / s2);
}

double max_tir_phase(double n) {
  require_index(n);
  return 2.0 * std::atan((n - 1.0 / n) / 2.0);
}

double min_index_for_phase(double target_phase) {
  require_finite(target_phase, "target phase");
  if (!(target_phase > 0.0 && target_phase < kPi)) {
    throw std::invalid_argument("target phase must lie in (0, pi)");
  }
  // max_tir_phase(n) = 2 atan((n - 1/n)/2) inverts in closed form:
  // n - 1/n = 2 tan(phase/2)  =>  n = t + sqrt(t^2 + 1), t = tan(phase/2).
  const double t = std::tan(target_phase / 2.0);
  return t + std::sqrt(t * t + 1.0);
}

FaceTransmittances face_transmittances(double n, double theta1) {
  require_index(n);
  require_finite(theta1, "theta1");
  if (!(theta1 >= 0.0 && theta1 < kPi / 2.0)) {
    throw std::invalid_argument("theta1 must lie in [0, pi/2)");
  }
  const double ci = std::cos(theta1);
  const double st = std::sin(theta1) / n;
  const double ct = std::sqrt(1.0 - st * st);
  const double rs = (ci - n * ct) / (ci + n * ct);
  const double rp = (n * ci - ct) / (n * ci + ct);
  // One face transmits 1 - r^2; the exit face repeats the same incidence by
  // reversibility, so the prism contributes the square.
  const double tp = 1.0 - rp * rp;
  const double ts = 1.0 - rs * rs;
  return {tp * tp, ts * ts};
}

DoveParams dove_params_from_physics(const PrismGeometry& geometry) {
  const RayAngles angles = ray_angles(geometry);
  const FaceTransmittances faces = face_transmittances(geometry.n, angles.theta1);
  DoveParams params{faces.t_par, faces.t_perp, tir_relative_phase(geometry.n, angles.theta3)};
  params.validate();
  return params;
}

double infer_index_from_phase(double delta_phi, double base_angle, double n_max) {
  require_finite(delta_phi, "delta_phi");
  require_finite(base_angle, "base_angle");
  require_finite(n_max, "n_max");
  if (!(delta_phi > 0.0 && delta_phi < kPi / 2.0)) {
    throw std::invalid_argument("delta_phi must lie in (0, pi/2)");
  }
  if (!(base_angle > 0.0 && base_angle < kPi / 2.0)) {
    throw std::invalid_argument("base_angle must lie in (0, pi/2)");
  }
  if (!(n_max > 1.0)) {
    throw std::invalid_argument("n_max must exceed 1");
  }

  const auto phase_at = [base_angle](double n) {
    const RayAngles angles = ray_angles({base_angle, n, 0.0});
    return tir_relative_phase(n, angles.theta3);
  };

  // The geometry-constrained phase grows with n on this bracket; check the
  // upper end before bisecting.
  double lo = 1.0 + 1e-9;
  double hi = n_max;
  if (phase_at(hi) < delta_phi) {
    throw NoSolution("requested phase is not reachable below n_max at this base angle");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (phase_at(mid) < delta_phi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sagnac
