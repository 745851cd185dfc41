#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sagnac/interferometer.hpp"
#include "sagnac/metrics.hpp"

using namespace sagnac;

namespace {
constexpr double kPi = std::numbers::pi;
const DoveParams kBenchDove{0.9877, 0.9475, 0.159 * kPi};
}  // namespace

TEST_CASE("expected port follows the round-trip phase sign") {
  CHECK(expected_bssi_port(0, 0.123) == Port::D);
  CHECK(expected_bssi_port(1, kPi / 4.0) == Port::C);
  CHECK(expected_bssi_port(2, kPi / 4.0) == Port::D);
  CHECK(expected_bssi_port(-3, kPi / 4.0) == Port::C);
  CHECK(expected_bssi_port(1, kPi / 2.0) == Port::D);
  CHECK_THROWS_AS(expected_bssi_port(1, 0.3), std::invalid_argument);
}

TEST_CASE("fidelity report carries the dark-port polarization") {
  InterferometerConfig config;
  config.kind = InterferometerKind::Bssi;
  config.dove = kBenchDove;
  config.alpha = kPi / 4.0;
  const PortOutput out = run_bssi(config, make_port_input(JonesVector{1.0, 0.0}, 0));
  const FidelityReport report = bssi_fidelity(out, Port::D);
  CHECK(report.constructive_port == Port::D);
  CHECK(report.fidelity == doctest::Approx(out.p_d).epsilon(1e-15));
  // an |H> input leaks through the destructive port with flipped polarization
  REQUIRE(report.destructive_polarization.has_value());
  CHECK(std::abs(report.destructive_polarization->h) < 1e-12);
  CHECK(std::abs(report.destructive_polarization->v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a lossless run reports no dark-port polarization") {
  InterferometerConfig config;
  config.kind = InterferometerKind::Bssi;
  config.alpha = kPi / 4.0;
  const PortOutput out = run_bssi(config, make_port_input(JonesVector{1.0, 0.0}, 0));
  const FidelityReport report = bssi_fidelity(out, Port::D);
  CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(report.destructive_polarization.has_value());
}

TEST_CASE("polarization overlap is the squared normalized inner product") {
  const JonesVector h{1.0, 0.0};
  const JonesVector v{0.0, 1.0};
  const JonesVector diag{std::sqrt(0.5), std::sqrt(0.5)};
  CHECK(polarization_overlap(h, v) == doctest::Approx(0.0));
  CHECK(polarization_overlap(h, h) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(polarization_overlap(h, diag) == doctest::Approx(0.5).epsilon(1e-12));
  // scale invariance
  const JonesVector big{Complex{0.0, 3.0}, 0.0};
  CHECK(polarization_overlap(big, h) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(polarization_overlap(JonesVector{}, h), std::invalid_argument);
}

TEST_CASE("polarizing-loop fidelity complements the class overlap") {
  for (const double alpha : {0.0, 0.3, kPi / 4.0, 1.3}) {
    CHECK(pbssi_fidelity(kBenchDove, alpha) ==
          doctest::Approx(1.0 - pbssi_overlap(kBenchDove, alpha)).epsilon(1e-15));
  }
  CHECK(pbssi_fidelity(kBenchDove, kPi / 4.0) == 1.0);
}
