#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sagnac/elements.hpp"

using namespace sagnac;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const JonesMatrix& a, const JonesMatrix& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  return worst;
}

// singular values via the eigenvalues of M^dagger M
std::pair<double, double> singular_values(const JonesMatrix& m) {
  JonesMatrix gram{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      gram.at(r, c) = std::conj(m.at(0, r)) * m.at(0, c) + std::conj(m.at(1, r)) * m.at(1, c);
    }
  }
  const double tr = gram.at(0, 0).real() + gram.at(1, 1).real();
  const Complex det_c = gram.at(0, 0) * gram.at(1, 1) - gram.at(0, 1) * gram.at(1, 0);
  const double det = det_c.real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {std::sqrt(tr / 2.0 + disc), std::sqrt(std::max(0.0, tr / 2.0 - disc))};
}

}  // namespace

TEST_CASE("prism matrix at zero rotation is the bare diagonal") {
  const DoveParams params{0.9877, 0.9475, 0.159 * kPi};
  const JonesMatrix m = dove_jones(params, 0.0);
  CHECK(std::abs(m.at(0, 0) - Complex{std::sqrt(0.9877), 0.0}) < 1e-15);
  CHECK(std::abs(m.at(1, 1) - std::polar(std::sqrt(0.9475), 0.159 * kPi)) < 1e-15);
  CHECK(std::abs(m.at(0, 1)) < 1e-15);
  CHECK(std::abs(m.at(1, 0)) < 1e-15);
}

TEST_CASE("prism matrix obeys the mirror identity J(pi - a) = J(-a)") {
  const DoveParams params{0.9877, 0.9475, 0.159 * kPi};
  for (const double alpha : {0.1, 0.9, kPi / 4.0, 2.1}) {
    CHECK(max_abs_diff(dove_jones(params, kPi - alpha), dove_jones(params, -alpha)) < 1e-12);
  }
}

TEST_CASE("prism singular values are rotation-invariant") {
  const DoveParams params{0.9, 0.5, 0.3};
  for (const double alpha : {0.0, 0.2, kPi / 4.0, 1.1, 2.9}) {
    const auto [hi, lo] = singular_values(dove_jones(params, alpha));
    CHECK(hi == doctest::Approx(std::sqrt(0.9)).epsilon(1e-12));
    CHECK(lo == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
}

TEST_CASE("mode phase accumulates two units of rotation per order") {
  CHECK(std::abs(oam_phase(0.3, 2) - std::polar(1.0, 1.2)) < 1e-15);
  CHECK(std::abs(oam_phase(0.3, -2) - std::polar(1.0, -1.2)) < 1e-15);
  CHECK(oam_phase(0.7, 0) == Complex{1.0, 0.0});
  CHECK_THROWS_AS(oam_phase(0.1, kMaxOamOrder + 1), std::invalid_argument);
}

TEST_CASE("beam splitter is unitary and respects its endpoints") {
  for (const double t : {0.0, 0.25, 0.5, 1.0}) {
    const JonesMatrix bs = beam_splitter(t);
    // columns orthonormal
    CHECK(std::abs(std::norm(bs.at(0, 0)) + std::norm(bs.at(1, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(bs.at(0, 0) * std::conj(bs.at(0, 1)) +
                   bs.at(1, 0) * std::conj(bs.at(1, 1))) < 1e-15);
  }
  CHECK(beam_splitter(1.0).at(0, 0) == Complex{1.0, 0.0});
  CHECK(beam_splitter(0.5).at(0, 1).real() == doctest::Approx(-std::sqrt(0.5)));
  CHECK_THROWS_AS(beam_splitter(1.2), std::invalid_argument);
  CHECK_THROWS_AS(beam_splitter(-0.1), std::invalid_argument);
}

TEST_CASE("waveplates produce the textbook matrices") {
  const JonesMatrix hwp0 = waveplate(WaveplateKind::Half, 0.0);
  CHECK(std::abs(hwp0.at(0, 0) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(hwp0.at(1, 1) - Complex{-1.0, 0.0}) < 1e-15);

  // half plate at 45 degrees exchanges H and V
  const JonesMatrix hwp45 = waveplate(WaveplateKind::Half, kPi / 4.0);
  CHECK(std::abs(hwp45.at(0, 1) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(hwp45.at(1, 0) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(hwp45.at(0, 0)) < 1e-15);

  const JonesMatrix qwp0 = waveplate(WaveplateKind::Quarter, 0.0);
  CHECK(std::abs(qwp0.at(1, 1) - Complex{0.0, 1.0}) < 1e-15);

  // unitary at arbitrary axis
  const JonesMatrix w = waveplate(WaveplateKind::Quarter, 0.77);
  const auto [hi, lo] = singular_values(w);
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));

  // pi-periodic in the fast axis
  CHECK(max_abs_diff(waveplate(WaveplateKind::Half, 0.3),
                     waveplate(WaveplateKind::Half, 0.3 + kPi)) < 1e-12);
}

TEST_CASE("polarizing splitter routes every port and polarization as documented") {
  struct Case {
    Port from;
    Pol pol;
    Direction to;
  };
  const Case into_loop[] = {
      {Port::D, Pol::H, Direction::A},
      {Port::D, Pol::V, Direction::B},
      {Port::C, Pol::H, Direction::B},
      {Port::C, Pol::V, Direction::A},
  };
  for (const auto& c : into_loop) {
    CompositeState ports(Basis::Ports);
    ports.set(c.from, c.pol, 1, Complex{1.0, 0.0});
    const CompositeState loop = pbs_route(ports);
    CHECK(loop.basis() == Basis::Loop);
    CHECK(loop.at(c.to, c.pol, 1) == Complex{1.0, 0.0});
    CHECK(loop.total_probability() == doctest::Approx(1.0).epsilon(1e-15));
  }

  struct Back {
    Direction from;
    Pol pol;
    Port to;
  };
  const Back into_ports[] = {
      {Direction::A, Pol::H, Port::C},
      {Direction::A, Pol::V, Port::D},
      {Direction::B, Pol::H, Port::D},
      {Direction::B, Pol::V, Port::C},
  };
  for (const auto& c : into_ports) {
    CompositeState loop(Basis::Loop);
    loop.set(c.from, c.pol, -2, Complex{0.0, 1.0});
    const CompositeState ports = pbs_route(loop);
    CHECK(ports.basis() == Basis::Ports);
    CHECK(ports.at(c.to, c.pol, -2) == Complex{0.0, 1.0});
  }
}

TEST_CASE("a trivial polarizing loop retroreflects port D onto port C") {
  CompositeState input(Basis::Ports);
  input.set(Port::D, Pol::H, 0, Complex{std::sqrt(0.5), 0.0});
  input.set(Port::D, Pol::V, 0, Complex{std::sqrt(0.5), 0.0});
  const CompositeState out = pbs_route(pbs_route(input));
  CHECK(out.path_probability(Port::C) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out.path_probability(Port::D) == doctest::Approx(0.0));
}
