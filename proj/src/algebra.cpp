#include "sagnac/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace sagnac {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

double JonesVector::norm2() const { return std::norm(h) + std::norm(v); }

JonesVector JonesVector::normalized() const {
  const double n2 = norm2();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite Jones vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return {inv * h, inv * v};
}

JonesVector operator+(const JonesVector& a, const JonesVector& b) {
  return {a.h + b.h, a.v + b.v};
}

JonesVector operator*(const Complex& s, const JonesVector& a) { return {s * a.h, s * a.v}; }

JonesMatrix JonesMatrix::identity() { return diagonal({1.0, 0.0}, {1.0, 0.0}); }

JonesMatrix JonesMatrix::diagonal(const Complex& a, const Complex& d) {
  JonesMatrix r;
  r.at(0, 0) = a;
  r.at(1, 1) = d;
  return r;
}

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
  JonesMatrix r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    }
  }
  return r;
}

JonesVector operator*(const JonesMatrix& m, const JonesVector& x) {
  return {m.at(0, 0) * x.h + m.at(0, 1) * x.v, m.at(1, 0) * x.h + m.at(1, 1) * x.v};
}

JonesMatrix rotation_matrix(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  JonesMatrix r;
  r.at(0, 0) = c;
  r.at(0, 1) = s;
  r.at(1, 0) = -s;
  r.at(1, 1) = c;
  return r;
}

void CompositeState::check_basis(Basis expected) const {
  if (basis_ != expected) {
    throw std::invalid_argument("path label does not belong to this state's basis");
  }
}

void CompositeState::insert(std::uint8_t path, Pol pol, int l, const Complex& amp, bool add) {
  if (!finite(amp)) {
    throw std::invalid_argument("state amplitude must be finite");
  }
  if (l < -kMaxOamOrder || l > kMaxOamOrder) {
    throw std::invalid_argument("OAM order outside the supported range");
  }
  const ModeKey key{path, pol, l};
  if (add) {
    amps_[key] += amp;
  } else {
    amps_[key] = amp;
  }
}

void CompositeState::set(Direction d, Pol pol, int l, const Complex& amp) {
  check_basis(Basis::Loop);
  insert(static_cast<std::uint8_t>(d), pol, l, amp, false);
}

void CompositeState::set(Port p, Pol pol, int l, const Complex& amp) {
  check_basis(Basis::Ports);
  insert(static_cast<std::uint8_t>(p), pol, l, amp, false);
}

void CompositeState::accumulate(Direction d, Pol pol, int l, const Complex& amp) {
  check_basis(Basis::Loop);
  insert(static_cast<std::uint8_t>(d), pol, l, amp, true);
}

void CompositeState::accumulate(Port p, Pol pol, int l, const Complex& amp) {
  check_basis(Basis::Ports);
  insert(static_cast<std::uint8_t>(p), pol, l, amp, true);
}

Complex CompositeState::at(Direction d, Pol pol, int l) const {
  check_basis(Basis::Loop);
  const auto it = amps_.find(ModeKey{static_cast<std::uint8_t>(d), pol, l});
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

Complex CompositeState::at(Port p, Pol pol, int l) const {
  check_basis(Basis::Ports);
  const auto it = amps_.find(ModeKey{static_cast<std::uint8_t>(p), pol, l});
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double CompositeState::total_probability() const {
  double sum = 0.0;
  for (const auto& [key, amp] : amps_) {
    sum += std::norm(amp);
  }
  return sum;
}

double CompositeState::path_probability(Direction d) const {
  check_basis(Basis::Loop);
  double sum = 0.0;
  for (const auto& [key, amp] : amps_) {
    if (key.path == static_cast<std::uint8_t>(d)) sum += std::norm(amp);
  }
  return sum;
}

double CompositeState::path_probability(Port p) const {
  check_basis(Basis::Ports);
  double sum = 0.0;
  for (const auto& [key, amp] : amps_) {
    if (key.path == static_cast<std::uint8_t>(p)) sum += std::norm(amp);
  }
  return sum;
}

CompositeState& CompositeState::operator+=(const CompositeState& other) {
  if (basis_ != other.basis_) {
    throw std::invalid_argument("cannot add states expressed in different path bases");
  }
  for (const auto& [key, amp] : other.amps_) {
    amps_[key] += amp;
  }
  return *this;
}

CompositeState CompositeState::scaled(const Complex& s) const {
  CompositeState r(basis_);
  for (const auto& [key, amp] : amps_) {
    r.amps_[key] = s * amp;
  }
  return r;
}

namespace {

CompositeState apply_pol_impl(const CompositeState& state, const JonesMatrix& op,
                              std::optional<std::uint8_t> only) {
  CompositeState out(state.basis());
  for (const auto& [key, amp] : state.amplitudes()) {
    if (only && key.path != *only) {
      // Untouched path: copy through.
      if (state.basis() == Basis::Loop) {
        out.accumulate(static_cast<Direction>(key.path), key.pol, key.l, amp);
      } else {
        out.accumulate(static_cast<Port>(key.path), key.pol, key.l, amp);
      }
      continue;
    }
    const int col = static_cast<int>(key.pol);
    for (int row = 0; row < 2; ++row) {
      const Complex c = op.at(row, col) * amp;
      if (state.basis() == Basis::Loop) {
        out.accumulate(static_cast<Direction>(key.path), static_cast<Pol>(row), key.l, c);
      } else {
        out.accumulate(static_cast<Port>(key.path), static_cast<Pol>(row), key.l, c);
      }
    }
  }
  return out;
}

}  // namespace

CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op) {
  return apply_pol_impl(state, op, std::nullopt);
}

CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op,
                                  Direction only) {
  if (state.basis() != Basis::Loop) {
    throw std::invalid_argument("direction filter requires a loop-basis state");
  }
  return apply_pol_impl(state, op, static_cast<std::uint8_t>(only));
}

CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op,
                                  Port only) {
  if (state.basis() != Basis::Ports) {
    throw std::invalid_argument("port filter requires a ports-basis state");
  }
  return apply_pol_impl(state, op, static_cast<std::uint8_t>(only));
}

namespace {

std::optional<JonesVector> path_polarization_impl(const CompositeState& state,
                                                  std::uint8_t path) {
  // Pick the OAM order with the largest probability on this path, then read
  // its coherent (H, V) pair.
  std::map<int, double> weight;
  for (const auto& [key, amp] : state.amplitudes()) {
    if (key.path == path) weight[key.l] += std::norm(amp);
  }
  int best_l = 0;
  double best_w = 0.0;
  for (const auto& [l, w] : weight) {
    if (w > best_w) {
      best_w = w;
      best_l = l;
    }
  }
  if (!(best_w > 0.0)) return std::nullopt;
  JonesVector out;
  for (const auto& [key, amp] : state.amplitudes()) {
    if (key.path != path || key.l != best_l) continue;
    (key.pol == Pol::H ? out.h : out.v) = amp;
  }
  return out;
}

}  // namespace

std::optional<JonesVector> path_polarization(const CompositeState& state, Port p) {
  if (state.basis() != Basis::Ports) {
    throw std::invalid_argument("port label requires a ports-basis state");
  }
  return path_polarization_impl(state, static_cast<std::uint8_t>(p));
}

std::optional<JonesVector> path_polarization(const CompositeState& state, Direction d) {
  if (state.basis() != Basis::Loop) {
    throw std::invalid_argument("direction label requires a loop-basis state");
  }
  return path_polarization_impl(state, static_cast<std::uint8_t>(d));
}

}  // namespace sagnac
