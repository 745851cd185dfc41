#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>

namespace sagnac {

using Complex = std::complex<double>;

/// Slack used by validity and conservation checks throughout the library.
inline constexpr double kEps = 1e-12;

/// Largest orbital angular momentum order the state container accepts.
inline constexpr int kMaxOamOrder = 100;

/// Polarization amplitudes in the fixed (H, V) basis.
struct JonesVector {
  Complex h{0.0, 0.0};
  Complex v{0.0, 0.0};

  double norm2() const;            // |h|^2 + |v|^2
  JonesVector normalized() const;  // throws std::invalid_argument on the zero vector
};

JonesVector operator+(const JonesVector& a, const JonesVector& b);
JonesVector operator*(const Complex& s, const JonesVector& a);

/// 2x2 complex matrix, row-major. Acts on polarization pairs and, for the
/// beam-splitter, on path pairs.
struct JonesMatrix {
  std::array<Complex, 4> m{};  // m[row * 2 + col]

  static JonesMatrix identity();
  static JonesMatrix diagonal(const Complex& a, const Complex& d);

  const Complex& at(int row, int col) const { return m[row * 2 + col]; }
  Complex& at(int row, int col) { return m[row * 2 + col]; }
};

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b);
JonesVector operator*(const JonesMatrix& m, const JonesVector& x);

/// R_s(alpha) = [cos a, sin a; -sin a, cos a].
/// Throws std::invalid_argument on non-finite alpha.
JonesMatrix rotation_matrix(double alpha);

/// Which two-dimensional path basis a state is expressed in: the loop arms
/// (counter-propagating directions A and B) or the input/output ports (C, D).
enum class Basis : std::uint8_t { Loop, Ports };

enum class Direction : std::uint8_t { A = 0, B = 1 };
enum class Port : std::uint8_t { C = 0, D = 1 };
enum class Pol : std::uint8_t { H = 0, V = 1 };

/// One basis element of path (x) polarization (x) OAM. `path` is 0/1 and is
/// read as Direction or Port depending on the owning state's basis.
struct ModeKey {
  std::uint8_t path = 0;
  Pol pol = Pol::H;
  int l = 0;

  friend auto operator<=>(const ModeKey&, const ModeKey&) = default;
};

/// Sparse amplitude map over path (x) polarization (x) OAM basis states.
/// The map is ordered, so any whole-state reduction visits keys in one fixed
/// order and repeated evaluation is bit-stable.
class CompositeState {
 public:
  explicit CompositeState(Basis basis) : basis_(basis) {}

  Basis basis() const { return basis_; }

  /// Insert or overwrite one amplitude. The overload set enforces that loop
  /// labels only enter loop-basis states and port labels port-basis states;
  /// a mismatch throws std::invalid_argument, as do non-finite amplitudes and
  /// |l| > kMaxOamOrder.
  void set(Direction d, Pol pol, int l, const Complex& amp);
  void set(Port p, Pol pol, int l, const Complex& amp);

  /// Add into an existing amplitude (missing keys start at zero).
  void accumulate(Direction d, Pol pol, int l, const Complex& amp);
  void accumulate(Port p, Pol pol, int l, const Complex& amp);

  Complex at(Direction d, Pol pol, int l) const;
  Complex at(Port p, Pol pol, int l) const;

  const std::map<ModeKey, Complex>& amplitudes() const { return amps_; }

  /// Sum of |amplitude|^2 over all keys, in sorted key order.
  double total_probability() const;

  /// Probability restricted to one path label.
  double path_probability(Direction d) const;
  double path_probability(Port p) const;

  CompositeState& operator+=(const CompositeState& other);  // same basis only
  CompositeState scaled(const Complex& s) const;

 private:
  void check_basis(Basis expected) const;
  void insert(std::uint8_t path, Pol pol, int l, const Complex& amp, bool add);

  Basis basis_;
  std::map<ModeKey, Complex> amps_;
};

/// Apply a polarization operator to every (path, l) sector, or only to the
/// sector on one path when a filter is given. Linear in the state.
CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op);
CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op,
                                  Direction only);
CompositeState apply_pol_operator(const CompositeState& state, const JonesMatrix& op,
                                  Port only);

/// Polarization content of one path label: coherent (H, V) amplitudes taken
/// from the OAM order carrying the most probability on that path. Empty when
/// the path holds no amplitude.
std::optional<JonesVector> path_polarization(const CompositeState& state, Port p);
std::optional<JonesVector> path_polarization(const CompositeState& state, Direction d);

}  // namespace sagnac
