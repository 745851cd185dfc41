#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sagnac/experiments.hpp"
#include "sagnac/fresnel.hpp"
#include "sagnac/interferometer.hpp"

namespace sagnac {

/// Sweep request as written in a bench file: a uniform grid over one
/// variable, plus the input mode. Angles are stored in radians.
struct BenchSweep {
  SweepVariable variable = SweepVariable::Alpha;
  double first = 0.0;
  double last = 0.0;
  std::size_t count = 2;
  int l = 0;
  std::string polarization = "H";  // one of the standard labels

  friend bool operator==(const BenchSweep&, const BenchSweep&) = default;
};

struct BenchImperfection {
  double rms = 0.0;  // radians
  std::size_t trials = 1;
  int l_lo = 1;
  int l_hi = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchImperfection&, const BenchImperfection&) = default;
};

enum class OutputFormat { Csv, Json };

struct BenchOutput {
  std::string path;
  OutputFormat format = OutputFormat::Csv;

  friend bool operator==(const BenchOutput&, const BenchOutput&) = default;
};

/// Parsed bench file. The prism is described either directly (measured
/// transmissions and phase) or physically (index and base angle); exactly
/// one of the two is present. A sweep and an imperfection study are mutually
/// exclusive; with neither, running the document evaluates a single point.
struct BenchDocument {
  std::optional<DoveParams> dove_params;
  std::optional<PrismGeometry> dove_geometry;
  InterferometerConfig interferometer{};
  std::optional<BenchSweep> sweep;
  std::optional<BenchImperfection> imperfection;
  std::optional<BenchOutput> output;

  friend bool operator==(const BenchDocument&, const BenchDocument&) = default;

  /// The prism parameters to simulate with: the direct values, or the ones
  /// predicted from the geometry.
  DoveParams resolved_dove() const;
};

enum class BenchParseMode { Strict, Lenient };

/// Parse the line-oriented bench format:
///   - one section per line: a section name (`dove`, `interferometer`,
///     `sweep`, `imperfection`, `output`) followed by whitespace-separated
///     key=value pairs; repeating a section name continues that section
///   - `#` starts a comment; blank lines are ignored
///   - angle values carry a mandatory unit suffix: `deg`, `rad`, or `pi`
///     (multiplication by pi); other numbers accept an optional `pi`
///   - values never contain whitespace (this includes output paths)
///
/// Unknown keys and sections are errors in strict mode; in lenient mode they
/// are skipped and reported through `warnings` (when given). Structural and
/// semantic violations throw ParseError with a 1-based line and column.
BenchDocument parse_bench(const std::string& text, BenchParseMode mode = BenchParseMode::Strict,
                          std::vector<std::string>* warnings = nullptr);

/// Canonical text for a document: one line per present section, keys in a
/// fixed order, angles printed in radians with full precision. Parsing the
/// result reproduces the document exactly.
std::string print_bench(const BenchDocument& doc);

/// Parse a command-line angle value with the same mandatory deg/rad/pi
/// suffix rule as bench files. Throws std::invalid_argument (a usage error,
/// not a data error) on bad input.
double parse_angle_flag(const std::string& text);

}  // namespace sagnac
