#include "sagnac/bench.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sagnac/errors.hpp"

namespace sagnac {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct RawValue {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

// key -> value, per section; duplicate and unknown keys are rejected while
// collecting so the error can point at the offending token.
using Section = std::map<std::string, RawValue>;

struct SectionInfo {
  std::vector<std::string> keys;  // accepted keys
};

const std::map<std::string, SectionInfo>& section_table() {
  static const std::map<std::string, SectionInfo> table = {
      {"dove", {{"t_par", "t_perp", "delta_phi", "n", "base", "length_mm"}}},
      {"interferometer", {{"kind", "alpha", "T", "dove_error", "plate1_error", "plate2_error"}}},
      {"sweep", {{"variable", "first", "last", "count", "l", "pol"}}},
      {"imperfection", {{"rms", "trials", "l_lo", "l_hi", "seed"}}},
      {"output", {{"path", "format"}}},
  };
  return table;
}

bool known_key(const SectionInfo& info, const std::string& key) {
  for (const auto& k : info.keys) {
    if (k == key) return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& message, const RawValue& at) {
  throw ParseError(message, at.line, at.column);
}

const RawValue* find(const Section& section, const std::string& key) {
  const auto it = section.find(key);
  return it == section.end() ? nullptr : &it->second;
}

const RawValue& require(const Section& section, const std::string& key,
                        const std::string& section_name, const RawValue& section_at) {
  const RawValue* value = find(section, key);
  if (value == nullptr) {
    throw ParseError("section '" + section_name + "' is missing key '" + key + "'",
                     section_at.line, section_at.column);
  }
  return *value;
}

struct ParsedNumber {
  double value = 0.0;
  std::string suffix;  // "", "pi", "deg", or "rad"
};

ParsedNumber parse_number(const RawValue& raw) {
  if (raw.text.empty()) fail("empty value", raw);
  const char* begin = raw.text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) fail("expected a number, got '" + raw.text + "'", raw);
  if (!std::isfinite(value)) fail("value must be finite", raw);
  ParsedNumber parsed;
  parsed.value = value;
  parsed.suffix.assign(end);
  if (parsed.suffix != "" && parsed.suffix != "pi" && parsed.suffix != "deg" &&
      parsed.suffix != "rad") {
    fail("unknown unit suffix '" + parsed.suffix + "'", raw);
  }
  return parsed;
}

double parse_angle(const RawValue& raw, const std::string& key) {
  const ParsedNumber parsed = parse_number(raw);
  if (parsed.suffix == "deg") return parsed.value * kDegToRad;
  if (parsed.suffix == "rad") return parsed.value;
  if (parsed.suffix == "pi") return parsed.value * std::numbers::pi;
  fail("angle '" + key + "' needs a unit suffix (deg, rad, or pi)", raw);
}

double parse_plain(const RawValue& raw, const std::string& key) {
  const ParsedNumber parsed = parse_number(raw);
  if (parsed.suffix == "") return parsed.value;
  if (parsed.suffix == "pi") return parsed.value * std::numbers::pi;
  fail("'" + key + "' is not an angle; only a 'pi' suffix is allowed", raw);
}

long long parse_integer(const RawValue& raw, const std::string& key) {
  const double value = parse_plain(raw, key);
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 0.0) {
    fail("'" + key + "' must be an integer", raw);
  }
  return static_cast<long long>(rounded);
}

std::uint64_t parse_seed(const RawValue& raw) {
  if (raw.text.empty()) fail("empty value", raw);
  for (const char c : raw.text) {
    if (c < '0' || c > '9') fail("seed must be a base-10 integer", raw);
  }
  const char* begin = raw.text.c_str();
  char* end = nullptr;
  const unsigned long long value = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0') fail("seed must be a base-10 integer", raw);
  return static_cast<std::uint64_t>(value);
}

bool is_standard_label(const std::string& label) {
  for (const auto& pol : standard_polarizations()) {
    if (pol.label == label) return true;
  }
  return false;
}

}  // namespace

DoveParams BenchDocument::resolved_dove() const {
  if (dove_params.has_value() == dove_geometry.has_value()) {
    throw std::logic_error("document must carry exactly one prism description");
  }
  if (dove_params) return *dove_params;
  return dove_params_from_physics(*dove_geometry);
}

BenchDocument parse_bench(const std::string& text, BenchParseMode mode,
                          std::vector<std::string>* warnings) {
  std::map<std::string, Section> sections;
  std::map<std::string, RawValue> section_names;  // first occurrence, for error locations
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t pos = 0;
    std::string section_name;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
        ++pos;
      }
      const std::string token = line.substr(start, pos - start);
      const RawValue token_at{token, line_no, start + 1};
      if (section_name.empty()) {
        if (section_table().count(token) == 0) {
          if (mode == BenchParseMode::Lenient) {
            if (warnings != nullptr) {
              warnings->push_back("line " + std::to_string(line_no) + ": unknown section '" +
                                  token + "' skipped");
            }
            break;  // drop the rest of the line
          }
          fail("unknown section '" + token + "'", token_at);
        }
        section_name = token;
        section_names.emplace(token, token_at);
        sections[section_name];  // a bare section line still counts as present
        continue;
      }
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail("expected key=value, got '" + token + "'", token_at);
      }
      const std::string key = token.substr(0, eq);
      const RawValue value{token.substr(eq + 1), line_no, start + eq + 2};
      if (!known_key(section_table().at(section_name), key)) {
        if (mode == BenchParseMode::Lenient) {
          if (warnings != nullptr) {
            warnings->push_back("line " + std::to_string(line_no) + ": unknown key '" + key +
                                "' in section '" + section_name + "' skipped");
          }
          continue;
        }
        fail("unknown key '" + key + "' in section '" + section_name + "'", token_at);
      }
      if (!sections[section_name].emplace(key, value).second) {
        fail("duplicate key '" + key + "' in section '" + section_name + "'", token_at);
      }
    }
  }

  if (sections.empty()) {
    throw ParseError("empty document", 1, 1);
  }

  BenchDocument doc;

  // dove: either measured parameters or a physical description, never both
  {
    const auto it = sections.find("dove");
    if (it == sections.end()) {
      throw ParseError("section 'dove' is required", 0, 0);
    }
    const Section& dove = it->second;
    const RawValue& at = section_names.at("dove");
    const bool physical = find(dove, "n") != nullptr || find(dove, "base") != nullptr;
    const bool measured = find(dove, "t_par") != nullptr || find(dove, "t_perp") != nullptr ||
                          find(dove, "delta_phi") != nullptr;
    if (physical && measured) {
      for (const char* key : {"t_par", "t_perp", "delta_phi"}) {
        if (const RawValue* v = find(dove, key)) {
          fail(std::string("key '") + key + "' conflicts with the physical prism description",
               *v);
        }
      }
    }
    if (!physical && !measured) {
      throw ParseError("section 'dove' needs either measured parameters or n and base", at.line,
                       at.column);
    }
    try {
      if (physical) {
        PrismGeometry geometry;
        geometry.n = parse_plain(require(dove, "n", "dove", at), "n");
        geometry.base_angle = parse_angle(require(dove, "base", "dove", at), "base");
        if (const RawValue* v = find(dove, "length_mm")) {
          geometry.length_mm = parse_plain(*v, "length_mm");
        }
        geometry.validate();
        doc.dove_geometry = geometry;
      } else {
        DoveParams params;
        params.t_par = parse_plain(require(dove, "t_par", "dove", at), "t_par");
        params.t_perp = parse_plain(require(dove, "t_perp", "dove", at), "t_perp");
        if (const RawValue* v = find(dove, "delta_phi")) {
          params.delta_phi = parse_angle(*v, "delta_phi");
        }
        params.validate();
        doc.dove_params = params;
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("invalid dove section: ") + e.what(), at.line, at.column);
    }
  }

  if (const auto it = sections.find("interferometer"); it != sections.end()) {
    const Section& ifm = it->second;
    if (const RawValue* v = find(ifm, "kind")) {
      if (v->text == "bssi") {
        doc.interferometer.kind = InterferometerKind::Bssi;
      } else if (v->text == "pbssi") {
        doc.interferometer.kind = InterferometerKind::Pbssi;
      } else if (v->text == "modified") {
        doc.interferometer.kind = InterferometerKind::ModifiedBssi;
      } else {
        fail("unknown interferometer kind '" + v->text + "'", *v);
      }
    }
    if (const RawValue* v = find(ifm, "alpha")) {
      doc.interferometer.alpha = parse_angle(*v, "alpha");
    }
    if (const RawValue* v = find(ifm, "T")) {
      const double t = parse_plain(*v, "T");
      if (t < 0.0 || t > 1.0) fail("T must lie in [0, 1]", *v);
      doc.interferometer.transmissivity = t;
    }
    if (const RawValue* v = find(ifm, "dove_error")) {
      doc.interferometer.dove_angle_error = parse_angle(*v, "dove_error");
    }
    if (const RawValue* v = find(ifm, "plate1_error")) {
      doc.interferometer.plate1_error = parse_angle(*v, "plate1_error");
    }
    if (const RawValue* v = find(ifm, "plate2_error")) {
      doc.interferometer.plate2_error = parse_angle(*v, "plate2_error");
    }
  }

  if (const auto it = sections.find("sweep"); it != sections.end()) {
    const Section& sweep = it->second;
    const RawValue& at = section_names.at("sweep");
    BenchSweep parsed;
    const RawValue& variable = require(sweep, "variable", "sweep", at);
    if (variable.text == "alpha") {
      parsed.variable = SweepVariable::Alpha;
    } else if (variable.text == "delta_phi") {
      parsed.variable = SweepVariable::DeltaPhi;
    } else {
      fail("unknown sweep variable '" + variable.text + "'", variable);
    }
    parsed.first = parse_angle(require(sweep, "first", "sweep", at), "first");
    parsed.last = parse_angle(require(sweep, "last", "sweep", at), "last");
    {
      const RawValue& count = require(sweep, "count", "sweep", at);
      const long long value = parse_integer(count, "count");
      if (value < 1) fail("count must be at least 1", count);
      parsed.count = static_cast<std::size_t>(value);
    }
    if (const RawValue* v = find(sweep, "l")) {
      const long long value = parse_integer(*v, "l");
      if (value < -kMaxOamOrder || value > kMaxOamOrder) fail("l out of supported range", *v);
      parsed.l = static_cast<int>(value);
    }
    if (const RawValue* v = find(sweep, "pol")) {
      if (!is_standard_label(v->text)) fail("unknown polarization '" + v->text + "'", *v);
      parsed.polarization = v->text;
    }
    if (!(parsed.last > parsed.first) && parsed.count > 1) {
      fail("sweep needs last > first", at);
    }
    doc.sweep = parsed;
  }

  if (const auto it = sections.find("imperfection"); it != sections.end()) {
    const Section& imp = it->second;
    const RawValue& at = section_names.at("imperfection");
    if (doc.sweep) {
      throw ParseError("sections 'sweep' and 'imperfection' are mutually exclusive", at.line,
                       at.column);
    }
    BenchImperfection parsed;
    parsed.rms = parse_angle(require(imp, "rms", "imperfection", at), "rms");
    if (parsed.rms < 0.0) fail("rms must be non-negative", at);
    {
      const RawValue& trials = require(imp, "trials", "imperfection", at);
      const long long value = parse_integer(trials, "trials");
      if (value < 1) fail("trials must be at least 1", trials);
      parsed.trials = static_cast<std::size_t>(value);
    }
    {
      const RawValue& lo = require(imp, "l_lo", "imperfection", at);
      const RawValue& hi = require(imp, "l_hi", "imperfection", at);
      const long long lo_value = parse_integer(lo, "l_lo");
      const long long hi_value = parse_integer(hi, "l_hi");
      if (lo_value < -kMaxOamOrder || hi_value > kMaxOamOrder || lo_value > hi_value) {
        fail("order range must be non-empty and within supported bounds", lo);
      }
      parsed.l_lo = static_cast<int>(lo_value);
      parsed.l_hi = static_cast<int>(hi_value);
    }
    if (const RawValue* v = find(imp, "seed")) {
      parsed.seed = parse_seed(*v);
    }
    doc.imperfection = parsed;
  }

  if (const auto it = sections.find("output"); it != sections.end()) {
    const Section& out = it->second;
    const RawValue& at = section_names.at("output");
    BenchOutput parsed;
    parsed.path = require(out, "path", "output", at).text;
    if (parsed.path.empty()) fail("output path must be non-empty", at);
    if (const RawValue* v = find(out, "format")) {
      if (v->text == "csv") {
        parsed.format = OutputFormat::Csv;
      } else if (v->text == "json") {
        parsed.format = OutputFormat::Json;
      } else {
        fail("unknown output format '" + v->text + "'", *v);
      }
    }
    doc.output = parsed;
  }

  return doc;
}

double parse_angle_flag(const std::string& text) {
  try {
    return parse_angle(RawValue{text, 0, 0}, "angle");
  } catch (const ParseError& e) {
    throw std::invalid_argument(e.what());
  }
}

std::string print_bench(const BenchDocument& doc) {
  if (doc.dove_params.has_value() == doc.dove_geometry.has_value()) {
    throw std::logic_error("document must carry exactly one prism description");
  }
  std::string text;
  char buf[256];
  if (doc.dove_params) {
    std::snprintf(buf, sizeof buf, "dove t_par=%.17g t_perp=%.17g delta_phi=%.17grad\n",
                  doc.dove_params->t_par, doc.dove_params->t_perp, doc.dove_params->delta_phi);
    text += buf;
  } else {
    std::snprintf(buf, sizeof buf, "dove n=%.17g base=%.17grad length_mm=%.17g\n",
                  doc.dove_geometry->n, doc.dove_geometry->base_angle,
                  doc.dove_geometry->length_mm);
    text += buf;
  }
  const char* kind = "bssi";
  if (doc.interferometer.kind == InterferometerKind::Pbssi) kind = "pbssi";
  if (doc.interferometer.kind == InterferometerKind::ModifiedBssi) kind = "modified";
  std::snprintf(buf, sizeof buf,
                "interferometer kind=%s alpha=%.17grad T=%.17g dove_error=%.17grad "
                "plate1_error=%.17grad plate2_error=%.17grad\n",
                kind, doc.interferometer.alpha, doc.interferometer.transmissivity,
                doc.interferometer.dove_angle_error, doc.interferometer.plate1_error,
                doc.interferometer.plate2_error);
  text += buf;
  if (doc.sweep) {
    std::snprintf(buf, sizeof buf, "sweep variable=%s first=%.17grad last=%.17grad count=%zu l=%d pol=%s\n",
                  doc.sweep->variable == SweepVariable::Alpha ? "alpha" : "delta_phi",
                  doc.sweep->first, doc.sweep->last, doc.sweep->count, doc.sweep->l,
                  doc.sweep->polarization.c_str());
    text += buf;
  }
  if (doc.imperfection) {
    std::snprintf(buf, sizeof buf, "imperfection rms=%.17grad trials=%zu l_lo=%d l_hi=%d seed=%llu\n",
                  doc.imperfection->rms, doc.imperfection->trials, doc.imperfection->l_lo,
                  doc.imperfection->l_hi,
                  static_cast<unsigned long long>(doc.imperfection->seed));
    text += buf;
  }
  if (doc.output) {
    text += "output path=" + doc.output->path +
            " format=" + (doc.output->format == OutputFormat::Csv ? "csv" : "json") + "\n";
  }
  return text;
}

}  // namespace sagnac
