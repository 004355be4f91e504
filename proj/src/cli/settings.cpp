#include "mzi/cli/settings.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>

namespace mzi::cli {

namespace {

constexpr std::array<const char*, 10> kKeys = {"sx", "sy", "sz", "beta", "phi", "a-overlap", "chi", "format",
                                               "grid", "degrees"};
constexpr double kSlack = 1e-12;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError(key + ": expected true or false, got '" + text + "'");
}

}  // namespace

interferometer::BlochVector Parameters::bloch() const {
  if (s_z) return {s_x, s_y, *s_z};
  const double transverse = s_x * s_x + s_y * s_y;
  if (transverse > 1.0 + kSlack) {
    throw UsageError("sx, sy: s_x^2 + s_y^2 = " + std::to_string(transverse) + " exceeds 1");
  }
  return {s_x, s_y, std::sqrt(std::max(0.0, 1.0 - transverse))};
}

void Parameters::validate() const {
  const std::pair<const char*, double> all[] = {{"sx", s_x},   {"sy", s_y},         {"beta", beta},
                                                {"phi", phi}, {"a-overlap", a_overlap}, {"chi", chi}};
  for (const auto& [name, v] : all) {
    if (!std::isfinite(v)) throw UsageError(std::string(name) + ": value is not finite");
  }
  if (s_z && !std::isfinite(*s_z)) throw UsageError("sz: value is not finite");
  if (beta < -kSlack || beta > std::numbers::pi + kSlack) {
    throw UsageError("beta: " + std::to_string(beta) + " lies outside [0, pi]");
  }
  if (a_overlap < -kSlack || a_overlap > 1.0 + kSlack) {
    throw UsageError("a-overlap: " + std::to_string(a_overlap) + " lies outside [0, 1]");
  }
  const auto b = bloch();
  if (const double n2 = b.s_x * b.s_x + b.s_y * b.s_y + b.s_z * b.s_z; n2 > 1.0 + kSlack) {
    throw UsageError("sx, sy, sz: Bloch vector norm " + std::to_string(std::sqrt(n2)) + " exceeds 1");
  }
}

bool is_known_key(const std::string& key) {
  for (const char* k : kKeys)
    if (key == k) return true;
  return false;
}

Assignments parse_config(std::istream& in, const std::string& source) {
  Assignments out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = source + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!is_known_key(key)) throw UsageError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw UsageError(where + ": empty value for '" + key + "'");
    if (!out.emplace(key, value).second) throw UsageError(where + ": '" + key + "' given twice");
  }
  return out;
}

void overlay(Assignments& base, const Assignments& top) {
  for (const auto& [k, v] : top) base[k] = v;
}

double parse_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw UsageError(key + ": '" + text + "' is not a finite number");
  }
  return value;
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw UsageError("format: expected csv or json, got '" + text + "'");
}

GridDensity parse_grid(const std::string& text) {
  if (text == "coarse") return GridDensity::Coarse;
  if (text == "default") return GridDensity::Default;
  if (text == "fine") return GridDensity::Fine;
  throw UsageError("grid: expected coarse, default or fine, got '" + text + "'");
}

Settings resolve_settings(const Assignments& assignments) {
  for (const auto& [key, value] : assignments) {
    if (!is_known_key(key)) throw UsageError("unknown key '" + key + "'");
  }
  Settings s;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = assignments.find(key);
    return it == assignments.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("degrees")) s.degrees = parse_bool("degrees", *v);
  const double angle_scale = s.degrees ? std::numbers::pi / 180.0 : 1.0;

  if (const auto* v = get("sx")) s.params.s_x = parse_real("sx", *v);
  if (const auto* v = get("sy")) s.params.s_y = parse_real("sy", *v);
  if (const auto* v = get("sz")) s.params.s_z = parse_real("sz", *v);
  if (const auto* v = get("beta")) s.params.beta = parse_real("beta", *v) * angle_scale;
  if (const auto* v = get("phi")) s.params.phi = parse_real("phi", *v) * angle_scale;
  if (const auto* v = get("chi")) s.params.chi = parse_real("chi", *v) * angle_scale;
  if (const auto* v = get("a-overlap")) s.params.a_overlap = parse_real("a-overlap", *v);
  if (const auto* v = get("format")) s.format = parse_format(*v);
  if (const auto* v = get("grid")) s.grid = parse_grid(*v);
  return s;
}

}  // namespace mzi::cli
