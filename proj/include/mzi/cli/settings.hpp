#pragma once

// Point parameters and output settings shared by every subcommand, gathered
// from an optional key=value config file and then from command-line flags.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "mzi/errors.hpp"
#include "mzi/interferometer.hpp"

namespace mzi::cli {

// Bad flags, values, or config keys. Exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Format { Csv, Json };
enum class GridDensity { Coarse, Default, Fine };

struct Parameters {
  double s_x = 0.0;
  double s_y = 0.0;
  // Unset means a pure input: s_z = sqrt(1 - s_x^2 - s_y^2).
  std::optional<double> s_z;
  double beta = 1.5707963267948966;
  double phi = 0.0;
  double a_overlap = 1.0 / 3.0;
  double chi = 0.0;

  // Throws UsageError naming the parameter when s_x^2 + s_y^2 > 1 with s_z unset.
  interferometer::BlochVector bloch() const;
  // Domain checks with the offending parameter named. Throws UsageError.
  void validate() const;
};

struct Settings {
  Parameters params;
  std::optional<Format> format;
  GridDensity grid = GridDensity::Default;
  bool degrees = false;
};

// key -> raw text, keys spelled like the long flags without dashes:
// sx sy sz beta phi a-overlap chi format grid degrees.
using Assignments = std::map<std::string, std::string>;

bool is_known_key(const std::string& key);

// Lines of key=value; '#' starts a comment, blank lines are ignored.
// Unknown keys, repeated keys and malformed lines throw UsageError.
Assignments parse_config(std::istream& in, const std::string& source);

// Later entries win; used to lay flags over the config file.
void overlay(Assignments& base, const Assignments& top);

// Converts text to values. Angles (beta, phi, chi) are taken as degrees
// when degrees=true and converted to radians here.
Settings resolve_settings(const Assignments& assignments);

double parse_real(const std::string& key, const std::string& text);
Format parse_format(const std::string& text);
GridDensity parse_grid(const std::string& text);

}  // namespace mzi::cli
