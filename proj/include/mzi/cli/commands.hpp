#pragma once

#include <string>
#include <vector>

#include "mzi/cli/settings.hpp"
#include "mzi/cli/table.hpp"

namespace mzi::cli {

// Output names accepted by sweeps:
//   V J1 J2 D1 D2 I2 omega_a omega_b J1^2+V^2 J2^2+V^2 D2^2+V^2
//   J1max Vmax J1max^2+Vmax^2
// The last three describe the optimal setting cos(beta) = -S_x with a pure
// input and depend on a_overlap alone.
const std::vector<std::string>& known_outputs();

// Axis names: s_x, beta, a_overlap.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double value(int i) const;
};

// "name:min:max:steps". Angles are converted when degrees is set.
Axis parse_axis(const std::string& text, bool degrees);
std::vector<std::string> parse_output_list(const std::string& text);

struct SweepRequest {
  std::vector<Axis> varied;
  Parameters fixed;
  std::vector<std::string> outputs;

  // Throws UsageError for empty or more than 2 axes, repeated axes,
  // steps < 2, ranges outside the domain, or unknown outputs.
  void validate() const;
};

struct SweepResult {
  Table table;
  int skipped_degenerate = 0;
};

// Requested outputs at one point, in order. Throws DegenerateConfiguration
// when 1 + S_x cos(beta) vanishes.
std::vector<double> evaluate_outputs(const Parameters& p, const std::vector<std::string>& outputs);

// Columns s_x s_y s_z beta phi a_overlap chi p_a followed by every point
// output; s_z is the resolved value.
Table report_table(const Parameters& p);

// Rows in lexicographic axis order, first axis slowest. Degenerate points
// are left out and counted.
SweepResult run_sweep(const SweepRequest& req);

// Fixed caption parameters: fig2 A = 1/3 over (s_x, beta); fig3 beta = pi/6
// over (a_overlap, s_x); fig4 s_x = 1/2 over (a_overlap, beta); fig5 over
// a_overlap. Pure input with s_y = 0 throughout.
SweepRequest figure_request(int figure, GridDensity grid);

}  // namespace mzi::cli
