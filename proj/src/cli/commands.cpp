#include "mzi/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mzi/correlations.hpp"
#include "mzi/interferometer.hpp"

namespace mzi::cli {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_angle_axis(const std::string& name) { return name == "beta"; }

void set_axis(Parameters& p, const std::string& name, double value) {
  if (name == "s_x") {
    p.s_x = value;
  } else if (name == "beta") {
    p.beta = value;
  } else if (name == "a_overlap") {
    p.a_overlap = value;
  } else {
    throw UsageError("unknown axis '" + name + "' (expected s_x, beta or a_overlap)");
  }
}

struct PointValues {
  double v = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double i2 = 0.0;
  double omega_a = 0.0;
  double omega_b = 0.0;
};

PointValues compute(const Parameters& p) {
  const auto input = p.bloch();
  const interferometer::DetectorModel det(p.a_overlap, p.chi);
  const auto pure = correlations::make_report(correlations::build_pure_output(input, det, p.beta));
  const auto mixed_state = correlations::build_mixed_output(input, det, p.beta);
  const auto mixed = correlations::make_report(mixed_state);
  return {pure.visibility, pure.j_cc,     mixed.j_cc,
          pure.discord,    mixed.discord, mixed.mutual_info,
          mixed_state.weights.omega_a, mixed_state.weights.omega_b};
}

// Optimal setting cos(beta) = -S_x realized at S = (0, 0, 1), beta = pi/2.
std::pair<double, double> optimum(double a_overlap, double chi) {
  const interferometer::DetectorModel det(a_overlap, chi);
  const interferometer::BlochVector input{0.0, 0.0, 1.0};
  const auto st = correlations::build_pure_output(input, det, kPi / 2.0);
  return {correlations::classical_correlation_pure(st), interferometer::fringe_visibility(input, det, kPi / 2.0)};
}

bool needs_point(const std::vector<std::string>& outputs) {
  return std::any_of(outputs.begin(), outputs.end(), [](const std::string& o) { return o.find("max") == std::string::npos; });
}

}  // namespace

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> names = {"V",        "J1",       "J2",       "D1",    "D2",
                                                 "I2",       "omega_a",  "omega_b",  "J1^2+V^2",
                                                 "J2^2+V^2", "D2^2+V^2", "J1max",    "Vmax",
                                                 "J1max^2+Vmax^2"};
  return names;
}

double Axis::value(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Axis parse_axis(const std::string& text, bool degrees) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("vary: expected name:min:max:steps, got '" + text + "'");
  Axis axis;
  axis.name = parts[0];
  axis.min = parse_real("vary " + axis.name + " min", parts[1]);
  axis.max = parse_real("vary " + axis.name + " max", parts[2]);
  const double steps = parse_real("vary " + axis.name + " steps", parts[3]);
  if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
    throw UsageError("vary " + axis.name + ": steps must be an integer >= 2");
  }
  axis.steps = static_cast<int>(steps);
  if (degrees && is_angle_axis(axis.name)) {
    axis.min *= kPi / 180.0;
    axis.max *= kPi / 180.0;
  }
  return axis;
}

std::vector<std::string> parse_output_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void SweepRequest::validate() const {
  if (varied.empty() || varied.size() > 2) throw UsageError("vary: between 1 and 2 axes are required");
  if (varied.size() == 2 && varied[0].name == varied[1].name) {
    throw UsageError("vary: axis '" + varied[0].name + "' given twice");
  }
  for (const auto& axis : varied) {
    if (axis.steps < 2) throw UsageError("vary " + axis.name + ": steps must be >= 2");
    if (!(axis.min < axis.max)) throw UsageError("vary " + axis.name + ": min must be below max");
    double lo = 0.0;
    double hi = 1.0;
    if (axis.name == "s_x") {
      lo = -1.0;
    } else if (axis.name == "beta") {
      hi = kPi;
    } else if (axis.name != "a_overlap") {
      throw UsageError("unknown axis '" + axis.name + "' (expected s_x, beta or a_overlap)");
    }
    constexpr double slack = 1e-12;
    if (axis.min < lo - slack || axis.max > hi + slack) {
      throw UsageError("vary " + axis.name + ": range lies outside the parameter domain");
    }
  }
  if (outputs.empty()) throw UsageError("outputs: at least one output is required");
  const auto& known = known_outputs();
  for (const auto& o : outputs) {
    if (std::find(known.begin(), known.end(), o) == known.end()) throw UsageError("outputs: unknown output '" + o + "'");
  }
  fixed.validate();
}

std::vector<double> evaluate_outputs(const Parameters& p, const std::vector<std::string>& outputs) {
  PointValues pv;
  if (needs_point(outputs)) pv = compute(p);
  double j1max = 0.0;
  double vmax = 0.0;
  if (!std::all_of(outputs.begin(), outputs.end(), [](const std::string& o) { return o.find("max") == std::string::npos; })) {
    std::tie(j1max, vmax) = optimum(p.a_overlap, p.chi);
  }
  std::vector<double> row;
  row.reserve(outputs.size());
  for (const auto& o : outputs) {
    if (o == "V") row.push_back(pv.v);
    else if (o == "J1") row.push_back(pv.j1);
    else if (o == "J2") row.push_back(pv.j2);
    else if (o == "D1") row.push_back(pv.d1);
    else if (o == "D2") row.push_back(pv.d2);
    else if (o == "I2") row.push_back(pv.i2);
    else if (o == "omega_a") row.push_back(pv.omega_a);
    else if (o == "omega_b") row.push_back(pv.omega_b);
    else if (o == "J1^2+V^2") row.push_back(pv.j1 * pv.j1 + pv.v * pv.v);
    else if (o == "J2^2+V^2") row.push_back(pv.j2 * pv.j2 + pv.v * pv.v);
    else if (o == "D2^2+V^2") row.push_back(pv.d2 * pv.d2 + pv.v * pv.v);
    else if (o == "J1max") row.push_back(j1max);
    else if (o == "Vmax") row.push_back(vmax);
    else if (o == "J1max^2+Vmax^2") row.push_back(j1max * j1max + vmax * vmax);
    else throw UsageError("outputs: unknown output '" + o + "'");
  }
  return row;
}

Table report_table(const Parameters& p) {
  p.validate();
  const auto input = p.bloch();
  const interferometer::DetectorModel det(p.a_overlap, p.chi);
  const auto cfg = interferometer::MziConfig::make(p.beta, p.phi);
  const double p_a = interferometer::detection_probability(input, det, cfg, interferometer::Port::A);

  Table t;
  t.columns = {"s_x", "s_y", "s_z", "beta", "phi", "a_overlap", "chi", "p_a"};
  std::vector<double> row = {input.s_x, input.s_y, input.s_z, p.beta, p.phi, p.a_overlap, p.chi, p_a};
  const std::vector<std::string> outs(known_outputs().begin(), known_outputs().begin() + 11);
  const auto values = evaluate_outputs(p, outs);
  t.columns.insert(t.columns.end(), outs.begin(), outs.end());
  row.insert(row.end(), values.begin(), values.end());
  t.rows.push_back(std::move(row));
  return t;
}

SweepResult run_sweep(const SweepRequest& req) {
  req.validate();
  SweepResult result;
  for (const auto& axis : req.varied) result.table.columns.push_back(axis.name);
  result.table.columns.insert(result.table.columns.end(), req.outputs.begin(), req.outputs.end());

  const int outer = req.varied[0].steps;
  const int inner = req.varied.size() == 2 ? req.varied[1].steps : 1;
  for (int i = 0; i < outer; ++i) {
    for (int j = 0; j < inner; ++j) {
      Parameters p = req.fixed;
      std::vector<double> row;
      set_axis(p, req.varied[0].name, req.varied[0].value(i));
      row.push_back(req.varied[0].value(i));
      if (req.varied.size() == 2) {
        set_axis(p, req.varied[1].name, req.varied[1].value(j));
        row.push_back(req.varied[1].value(j));
      }
      try {
        p.validate();
        const auto values = evaluate_outputs(p, req.outputs);
        row.insert(row.end(), values.begin(), values.end());
      } catch (const DegenerateConfiguration&) {
        ++result.skipped_degenerate;
        continue;
      }
      result.table.rows.push_back(std::move(row));
    }
  }
  return result;
}

SweepRequest figure_request(int figure, GridDensity grid) {
  const int steps = grid == GridDensity::Coarse ? 21 : grid == GridDensity::Default ? 101 : 401;
  SweepRequest req;
  req.fixed.s_y = 0.0;
  switch (figure) {
    case 2:
      req.fixed.a_overlap = 1.0 / 3.0;
      req.varied = {{"s_x", -1.0, 1.0, steps}, {"beta", 0.0, kPi, steps}};
      req.outputs = {"J1", "J2"};
      break;
    case 3:
      req.fixed.beta = kPi / 6.0;
      req.varied = {{"a_overlap", 0.0, 1.0, steps}, {"s_x", -1.0, 1.0, steps}};
      req.outputs = {"J1", "J2"};
      break;
    case 4:
      req.fixed.s_x = 0.5;
      req.varied = {{"a_overlap", 0.0, 1.0, steps}, {"beta", 0.0, kPi, steps}};
      req.outputs = {"J1", "J2"};
      break;
    case 5:
      req.varied = {{"a_overlap", 0.0, 1.0, 10 * (steps - 1) + 1}};
      req.outputs = {"J1max", "Vmax", "J1max^2+Vmax^2"};
      break;
    default:
      throw UsageError("figure: expected 2, 3, 4 or 5, got " + std::to_string(figure));
  }
  return req;
}

}  // namespace mzi::cli
