#include "mzi/cli/app.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mzi/cli/commands.hpp"
#include "mzi/cli/verify.hpp"

namespace mzi::cli {

namespace {

// Flag values are captured as text and converted together with the config
// file, so both sources share one parser and one set of error messages.
struct PointFlags {
  std::map<std::string, std::string> text;
  bool degrees = false;
  std::string config;

  void attach(CLI::App* cmd) {
    static const std::pair<const char*, const char*> options[] = {
        {"sx", "Bloch component S_x"},       {"sy", "Bloch component S_y"},
        {"sz", "Bloch component S_z (default: pure input)"},
        {"beta", "BS2 angle in [0, pi]"},    {"phi", "phase shifter setting"},
        {"a-overlap", "detector overlap A = |<r|U|r>| in [0, 1]"},
        {"chi", "detector overlap phase"}};
    for (const auto& [key, help] : options) {
      cmd->add_option(std::string("--") + key, text[key], help)->allow_extra_args(false);
    }
    cmd->add_flag("--degrees", degrees, "angles are given in degrees");
    cmd->add_option("--config", config, "key=value file; flags take precedence")->check(CLI::ExistingFile);
  }

  Assignments collect(CLI::App* cmd) const {
    Assignments merged;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw UsageError("config: cannot open '" + config + "'");
      merged = parse_config(in, config);
    }
    Assignments flags;
    for (const auto& [key, value] : text) {
      if (cmd->count(std::string("--") + key) > 0) flags[key] = value;
    }
    if (degrees) flags["degrees"] = "true";
    overlay(merged, flags);
    return merged;
  }
};

struct OutputFlags {
  std::string format;
  std::string out;
  std::string grid;

  void attach(CLI::App* cmd, bool with_grid) {
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "write results to FILE instead of stdout");
    if (with_grid) cmd->add_option("--grid", grid, "coarse, default or fine")->check(CLI::IsMember({"coarse", "default", "fine"}));
  }

  void apply(Assignments& a) const {
    if (!format.empty()) a["format"] = format;
    if (!grid.empty()) a["grid"] = grid;
  }
};

// Renders into a buffer first so a failed command never leaves a partial file.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("out: cannot open '" + path + "' for writing");
  file << text;
  if (!file.flush()) throw UsageError("out: write to '" + path + "' failed");
}

std::string axis_key(const std::string& axis) { return axis == "s_x" ? "sx" : axis == "a_overlap" ? "a-overlap" : axis; }

void write_table(std::ostream& os, const Table& table, Format format, bool single_object) {
  if (format == Format::Json) {
    single_object ? write_json_object(os, table) : write_json_rows(os, table);
  } else {
    write_csv(os, table);
  }
}

void warn_skipped(std::ostream& err, int skipped) {
  if (skipped > 0) {
    err << "warning: skipped " << skipped << " degenerate grid point(s) where 1 + S_x cos(beta) = 0\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mach-Zehnder interferometer with an asymmetric second beam splitter and a which-path detector"};
  app.require_subcommand(1);

  auto* report = app.add_subcommand("report", "visibility and correlations at one parameter point");
  PointFlags report_point;
  OutputFlags report_out;
  report_point.attach(report);
  report_out.attach(report, false);

  auto* sweep = app.add_subcommand("sweep", "outputs over a one- or two-axis grid");
  PointFlags sweep_point;
  OutputFlags sweep_out;
  std::vector<std::string> vary;
  std::string outputs = "V,J1,J2";
  sweep_point.attach(sweep);
  sweep_out.attach(sweep, false);
  sweep->add_option("--vary", vary, "axis as name:min:max:steps, name in {s_x, beta, a_overlap}; up to 2")
      ->required();
  sweep->add_option("--outputs", outputs, "comma-separated outputs")->capture_default_str();

  auto* figure = app.add_subcommand("figure", "preset sweep for figure 2, 3, 4 or 5");
  int figure_number = 0;
  OutputFlags figure_out;
  figure->add_option("number", figure_number, "2, 3, 4 or 5")->required()->check(CLI::IsMember({2, 3, 4, 5}));
  figure_out.attach(figure, true);

  auto* verify = app.add_subcommand("verify", "run every closed-form versus oracle check");
  OutputFlags verify_out;
  verify_out.attach(verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    const int code = app.exit(e, help_out, err);
    out << help_out.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ostringstream buffer;
    if (report->parsed()) {
      auto a = report_point.collect(report);
      report_out.apply(a);
      const auto s = resolve_settings(a);
      write_table(buffer, report_table(s.params), s.format.value_or(Format::Csv), true);
      emit(buffer.str(), report_out.out, out);
    } else if (sweep->parsed()) {
      auto a = sweep_point.collect(sweep);
      sweep_out.apply(a);
      const auto s = resolve_settings(a);
      SweepRequest req;
      req.fixed = s.params;
      for (const auto& v : vary) {
        req.varied.push_back(parse_axis(v, s.degrees));
        if (a.count(axis_key(req.varied.back().name)) > 0) {
          throw UsageError(axis_key(req.varied.back().name) + ": parameter is both fixed and varied");
        }
      }
      req.outputs = parse_output_list(outputs);
      const auto result = run_sweep(req);
      write_table(buffer, result.table, s.format.value_or(Format::Csv), false);
      emit(buffer.str(), sweep_out.out, out);
      warn_skipped(err, result.skipped_degenerate);
    } else if (figure->parsed()) {
      Assignments a;
      figure_out.apply(a);
      const auto s = resolve_settings(a);
      const auto result = run_sweep(figure_request(figure_number, s.grid));
      write_table(buffer, result.table, s.format.value_or(Format::Csv), false);
      emit(buffer.str(), figure_out.out, out);
      warn_skipped(err, result.skipped_degenerate);
    } else if (verify->parsed()) {
      Assignments a;
      verify_out.apply(a);
      const auto s = resolve_settings(a);
      const auto rep = run_verify(s.grid);
      if (!s.format) {
        write_verify_text(buffer, rep);
      } else if (*s.format == Format::Json) {
        write_verify_json(buffer, rep);
      } else {
        write_verify_csv(buffer, rep);
      }
      emit(buffer.str(), verify_out.out, out);
      return rep.passed() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const DegenerateConfiguration& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace mzi::cli
