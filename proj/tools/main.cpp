#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_core.hpp"
#include "confarc/curve_io.hpp"
#include "confarc/errors.hpp"

using namespace confarc;

namespace {

void emit(const std::string& text, const cli::RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + cfg.out_path);
  f << text;
  if (!f) throw InputError("cannot write output file " + cfg.out_path);
}

int run(const cli::RunConfig& cfg) {
  cli::validate(cfg);
  const CurvePtr curve = load_curve_spec(cfg.curve_path);
  cli::Table table;
  int rc = 0;
  if (cfg.command == "invariants") {
    table = cli::cmd_invariants(*curve, cfg);
  } else if (cfg.command == "halfmeasure") {
    table = cli::cmd_halfmeasure(*curve, cfg);
  } else if (cfg.command == "angle") {
    table = cli::cmd_angle(*curve, cfg);
  } else if (cfg.command == "sphereavg") {
    table = cli::cmd_sphereavg(*curve, cfg);
  } else if (cfg.command == "export-embedding") {
    table = cli::cmd_export_embedding(*curve, cfg);
  } else {
    table = cli::check_table(cli::run_checks(curve, cfg), curve->kind());
    rc = table.summary["all_passed"].get<bool>() ? 0 : 1;
  }
  emit(cli::render(table, cfg.format), cfg);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal invariants of space curves"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig cfg;
  app.add_option("--curve", cfg.curve_path, "JSON curve specification")->required();
  app.add_option("--samples", cfg.samples, "number of samples, at least 8")->capture_default_str();
  app.add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for all randomness")->capture_default_str();
  const std::map<std::string, cli::Format> formats{{"csv", cli::Format::csv}, {"json", cli::Format::json}};
  app.add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(formats).description(""))
      ->option_text("csv|json (default csv)");
  app.add_option("--out", cfg.out_path, "output file (default: stdout)");

  app.add_subcommand("invariants", "t, s, rho, drho/dt, kappa, tau, T, is_vertex per sample");
  app.add_subcommand("halfmeasure", "polygonal half-measure of the osculating-circle curve against quadrature");
  app.add_subcommand("angle", "conformal angles between consecutive samples");
  app.add_subcommand("sphereavg", "average half-measure of the osculating-sphere families (--samples angles)");
  app.add_subcommand("export-embedding", "osculating circles as Pluecker coordinates");
  auto* check = app.add_subcommand("check", "seeded identity and invariance suite; exit 1 on failure");
  check->add_flag("--debug-corrupt-signature", cfg.corrupt_signature,
                  "use a positive-definite metric in the length-element check (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run(cfg);
  } catch (const InputError& e) {
    std::cerr << "confarc: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "confarc: numerical error: " << e.what() << "\n";
    return 3;
  }
}
