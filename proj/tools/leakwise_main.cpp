// leakwise: channel-leakage computations and privacy mask design.
//
// Subcommands: leakage, capacity, design-mask, dual, compare, simulate,
// converge. Inputs are JSON files (spectrum, ARMA model, covariance, fading
// distribution); outputs are a JSON report plus a CSV artifact. Exit codes:
// 0 success, 2 validation error, 3 numerical failure.

#include "leakwise/errors.hpp"
#include "leakwise/io.hpp"
#include "leakwise/leakage.hpp"
#include "leakwise/mask.hpp"
#include "leakwise/sim.hpp"
#include "leakwise/spectral.hpp"
#include "leakwise/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using leakwise::Error;
using leakwise::ErrorCode;
using nlohmann::json;

constexpr std::size_t kDefaultGridPoints = 4096;

std::size_t resolve_grid_points(std::size_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("LEAKWISE_GRID_POINTS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 2) {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            std::string("bad LEAKWISE_GRID_POINTS value '") + env + "'");
    }
    return parsed;
  }
  return kDefaultGridPoints;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    leakwise::throw_error(ErrorCode::InvalidArgument, "cannot open input file " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    leakwise::throw_error(ErrorCode::InvalidArgument,
                          "failed to parse " + path + ": " + e.what());
  }
  return doc;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    leakwise::throw_error(ErrorCode::InvalidArgument, "cannot open output file " + path);
  }
  out << body;
}

void write_report(const std::string& path, json doc, json config) {
  config["version"] = leakwise::kVersion;
  doc["config"] = std::move(config);
  doc["version"] = leakwise::kVersion;
  write_text(path, doc.dump(2) + "\n");
}

std::string derive_csv_path(const std::string& output) {
  if (output.size() > 5 && output.ends_with(".json")) {
    return output.substr(0, output.size() - 5) + ".csv";
  }
  return output + ".csv";
}

// Renders an ARMA input on the working grid; passes spectra through.
leakwise::SpectralDensity load_spectrum(const json& doc, std::size_t grid_points) {
  switch (leakwise::io::detect_input(doc)) {
    case leakwise::io::InputKind::Spectrum:
      return leakwise::io::spectral_density_from_json(doc);
    case leakwise::io::InputKind::Arma:
      return leakwise::arma_spectrum(leakwise::io::arma_from_json(doc),
                                     leakwise::FrequencyGrid(grid_points));
    default:
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "expected a spectrum or ARMA input for this command");
  }
}

void require_exactly_one_budget(std::initializer_list<std::pair<const char*, bool>> budgets) {
  int set = 0;
  std::string names;
  for (const auto& [name, given] : budgets) {
    if (given) ++set;
    names += names.empty() ? name : std::string("|") + name;
  }
  if (set != 1) {
    leakwise::throw_error(ErrorCode::InvalidArgument,
                          "exactly one budget flag of {" + names + "} must be set");
  }
}

struct LeakageArgs {
  std::string input;
  std::string output = "report.json";
  bool white = false;
  double sigma2 = 0.0;
  double noise = 0.0;
  double output_power = 0.0;
  bool side_info = false;
  std::size_t grid_points = kDefaultGridPoints;
};

json resolved_config_base(const std::string& command) { return json{{"command", command}}; }

int run_leakage(const LeakageArgs& args, bool noise_given, bool output_power_given,
                bool grid_given, bool capacity_mode) {
  require_exactly_one_budget({{capacity_mode ? "--power" : "--noise",
                               noise_given},
                              {"--output-power", output_power_given}});
  const std::size_t grid_points = resolve_grid_points(args.grid_points, grid_given);

  json config = resolved_config_base(capacity_mode ? "capacity" : "leakage");
  config["white"] = args.white;
  config["side_info"] = args.side_info;
  config["grid_points"] = grid_points;
  if (!args.input.empty()) config["input"] = args.input;
  if (args.sigma2 > 0.0) config["sigma2"] = args.sigma2;
  if (noise_given) config[capacity_mode ? "power" : "noise"] = args.noise;
  if (output_power_given) config["output_power"] = args.output_power;
  config["output"] = args.output;

  leakwise::LeakageReport report;
  std::vector<double> weights;

  if (args.white) {
    if (!(args.sigma2 > 0.0)) {
      leakwise::throw_error(ErrorCode::NonpositiveInput,
                            "--white requires a positive --sigma2");
    }
    if (capacity_mode) {
      report = leakwise::capacity_white(args.noise, args.sigma2);
    } else if (output_power_given) {
      const double noise_budget = args.output_power - args.sigma2;
      if (!(noise_budget > 0.0)) {
        leakwise::throw_error(ErrorCode::OutputBudgetTooSmall,
                              "output power does not exceed the input variance");
      }
      report = leakwise::leakage_white(args.sigma2, noise_budget);
      report.constraint = leakwise::ConstraintKind::OutputPower;
      report.budget = args.output_power;
    } else {
      report = leakwise::leakage_white(args.sigma2, args.noise);
    }
    weights = {args.sigma2};
  } else {
    if (args.input.empty()) {
      leakwise::throw_error(ErrorCode::InvalidArgument, "either --white or --input is required");
    }
    const json doc = load_json_file(args.input);
    const auto kind = leakwise::io::detect_input(doc);
    if (kind == leakwise::io::InputKind::Fading) {
      if (!(args.sigma2 > 0.0)) {
        leakwise::throw_error(ErrorCode::NonpositiveInput,
                              "fading inputs require a positive --sigma2");
      }
      const leakwise::FadingModel fading = leakwise::io::fading_from_json(doc);
      if (capacity_mode) {
        report = leakwise::capacity_fading(fading, args.sigma2, args.noise, args.side_info);
      } else if (output_power_given) {
        report = leakwise::leakage_fading_output(fading, args.sigma2, args.output_power,
                                                 args.side_info);
      } else {
        report = leakwise::leakage_fading(fading, args.sigma2, args.noise, args.side_info);
      }
      weights = fading.gains_sq();
    } else if (kind == leakwise::io::InputKind::Covariance) {
      if (capacity_mode || output_power_given) {
        leakwise::throw_error(ErrorCode::InvalidArgument,
                              "covariance inputs support only leakage with --noise");
      }
      const leakwise::CovarianceMatrix cov = leakwise::io::covariance_from_json(doc);
      const leakwise::EigenSpectrum spectrum = leakwise::eig_sym(cov);
      report = leakwise::leakage_parallel(spectrum.eigenvalues, args.noise);
      weights = spectrum.eigenvalues;
    } else {
      const leakwise::SpectralDensity s = load_spectrum(doc, grid_points);
      if (capacity_mode) {
        report = leakwise::capacity_colored(s, args.noise);
      } else if (output_power_given) {
        report = leakwise::leakage_output_constrained(s, args.output_power);
      } else {
        report = leakwise::leakage_colored(s, args.noise);
      }
      weights = s.values();
    }
  }

  const std::string csv_path = derive_csv_path(args.output);
  write_text(csv_path, leakwise::io::allocation_csv(*report.allocation, weights));
  write_report(args.output, leakwise::io::leakage_report_json(report, csv_path, capacity_mode),
               std::move(config));
  return 0;
}

struct MaskArgs {
  std::string input;
  std::string output = "mask.json";
  double sigma2 = 0.0;
  double distortion = 0.0;
  double output_power = 0.0;
  double leakage_cap = 0.0;
  bool side_info = false;
  bool diagonal_only = false;
  std::size_t grid_points = kDefaultGridPoints;
  std::string objective = "distortion";
};

void write_mask_outputs(const MaskArgs& args, const leakwise::MaskDesign& design, json config) {
  const std::string csv_path = derive_csv_path(args.output);
  if (const auto* spectrum = std::get_if<leakwise::SpectralDensity>(&design.noise_spec)) {
    write_text(csv_path, leakwise::io::spectrum_csv(*spectrum));
  } else if (const auto* per_state = std::get_if<std::vector<double>>(&design.noise_spec)) {
    leakwise::Allocation allocation;
    allocation.powers = *per_state;
    write_text(csv_path, leakwise::io::allocation_csv(allocation, {}));
  } else if (const auto* cov = std::get_if<leakwise::CovarianceMatrix>(&design.noise_spec)) {
    write_text(csv_path, leakwise::io::matrix_csv(cov->entries()));
  }
  json doc = leakwise::io::mask_design_json(design);
  doc["noise_csv"] = csv_path;
  write_report(args.output, std::move(doc), std::move(config));
}

int run_design_mask(const MaskArgs& args, bool distortion_given, bool output_power_given,
                    bool dual_given, bool grid_given) {
  require_exactly_one_budget({{"--distortion", distortion_given},
                              {"--output-power", output_power_given},
                              {"--dual", dual_given}});
  const std::size_t grid_points = resolve_grid_points(args.grid_points, grid_given);

  json config = resolved_config_base("design-mask");
  config["input"] = args.input;
  config["side_info"] = args.side_info;
  config["diagonal_only"] = args.diagonal_only;
  config["grid_points"] = grid_points;
  if (distortion_given) config["distortion"] = args.distortion;
  if (output_power_given) config["output_power"] = args.output_power;
  if (dual_given) config["leakage_cap"] = args.leakage_cap;
  config["output"] = args.output;

  const json doc = load_json_file(args.input);
  const auto kind = leakwise::io::detect_input(doc);

  leakwise::MaskDesign design;
  if (kind == leakwise::io::InputKind::Fading) {
    if (!(args.sigma2 > 0.0)) {
      leakwise::throw_error(ErrorCode::NonpositiveInput,
                            "fading inputs require a positive --sigma2");
    }
    config["sigma2"] = args.sigma2;
    const leakwise::FadingModel fading = leakwise::io::fading_from_json(doc);
    if (output_power_given) {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "output-power masks are not defined for fading inputs");
    }
    design = dual_given
                 ? leakwise::dual_fading(fading, args.sigma2, args.leakage_cap, args.side_info)
                 : leakwise::design_fading(fading, args.sigma2, args.distortion, args.side_info);
  } else if (kind == leakwise::io::InputKind::Covariance) {
    const leakwise::CovarianceMatrix cov = leakwise::io::covariance_from_json(doc);
    if (output_power_given) {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "output-power masks are not defined for covariance inputs");
    }
    design = dual_given ? leakwise::dual_finite(cov, args.leakage_cap)
                        : leakwise::design_finite(cov, args.distortion, args.diagonal_only);
  } else {
    const leakwise::SpectralDensity s = load_spectrum(doc, grid_points);
    if (dual_given) {
      design = leakwise::dual_stationary_distortion(s, args.leakage_cap);
    } else if (output_power_given) {
      design = leakwise::design_stationary_output_power(s, args.output_power);
    } else {
      design = leakwise::design_stationary(s, args.distortion);
    }
  }
  write_mask_outputs(args, design, std::move(config));
  return 0;
}

int run_dual(const MaskArgs& args, bool cap_given, bool grid_given) {
  if (!cap_given) {
    leakwise::throw_error(ErrorCode::InvalidArgument, "--leakage-cap is required");
  }
  if (args.objective != "distortion" && args.objective != "power") {
    leakwise::throw_error(ErrorCode::InvalidArgument,
                          "--objective must be 'distortion' or 'power'");
  }
  const std::size_t grid_points = resolve_grid_points(args.grid_points, grid_given);

  json config = resolved_config_base("dual");
  config["input"] = args.input;
  config["leakage_cap"] = args.leakage_cap;
  config["objective"] = args.objective;
  config["side_info"] = args.side_info;
  config["grid_points"] = grid_points;
  config["output"] = args.output;

  const json doc = load_json_file(args.input);
  const auto kind = leakwise::io::detect_input(doc);

  leakwise::MaskDesign design;
  if (kind == leakwise::io::InputKind::Fading) {
    if (!(args.sigma2 > 0.0)) {
      leakwise::throw_error(ErrorCode::NonpositiveInput,
                            "fading inputs require a positive --sigma2");
    }
    config["sigma2"] = args.sigma2;
    if (args.objective == "power") {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "the power objective applies to stationary inputs only");
    }
    design = leakwise::dual_fading(leakwise::io::fading_from_json(doc), args.sigma2,
                                   args.leakage_cap, args.side_info);
  } else if (kind == leakwise::io::InputKind::Covariance) {
    if (args.objective == "power") {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "the power objective applies to stationary inputs only");
    }
    design = leakwise::dual_finite(leakwise::io::covariance_from_json(doc), args.leakage_cap);
  } else {
    const leakwise::SpectralDensity s = load_spectrum(doc, grid_points);
    design = args.objective == "power"
                 ? leakwise::dual_stationary_power(s, args.leakage_cap)
                 : leakwise::dual_stationary_distortion(s, args.leakage_cap);
  }
  write_mask_outputs(args, design, std::move(config));
  return 0;
}

struct CompareArgs {
  std::string input;
  std::string noise_input;
  std::string output = "compare.json";
  double power = 0.0;
  double noise = 0.0;
  std::size_t grid_points = kDefaultGridPoints;
};

int run_compare(const CompareArgs& args, bool power_given, bool noise_given, bool grid_given) {
  const std::size_t grid_points = resolve_grid_points(args.grid_points, grid_given);
  const leakwise::SpectralDensity s_x = load_spectrum(load_json_file(args.input), grid_points);
  const leakwise::SpectralDensity s_z =
      load_spectrum(load_json_file(args.noise_input), grid_points);

  json config = resolved_config_base("compare");
  config["input"] = args.input;
  config["noise_input"] = args.noise_input;
  config["grid_points"] = grid_points;
  if (power_given) config["power"] = args.power;
  if (noise_given) config["noise"] = args.noise;
  config["output"] = args.output;

  const auto cmp = leakwise::compare_leakage_capacity(
      s_x, s_z, power_given ? std::optional<double>(args.power) : std::nullopt,
      noise_given ? std::optional<double>(args.noise) : std::nullopt);
  write_report(args.output,
               leakwise::io::comparison_json(cmp, s_x.variance(), s_z.variance()),
               std::move(config));
  return 0;
}

struct SimulateArgs {
  std::string input;
  std::string output = "audit.json";
  double distortion = 0.0;
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& args) {
  if (!(args.distortion > 0.0)) {
    leakwise::throw_error(ErrorCode::BudgetNonpositive, "--distortion must be positive");
  }
  const leakwise::CovarianceMatrix cov =
      leakwise::io::covariance_from_json(load_json_file(args.input));
  const leakwise::MaskDesign design = leakwise::design_finite(cov, args.distortion);

  const std::string design_path = derive_csv_path(args.output) + ".design.json";
  json design_doc = leakwise::io::mask_design_json(design);

  json config = resolved_config_base("simulate");
  config["input"] = args.input;
  config["distortion"] = args.distortion;
  config["paths"] = args.paths;
  config["seed"] = args.seed;
  config["output"] = args.output;

  write_report(design_path, std::move(design_doc), config);
  const auto audit =
      leakwise::sim::empirical_mask_audit(design, cov, args.paths, args.seed, design_path);
  write_report(args.output, leakwise::io::audit_json(audit), std::move(config));
  return 0;
}

struct ConvergeArgs {
  std::string input;
  std::string output = "converge.json";
  double noise = 0.0;
  std::string horizons = "16,64,256,512";
  std::size_t grid_points = kDefaultGridPoints;
};

std::vector<std::size_t> parse_horizons(const std::string& text) {
  std::vector<std::size_t> horizons;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      horizons.push_back(std::stoul(token));
    } catch (const std::exception&) {
      leakwise::throw_error(ErrorCode::InvalidArgument,
                            "bad horizon '" + token + "' in --horizons");
    }
  }
  if (horizons.empty()) {
    leakwise::throw_error(ErrorCode::InvalidArgument, "--horizons is empty");
  }
  return horizons;
}

int run_converge(const ConvergeArgs& args, bool grid_given) {
  const std::size_t grid_points = resolve_grid_points(args.grid_points, grid_given);
  const leakwise::SpectralDensity s = load_spectrum(load_json_file(args.input), grid_points);
  const std::vector<std::size_t> horizons = parse_horizons(args.horizons);

  json config = resolved_config_base("converge");
  config["input"] = args.input;
  config["noise"] = args.noise;
  config["horizons"] = horizons;
  config["grid_points"] = grid_points;
  config["output"] = args.output;

  const auto run = leakwise::sim::szego_convergence(s, args.noise, horizons);
  const std::string csv_path = derive_csv_path(args.output);
  write_text(csv_path, leakwise::io::convergence_csv(run));
  json doc = leakwise::io::convergence_json(run, args.noise);
  doc["convergence_csv"] = csv_path;
  write_report(args.output, std::move(doc), std::move(config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-leakage computations and optimal privacy mask design"};
  app.require_subcommand(1);
  app.set_version_flag("--version", leakwise::kVersion);

  LeakageArgs leakage_args;
  auto* leakage_cmd = app.add_subcommand("leakage", "Channel leakage of a data source");
  leakage_cmd->add_option("--input", leakage_args.input, "Spectrum/ARMA/covariance/fading JSON");
  leakage_cmd->add_flag("--white", leakage_args.white, "White Gaussian input");
  leakage_cmd->add_option("--sigma2", leakage_args.sigma2, "Input (or pre-fading) variance");
  leakage_cmd->add_option("--noise", leakage_args.noise, "Noise power budget");
  leakage_cmd->add_option("--output-power", leakage_args.output_power, "Output power budget");
  leakage_cmd->add_flag("--side-info", leakage_args.side_info, "Noise side information");
  leakage_cmd->add_option("--grid-points", leakage_args.grid_points, "Frequency grid size");
  leakage_cmd->add_option("--output", leakage_args.output, "Report path");

  LeakageArgs capacity_args;
  auto* capacity_cmd = app.add_subcommand("capacity", "Channel capacity of a noise model");
  capacity_cmd->add_option("--input", capacity_args.input, "Noise spectrum/ARMA/fading JSON");
  capacity_cmd->add_flag("--white", capacity_args.white, "White Gaussian noise");
  capacity_cmd->add_option("--sigma2", capacity_args.sigma2, "Noise variance (white/fading)");
  capacity_cmd->add_option("--power", capacity_args.noise, "Input power budget");
  capacity_cmd->add_flag("--side-info", capacity_args.side_info, "Transmitter side information");
  capacity_cmd->add_option("--grid-points", capacity_args.grid_points, "Frequency grid size");
  capacity_cmd->add_option("--output", capacity_args.output, "Report path");

  MaskArgs mask_args;
  auto* mask_cmd = app.add_subcommand("design-mask", "Optimal privacy mask for a budget");
  mask_cmd->add_option("--input", mask_args.input, "Spectrum/ARMA/covariance/fading JSON")
      ->required();
  mask_cmd->add_option("--sigma2", mask_args.sigma2, "Pre-fading variance");
  mask_cmd->add_option("--distortion", mask_args.distortion, "Distortion budget");
  mask_cmd->add_option("--output-power", mask_args.output_power, "Masked-data power budget");
  mask_cmd->add_option("--dual", mask_args.leakage_cap, "Leakage cap (switches to the dual)");
  mask_cmd->add_flag("--side-info", mask_args.side_info, "Noise side information");
  mask_cmd->add_flag("--diagonal-only", mask_args.diagonal_only,
                     "Project a finite-time mask onto its diagonal");
  mask_cmd->add_option("--grid-points", mask_args.grid_points, "Frequency grid size");
  mask_cmd->add_option("--output", mask_args.output, "Report path");

  MaskArgs dual_args;
  auto* dual_cmd = app.add_subcommand("dual", "Minimum budget for a leakage cap");
  dual_cmd->add_option("--input", dual_args.input, "Spectrum/ARMA/covariance/fading JSON")
      ->required();
  dual_cmd->add_option("--sigma2", dual_args.sigma2, "Pre-fading variance");
  dual_cmd->add_option("--leakage-cap", dual_args.leakage_cap, "Leakage cap in bits");
  dual_cmd->add_option("--objective", dual_args.objective,
                       "Budget to minimize: distortion|power");
  dual_cmd->add_flag("--side-info", dual_args.side_info, "Noise side information");
  dual_cmd->add_option("--grid-points", dual_args.grid_points, "Frequency grid size");
  dual_cmd->add_option("--output", dual_args.output, "Report path");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Leakage vs capacity, matched moments");
  compare_cmd->add_option("--input", compare_args.input, "Input spectrum/ARMA JSON")->required();
  compare_cmd->add_option("--noise-input", compare_args.noise_input, "Noise spectrum/ARMA JSON")
      ->required();
  compare_cmd->add_option("--power", compare_args.power, "Declared input power");
  compare_cmd->add_option("--noise", compare_args.noise, "Declared noise power");
  compare_cmd->add_option("--grid-points", compare_args.grid_points, "Frequency grid size");
  compare_cmd->add_option("--output", compare_args.output, "Report path");

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Sample-based audit of a finite design");
  simulate_cmd->add_option("--input", simulate_args.input, "Covariance JSON")->required();
  simulate_cmd->add_option("--distortion", simulate_args.distortion, "Total distortion budget")
      ->required();
  simulate_cmd->add_option("--paths", simulate_args.paths, "Number of sample paths");
  simulate_cmd->add_option("--seed", simulate_args.seed, "RNG seed");
  simulate_cmd->add_option("--output", simulate_args.output, "Audit report path");

  ConvergeArgs converge_args;
  auto* converge_cmd = app.add_subcommand("converge", "Finite-horizon convergence study");
  converge_cmd->add_option("--input", converge_args.input, "Spectrum/ARMA JSON")->required();
  converge_cmd->add_option("--noise", converge_args.noise, "Per-sample noise budget")
      ->required();
  converge_cmd->add_option("--horizons", converge_args.horizons, "Comma-separated K values");
  converge_cmd->add_option("--grid-points", converge_args.grid_points, "Frequency grid size");
  converge_cmd->add_option("--output", converge_args.output, "Report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "ERROR InvalidArgument: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*leakage_cmd) {
      return run_leakage(leakage_args, leakage_cmd->count("--noise") > 0,
                         leakage_cmd->count("--output-power") > 0,
                         leakage_cmd->count("--grid-points") > 0, /*capacity_mode=*/false);
    }
    if (*capacity_cmd) {
      return run_leakage(capacity_args, capacity_cmd->count("--power") > 0,
                         /*output_power_given=*/false,
                         capacity_cmd->count("--grid-points") > 0, /*capacity_mode=*/true);
    }
    if (*mask_cmd) {
      return run_design_mask(mask_args, mask_cmd->count("--distortion") > 0,
                             mask_cmd->count("--output-power") > 0,
                             mask_cmd->count("--dual") > 0,
                             mask_cmd->count("--grid-points") > 0);
    }
    if (*dual_cmd) {
      return run_dual(dual_args, dual_cmd->count("--leakage-cap") > 0,
                      dual_cmd->count("--grid-points") > 0);
    }
    if (*compare_cmd) {
      return run_compare(compare_args, compare_cmd->count("--power") > 0,
                         compare_cmd->count("--noise") > 0,
                         compare_cmd->count("--grid-points") > 0);
    }
    if (*simulate_cmd) return run_simulate(simulate_args);
    if (*converge_cmd) return run_converge(converge_args, converge_cmd->count("--grid-points") > 0);
  } catch (const Error& e) {
    std::cerr << "ERROR " << leakwise::error_code_name(e.code()) << ": " << e.detail() << "\n";
    return leakwise::is_numerical_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "ERROR Internal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
