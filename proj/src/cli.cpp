#include "hmsa/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "hmsa/errors.hpp"
#include "hmsa/report_io.hpp"
#include "hmsa/verify.hpp"

namespace hmsa {
namespace {

constexpr double kSlopeFloor = 1e-12;

nlohmann::json read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open surface spec \"" + path + "\"");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("surface spec is not valid JSON: ") + e.what());
  }
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) throw SpecError("cannot write \"" + config.out_path + "\"");
  file << text;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

void validate(const RunConfig& config) {
  const GridResolution& r = config.analysis.resolution;
  if (r.n_theta < 8 || r.n_phi < 8 || r.n_rho < 4) {
    throw SpecError("resolution must be at least ntheta=8, nphi=8, nrho=4");
  }
  if (!(config.analysis.tol > 0.0 && config.analysis.tol <= 1e-2)) {
    throw SpecError("tol must lie in (0, 1e-2]");
  }
  if (config.analysis.moment_degree < 1) throw SpecError("nmax must be at least 1");
  if (config.analysis.basis_degree < 0) throw SpecError("nbasis must be non-negative");
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const nlohmann::json spec = read_spec(config.surface_path);
    const StarSurface surface = surface_from_json(spec);
    const DefectReport report = defect_report(surface, config.analysis);
    if (config.format == OutputFormat::json) {
      emit(config, dump_json(report_to_json(report, spec)), out);
    } else {
      std::vector<std::string> values;
      for (const double v : csv_values(report)) values.push_back(format_number(v));
      emit(config, csv_line(csv_columns(config.analysis.moment_degree)) + csv_line(values), out);
    }
    return int{kExitOk};
  });
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > kSlopeFloor && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double count = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::string sweep_csv(const std::vector<double>& eps, const std::vector<DefectReport>& reports,
                      int moment_degree) {
  std::vector<std::string> header = {"eps"};
  const std::vector<std::string> cols = csv_columns(moment_degree);
  header.insert(header.end(), cols.begin(), cols.end());
  std::string text = csv_line(header);

  std::vector<std::vector<double>> table;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    table.push_back(csv_values(reports[i]));
    std::vector<std::string> row = {format_number(eps[i])};
    for (const double v : table.back()) row.push_back(format_number(v));
    text += csv_line(row);
  }

  std::vector<std::string> footer = {"slope"};
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] == "mean_radius" || cols[c] == "is_sphere") {
      footer.emplace_back();
      continue;
    }
    std::vector<double> column;
    for (const auto& row : table) column.push_back(row[c]);
    const double slope = loglog_slope(eps, column);
    footer.push_back(std::isfinite(slope) ? format_number(slope) : "nan");
  }
  return text + csv_line(footer);
}

int cmd_sweep(const SweepFamily& family, const std::vector<double>& eps, const RunConfig& config,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    if (eps.empty()) throw SpecError("sweep needs at least one amplitude");
    std::vector<DefectReport> reports;
    for (const double e : eps) {
      const StarSurface surface = StarSurface::perturbed_sphere(
          family.base_radius, {PerturbationMode{family.n, family.m, e, family.part}});
      reports.push_back(defect_report(surface, config.analysis));
    }
    emit(config, sweep_csv(eps, reports, config.analysis.moment_degree), out);
    return int{kExitOk};
  });
}

int cmd_verify(VerifySuite suite, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    std::vector<CheckResult> checks;
    auto append = [&](std::vector<CheckResult> more) {
      checks.insert(checks.end(), more.begin(), more.end());
    };
    if (suite == VerifySuite::harmonics || suite == VerifySuite::all) append(verify_harmonics());
    if (suite == VerifySuite::identities || suite == VerifySuite::all) {
      append(verify_identities(config.analysis.resolution, config.analysis.basis_degree));
    }
    if (suite == VerifySuite::independence || suite == VerifySuite::all) append(verify_independence());

    int failures = 0;
    for (const CheckResult& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << format_number(c.value)
          << " bound=" << format_number(c.bound) << '\n';
      if (!c.passed) ++failures;
    }
    out << failures << " of " << checks.size() << " checks failed\n";
    return failures == 0 ? int{kExitOk} : int{kExitVerificationFailed};
  });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-defect analysis of star-shaped surfaces"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--ntheta", config.analysis.resolution.n_theta, "Gauss-Legendre nodes in cos(theta)");
    cmd->add_option("--nphi", config.analysis.resolution.n_phi, "uniform nodes in phi");
    cmd->add_option("--nrho", config.analysis.resolution.n_rho, "radial Gauss-Legendre nodes");
    cmd->add_option("--nmax", config.analysis.moment_degree, "maximum moment degree");
    cmd->add_option("--nbasis", config.analysis.basis_degree, "torsion basis degree");
    cmd->add_option("--tol", config.analysis.tol, "sphere-decision tolerance");
    cmd->add_option("--out", config.out_path, "output file (default: stdout)");
    cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "defect report for one surface");
  analyze->add_option("--surface", config.surface_path, "surface-spec JSON")->required();
  add_common(analyze);

  CLI::App* sweep = app.add_subcommand("sweep", "defects along a perturbation family");
  std::string family_text = "2,0,re";
  std::string eps_text;
  SweepFamily family;
  sweep->add_option("--family", family_text, "n,m,part of the perturbing harmonic");
  sweep->add_option("--eps", eps_text, "comma-separated amplitudes");
  sweep->add_option("--base-radius", family.base_radius, "radius of the unperturbed sphere");
  add_common(sweep);

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite_name = "all";
  verify->add_option("suite", suite_name, "identities | harmonics | independence | all")
      ->check(CLI::IsMember({"identities", "harmonics", "independence", "all"}));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitUsage;
  }
  config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

  if (analyze->parsed()) return cmd_analyze(config, out, err);
  if (sweep->parsed()) {
    std::stringstream ss(family_text);
    std::string n, m, part;
    if (!std::getline(ss, n, ',') || !std::getline(ss, m, ',') || !std::getline(ss, part)) {
      err << "--family must look like n,m,re\n";
      return kExitUsage;
    }
    try {
      family.n = std::stoi(n);
      family.m = std::stoi(m);
    } catch (const std::exception&) {
      err << "--family degree and order must be integers\n";
      return kExitUsage;
    }
    if (part != "re" && part != "im") {
      err << "--family part must be re or im\n";
      return kExitUsage;
    }
    family.part = part == "re" ? HarmonicPart::re : HarmonicPart::im;
    std::vector<double> eps;
    std::stringstream list(eps_text);
    for (std::string token; std::getline(list, token, ',');) {
      std::size_t used = 0;
      try {
        eps.push_back(std::stod(token, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != token.size()) {
        err << "--eps entry \"" << token << "\" is not a number\n";
        return kExitUsage;
      }
    }
    return cmd_sweep(family, eps, config, out, err);
  }
  const VerifySuite suite = suite_name == "identities"     ? VerifySuite::identities
                            : suite_name == "harmonics"    ? VerifySuite::harmonics
                            : suite_name == "independence" ? VerifySuite::independence
                                                           : VerifySuite::all;
  return cmd_verify(suite, config, out, err);
}

}  // namespace hmsa
