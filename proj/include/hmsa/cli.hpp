#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/symmetry.hpp"

namespace hmsa {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string surface_path;
  AnalysisConfig analysis;
  std::string out_path;  // empty: standard output
  OutputFormat format = OutputFormat::json;
};

/// Throws SpecError when resolutions are below (8, 8, 4) or tol is outside (0, 1e-2].
void validate(const RunConfig& config);

struct SweepFamily {
  int n = 2;
  int m = 0;
  HarmonicPart part = HarmonicPart::re;
  double base_radius = 1.0;
};

enum class VerifySuite { identities, harmonics, independence, all };

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepFamily& family, const std::vector<double>& eps, const RunConfig& config,
              std::ostream& out, std::ostream& err);
int cmd_verify(VerifySuite suite, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Sweep table: one row per amplitude, then a "slope" footer with log-log fits.
std::string sweep_csv(const std::vector<double>& eps, const std::vector<DefectReport>& reports,
                      int moment_degree);

/// Log-log least-squares slope over points with x > 0 and y above 1e-12; NaN if fewer than two.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hmsa
