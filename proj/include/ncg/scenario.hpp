#pragma once

// Config-driven end-to-end runs: build, verify, project, twist, diagonalize.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ncg/io.hpp"

namespace ncg {

/// Replaces the Dirac symbol of one direction by a sum of gamma matrices (negative controls).
struct SymbolOverride {
  int slot = 0;              // 1-based direction
  std::vector<int> gammas;   // 1-based gamma indices
};

struct ScenarioConfig {
  std::string id;
  ThetaMatrix theta;
  int n = 0;
  int m = 0;
  int lambda = 4;
  int gamma_sign = 1;
  /// 0 picks the irreducible module or its double as needed.
  int multiplicity = 0;
  /// "canonical", "constant:[c...]" or a family object.
  Json connection = "canonical";
  double tolerance = 1e-12;
  std::uint64_t seed = 7;
  /// Defaults to "all coefficients b vanish", the exact compatibility criterion for Z' = Z.
  std::optional<bool> expect_compatible;
  /// Sectors |q|_inf <= sector_radius enter the sector-equivalence check.
  int sector_radius = 1;
  int principality_radius = 1;
  bool spectra = true;
  std::optional<SymbolOverride> symbol_override;
  std::filesystem::path out_dir;
};

inline const std::vector<std::string> kStages = {"principality", "triple", "calculus", "projectability",
                                                 "fibres", "base", "connection", "twist",
                                                 "compatibility", "sectors", "reprojection"};

/// Throws std::invalid_argument on a malformed config. Relative out_dir is kept as given.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

ConnectionFamily build_family(const ScenarioConfig& config, const ThetaPtr& theta);

struct StageReport {
  std::string stage;
  VerificationReport report;
};

struct RunReport {
  std::string id;
  std::uint64_t seed = 0;
  std::vector<StageReport> stages;
  std::optional<double> compatibility_deviation;
  std::optional<bool> compatible;
  std::vector<std::string> spectra_files;

  bool passed() const;
  Json to_json() const;
};

/// `only` restricts the run to the named stages (their prerequisites are built but not reported).
/// Spectra are written to config.out_dir when enabled and `only` is empty.
RunReport run_scenario(const ScenarioConfig& config, const std::vector<std::string>& only = {});

/// Report of the base-triple table sweep, one block per (j, n).
struct SweepReport {
  std::vector<KRSweepEntry> entries;
  bool passed() const;
  Json to_json() const;
};
SweepReport run_kr_sweep(int max_dim, int cutoff, std::uint64_t seed, double tolerance);

}  // namespace ncg
