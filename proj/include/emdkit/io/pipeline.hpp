#ifndef EMDKIT_IO_PIPELINE_HPP
#define EMDKIT_IO_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emdkit/emd.hpp"
#include "emdkit/hsa.hpp"
#include "emdkit/memd.hpp"

namespace emdkit::io {

inline constexpr int kReportSchemaVersion = 1;

enum class Algorithm { EMD, EEMD, MEMD, EPEMD, EPMEMD };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

inline const std::set<std::string> kOutputKinds = {"imfs",     "report",       "spectrum",
                                                   "marginal", "significance", "sweep"};

struct RunConfig {
  std::optional<std::filesystem::path> input;  // CSV
  std::optional<std::string> generator;        // siggen kind name
  std::optional<double> gen_sample_rate;
  std::optional<double> gen_duration;

  Algorithm algorithm = Algorithm::EMD;
  std::optional<Variant> post;  // Gram-Schmidt ordering
  SiftConfig sift;
  EemdConfig eemd;
  Index memd_directions = kDefaultDirections;

  std::set<std::string> outputs = {"imfs"};
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 0;

  Index n_freq_bins = 256;
  Index n_time_bins = 100;
  bool spectrum_include_residue = false;
  int significance_trials = 100;
  std::vector<double> sweep_rates;  // empty = 105..400 step 5

  /// Throws InvalidConfigError on conflicting or missing settings.
  void validate() const;
};

/// Applies the keys of a JSON config object on top of `cfg`; returns the keys seen.
std::set<std::string> apply_json_config(RunConfig& cfg, const std::string& json_text);

struct RunSummary {
  std::vector<std::filesystem::path> written;
  Variant variant = Variant::EMD;
  std::size_t channels = 0;
  std::size_t components = 0;  // per channel, residue included
};

/**
 * Executes the pipeline. Everything is computed before the first file is
 * written, so a failing run leaves no partial outputs. signal.csv, imfs.csv
 * and manifest.json are always written; the rest follow `outputs`.
 */
RunSummary run(const RunConfig& cfg);

struct Check {
  std::string name;
  bool passed = true;
  bool diagnostic = false;  // reported but never fails the verification
  double value = 0;
  double threshold = 0;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed && !c.diagnostic) return false;
    }
    return true;
  }
};

struct VerifyOptions {
  double completeness_tolerance = 1e-9;
  double identity_tolerance = 1e-9;
  double orthogonality_tolerance = 1e-9;
  bool expect_monotone_ridge = false;
};

/// Re-checks an artifact directory from its files alone.
VerifyReport verify(const std::filesystem::path& dir, const VerifyOptions& opt = {});

/// Column index of the ridge (strongest frequency) per time bin from spectrum.csv.
std::vector<double> ridge_from_spectrum_csv(const std::filesystem::path& path);

/// Whether v is nondecreasing over its central `fraction` of entries.
bool central_nondecreasing(const std::vector<double>& v, double fraction = 0.8);

}  // namespace emdkit::io

#endif  // EMDKIT_IO_PIPELINE_HPP
