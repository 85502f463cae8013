#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

#include "emdkit/epemd.hpp"
#include "emdkit/gsom.hpp"
#include "emdkit/io/csv.hpp"
#include "emdkit/io/pipeline.hpp"
#include "emdkit/metrics.hpp"

namespace emdkit::io {

using json = nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ';')) out.push_back(item);
  return out;
}

CsvTable read_artifact(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("missing artifact " + path.string());
  try {
    return read_csv(path);
  } catch (const ValidationError& e) {
    throw IoError("corrupt artifact " + path.string() + ": " + e.what());
  }
}

}  // namespace

bool central_nondecreasing(const std::vector<double>& v, double fraction) {
  const auto n = v.size();
  const auto skip = static_cast<std::size_t>(std::floor(n * (1.0 - fraction) / 2.0 + 1e-9));
  for (std::size_t i = skip + 1; i + skip < n; ++i) {
    if (v[i] < v[i - 1]) return false;
  }
  return true;
}

std::vector<double> ridge_from_spectrum_csv(const std::filesystem::path& path) {
  const auto table = read_artifact(path);
  // Columns: freq (the "time" slot of the reader), time, energy.
  std::vector<double> ridge;
  const Index rows = table.time.size();
  Index i = 0;
  while (i < rows) {
    const double t = table.values(i, 0);
    double best_e = -1.0;
    double best_f = 0.0;
    for (; i < rows && table.values(i, 0) == t; ++i) {
      if (table.values(i, 1) > best_e) {
        best_e = table.values(i, 1);
        best_f = table.time[i];
      }
    }
    ridge.push_back(best_f);
  }
  return ridge;
}

VerifyReport verify(const std::filesystem::path& dir, const VerifyOptions& opt) {
  json manifest;
  try {
    manifest = json::parse(read_text(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw IoError(std::string("corrupt manifest.json: ") + e.what());
  }
  const auto signal = read_artifact(dir / "signal.csv");
  const auto imfs = read_artifact(dir / "imfs.csv");

  const std::string variant_name = comment_value(imfs, "variant");
  const auto variant = parse_variant(variant_name);
  if (!variant) throw IoError("imfs.csv: unknown variant '" + variant_name + "'");
  const std::string algorithm = comment_value(imfs, "algorithm");
  const auto names = split_list(comment_value(imfs, "channels"));
  const auto dcs = split_list(comment_value(imfs, "dc_constant"));
  std::size_t n_imf = 0;
  try {
    n_imf = std::stoul(comment_value(imfs, "imf_count"));
  } catch (const std::exception&) {
    throw IoError("imfs.csv: missing imf_count");
  }
  const auto per_channel = static_cast<Index>(n_imf + 1);
  if (names.empty() || dcs.size() != names.size() ||
      signal.column_count() != static_cast<Index>(names.size()) ||
      imfs.column_count() != per_channel * static_cast<Index>(names.size()) ||
      imfs.time.size() != signal.time.size()) {
    throw IoError("artifact shapes are inconsistent");
  }

  VerifyReport rep;
  const bool inexact = algorithm == "eemd";
  for (std::size_t ch = 0; ch < names.size(); ++ch) {
    const std::string tag = names.size() == 1 ? "" : names[ch] + ":";
    const auto x = signal.column(static_cast<Index>(ch));
    std::vector<Signal<double>> comps;
    for (Index k = 0; k < per_channel; ++k) {
      comps.push_back(imfs.column(static_cast<Index>(ch) * per_channel + k));
    }
    for (auto& c : comps) c = x.with_samples(c.samples());
    const double dc = std::stod(dcs[ch]);

    Vector<double> sum = sum_samples(comps);
    sum.array() += dc;
    const double scale = max_abs(x) > 0 ? max_abs(x) : 1.0;
    Check complete{tag + "completeness", true, inexact,
                   (x.samples() - sum).cwiseAbs().maxCoeff() / scale, opt.completeness_tolerance};
    complete.passed = complete.value <= complete.threshold;
    rep.checks.push_back(complete);

    const auto r = ortho_report(x, comps, dc);
    Check identity{tag + "pee_identity", true, false, pee_identity_check(r),
                   opt.identity_tolerance};
    identity.passed = identity.value <= identity.threshold;
    rep.checks.push_back(identity);

    if (*variant == Variant::EPEMD) {
      Check chain{tag + "chain_orthogonality", verify_linoep(comps), false, 0, kLinoepTolerance};
      rep.checks.push_back(chain);
    } else if (is_orthogonal_variant(*variant)) {
      const Index upto = *variant == Variant::OIMF ? static_cast<Index>(n_imf) : per_channel;
      double worst = 0;
      for (Index j = 0; j < upto; ++j) {
        for (Index k = j + 1; k < upto; ++k) {
          worst = std::max(worst, std::abs(r.leakage_matrix(j, k)));
        }
      }
      Check ortho{tag + "pairwise_orthogonality", true, false, worst / r.signal_energy,
                  opt.orthogonality_tolerance};
      ortho.passed = ortho.value <= ortho.threshold;
      rep.checks.push_back(ortho);
    }
  }

  if (opt.expect_monotone_ridge) {
    const auto files = manifest.value("files", json::array());
    const bool has = std::find(files.begin(), files.end(), "spectrum.csv") != files.end();
    if (!has) throw IoError("no spectrum.csv to check the ridge of");
    const auto ridge = ridge_from_spectrum_csv(dir / "spectrum.csv");
    rep.checks.push_back({"monotone_ridge", central_nondecreasing(ridge), false, 0, 0});
  }
  return rep;
}

}  // namespace emdkit::io
