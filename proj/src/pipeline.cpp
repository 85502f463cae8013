#include "emdkit/io/pipeline.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "emdkit/decompose.hpp"
#include "emdkit/epemd.hpp"
#include "emdkit/gsom.hpp"
#include "emdkit/io/csv.hpp"
#include "emdkit/metrics.hpp"
#include "emdkit/siggen.hpp"
#include "emdkit/significance.hpp"

namespace emdkit::io {

using json = nlohmann::json;

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::EMD: return "emd";
    case Algorithm::EEMD: return "eemd";
    case Algorithm::MEMD: return "memd";
    case Algorithm::EPEMD: return "epemd";
    case Algorithm::EPMEMD: return "epmemd";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  std::string low(s);
  for (auto& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto a : {Algorithm::EMD, Algorithm::EEMD, Algorithm::MEMD, Algorithm::EPEMD,
                 Algorithm::EPMEMD}) {
    if (low == to_string(a)) return a;
  }
  return std::nullopt;
}

namespace {

bool multivariate(Algorithm a) { return a == Algorithm::MEMD || a == Algorithm::EPMEMD; }

std::vector<double> default_sweep_rates() {
  std::vector<double> r;
  for (int fs = 105; fs <= 400; fs += 5) r.push_back(fs);
  return r;
}

}  // namespace

void RunConfig::validate() const {
  if (input.has_value() == generator.has_value()) {
    throw InvalidConfigError("exactly one of an input file or a generator is required");
  }
  if (generator && !parse_signal_kind(*generator)) {
    throw InvalidConfigError("unknown generator '" + *generator + "'");
  }
  if (post && !is_orthogonal_variant(*post)) {
    throw InvalidConfigError("--post must be one of oimf, foimf, roimf, fouimf, rouimf");
  }
  for (const auto& o : outputs) {
    if (!kOutputKinds.count(o)) throw InvalidConfigError("unknown output '" + o + "'");
  }
  if (outputs.count("significance") && multivariate(algorithm)) {
    throw InvalidConfigError("significance output needs a univariate algorithm");
  }
  if (outputs.count("significance") && algorithm == Algorithm::EEMD) {
    throw InvalidConfigError("significance bands are not available for eemd");
  }
  if (outputs.count("significance") && post &&
      (*post == Variant::OIMF || *post == Variant::FOUIMF)) {
    throw InvalidConfigError("significance bands exist for emd, epemd, roimf, rouimf, foimf only");
  }
  if (n_freq_bins < 1) throw InvalidConfigError("frequency bins must be >= 1");
  if (n_time_bins < 0) throw InvalidConfigError("time bins must be >= 0");
  if (memd_directions < 1) throw InvalidConfigError("memd directions must be >= 1");
  if (significance_trials < kMinBandTrials) {
    throw InvalidConfigError("significance trials must be >= " + std::to_string(kMinBandTrials));
  }
  sift.validate();
  eemd.validate();
}

std::set<std::string> apply_json_config(RunConfig& cfg, const std::string& json_text) {
  std::set<std::string> keys;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfigError("config must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& k = it.key();
      const auto& v = it.value();
      keys.insert(k);
      if (k == "input") {
        cfg.input = v.get<std::string>();
      } else if (k == "gen") {
        cfg.generator = v.get<std::string>();
      } else if (k == "gen_sample_rate") {
        cfg.gen_sample_rate = v.get<double>();
      } else if (k == "gen_duration") {
        cfg.gen_duration = v.get<double>();
      } else if (k == "algo") {
        auto a = parse_algorithm(v.get<std::string>());
        if (!a) throw InvalidConfigError("unknown algorithm in config");
        cfg.algorithm = *a;
      } else if (k == "post") {
        auto p = parse_variant(v.get<std::string>());
        if (!p) throw InvalidConfigError("unknown post ordering in config");
        cfg.post = *p;
      } else if (k == "outputs") {
        cfg.outputs = v.get<std::set<std::string>>();
      } else if (k == "output_dir") {
        cfg.output_dir = v.get<std::string>();
      } else if (k == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (k == "sift") {
        cfg.sift.sd_threshold = v.value("sd_threshold", cfg.sift.sd_threshold);
        cfg.sift.max_sift_iterations = v.value("max_sift_iterations", cfg.sift.max_sift_iterations);
        cfg.sift.max_imfs = v.value("max_imfs", cfg.sift.max_imfs);
      } else if (k == "eemd") {
        cfg.eemd.noise_stddev_ratio = v.value("noise_stddev_ratio", cfg.eemd.noise_stddev_ratio);
        cfg.eemd.ensemble_size = v.value("ensemble_size", cfg.eemd.ensemble_size);
      } else if (k == "memd") {
        cfg.memd_directions = v.value("directions", cfg.memd_directions);
      } else if (k == "spectrum") {
        cfg.n_freq_bins = v.value("freq_bins", cfg.n_freq_bins);
        cfg.n_time_bins = v.value("time_bins", cfg.n_time_bins);
        cfg.spectrum_include_residue = v.value("include_residue", cfg.spectrum_include_residue);
      } else if (k == "significance") {
        cfg.significance_trials = v.value("trials", cfg.significance_trials);
      } else if (k == "sweep") {
        cfg.sweep_rates = v.value("rates", cfg.sweep_rates);
      } else {
        throw InvalidConfigError("unknown config key '" + k + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidConfigError(std::string("bad config value: ") + e.what());
  }
  return keys;
}

namespace {

struct Channel {
  std::string name;
  Signal<double> x;
  std::optional<Decomposition<double>> d;
};

struct Artifact {
  std::string file;
  std::string text;
};

std::vector<Channel> load(const RunConfig& cfg) {
  std::vector<Channel> out;
  if (cfg.input) {
    const auto table = read_csv(*cfg.input);
    for (Index j = 0; j < table.column_count(); ++j) {
      out.push_back({table.column_name(j), table.column(j), std::nullopt});
    }
    return out;
  }
  const auto kind = *parse_signal_kind(*cfg.generator);
  SignalSpec spec = preset(kind, cfg.seed);
  if (cfg.gen_sample_rate) spec.sample_rate = *cfg.gen_sample_rate;
  if (cfg.gen_duration) spec.duration = *cfg.gen_duration;
  if (kind == SignalKind::MULTITONE4 && multivariate(cfg.algorithm)) {
    const auto mx = generate_multichannel(spec);
    for (Index j = 0; j < mx.channel_count(); ++j) {
      out.push_back({"ch" + std::to_string(j + 1), mx.channel(j), std::nullopt});
    }
    return out;
  }
  out.push_back({std::string(to_string(kind)), generate(spec), std::nullopt});
  return out;
}

void decompose_all(const RunConfig& cfg, std::vector<Channel>& chans) {
  if (multivariate(cfg.algorithm)) {
    if (chans.size() < 2) {
      throw InvalidConfigError(std::string(to_string(cfg.algorithm)) +
                               " needs at least 2 channels");
    }
    std::vector<Signal<double>> sigs;
    for (const auto& c : chans) sigs.push_back(c.x);
    const auto mx = MultivariateSignal<double>::from_channels(sigs);
    const auto md = cfg.algorithm == Algorithm::MEMD ? memd(mx, cfg.memd_directions, cfg.sift)
                                                     : epmemd(mx, cfg.memd_directions, cfg.sift);
    for (std::size_t j = 0; j < chans.size(); ++j) {
      chans[j].d = md.channel(static_cast<Index>(j));
    }
  } else {
    if (chans.size() != 1) {
      throw InvalidConfigError(std::string(to_string(cfg.algorithm)) +
                               " takes exactly one value column; use memd for multichannel input");
    }
    EemdConfig ecfg = cfg.eemd;
    ecfg.rng_seed = cfg.seed;
    const Variant base = cfg.algorithm == Algorithm::EEMD    ? Variant::EEMD
                         : cfg.algorithm == Algorithm::EPEMD ? Variant::EPEMD
                                                             : Variant::EMD;
    chans[0].d = decompose(chans[0].x, base, cfg.sift, ecfg);
  }
  if (cfg.post) {
    for (auto& c : chans) c.d = orthogonal_variants(*c.d, *cfg.post);
  }
}

std::string file_for(const std::string& stem, const std::vector<Channel>& chans, const Channel& c) {
  return chans.size() == 1 ? stem + ".csv" : stem + "_" + c.name + ".csv";
}

json matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string dump(const json& j) {
  // nlohmann prints doubles round-trip exact (17 significant digits at most).
  return j.dump(2) + "\n";
}

}  // namespace

RunSummary run(const RunConfig& cfg) {
  cfg.validate();
  auto chans = load(cfg);
  decompose_all(cfg, chans);

  const auto& first = *chans.front().d;
  const Variant variant = first.variant;
  const std::string vname(emdkit::to_string(variant));
  const std::size_t n_imf = first.imf_count();
  const Signal<double>& grid = chans.front().x;
  Vector<double> time(grid.size());
  for (Index i = 0; i < grid.size(); ++i) time[i] = grid.time_at(i);

  std::vector<Artifact> artifacts;

  {  // signal.csv
    std::vector<std::string> names;
    std::vector<const Vector<double>*> cols;
    for (const auto& c : chans) {
      names.push_back(c.name);
      cols.push_back(&c.x.samples());
    }
    artifacts.push_back({"signal.csv", to_csv(time, names, cols)});
  }

  {  // imfs.csv
    std::vector<std::string> names;
    std::vector<const Vector<double>*> cols;
    std::string channel_list;
    std::string dc_list;
    for (const auto& c : chans) {
      const std::string prefix = chans.size() == 1 ? vname + "_" : c.name + "_" + vname + "_";
      for (std::size_t k = 0; k < c.d->imfs.size(); ++k) {
        names.push_back(prefix + "imf" + std::to_string(k + 1));
        cols.push_back(&c.d->imfs[k].samples());
      }
      names.push_back(prefix + "residue");
      cols.push_back(&c.d->residue.samples());
      channel_list += (channel_list.empty() ? "" : ";") + c.name;
      dc_list += (dc_list.empty() ? "" : ";") + format_double(c.d->dc_constant);
    }
    std::vector<std::string> comments = {
        "variant=" + vname,
        "algorithm=" + std::string(to_string(cfg.algorithm)),
        "channels=" + channel_list,
        "imf_count=" + std::to_string(n_imf),
        "dc_constant=" + dc_list,
    };
    artifacts.push_back({"imfs.csv", to_csv(time, names, cols, comments)});
  }

  if (cfg.outputs.count("report")) {
    json rep;
    rep["schema_version"] = kReportSchemaVersion;
    rep["algorithm"] = to_string(cfg.algorithm);
    rep["variant"] = vname;
    rep["channels"] = json::array();
    for (const auto& c : chans) {
      const auto r = ortho_report(c.x, *c.d);
      json jc;
      jc["name"] = c.name;
      jc["signal_energy"] = r.signal_energy;
      json energies = json::array();
      for (Index k = 0; k < r.component_energies.size(); ++k) {
        std::string label = k < static_cast<Index>(c.d->imf_count())
                                ? vname + "_imf" + std::to_string(k + 1)
                            : k == static_cast<Index>(c.d->imf_count()) ? std::string("residue")
                                                                         : std::string("dc");
        energies.push_back({{"component", label}, {"energy", r.component_energies[k]}});
      }
      jc["component_energies"] = energies;
      jc["total_component_energy"] = r.total_component_energy;
      jc["pee"] = r.pee;
      jc["io_total"] = r.io_total;
      jc["pee_reconstructed"] = r.pee_reconstructed;
      jc["io_total_reconstructed"] = r.io_total_reconstructed;
      jc["pee_identity_residual"] = pee_identity_check(r);
      jc["io_pairs"] = matrix_json(r.io_pairs);
      jc["leakage_matrix"] = matrix_json(r.leakage_matrix);
      jc["dc_constant"] = c.d->dc_constant;
      jc["reconstruction_error"] = r.reconstruction_error;
      rep["channels"].push_back(jc);
    }
    artifacts.push_back({"report.json", dump(rep)});
  }

  if (cfg.outputs.count("spectrum") || cfg.outputs.count("marginal")) {
    if (n_imf == 0) throw InsufficientDataError("spectrum needs at least one IMF");
    SpectrumOptions opt;
    opt.n_freq_bins = cfg.n_freq_bins;
    opt.n_time_bins = cfg.n_time_bins;
    opt.include_residue = cfg.spectrum_include_residue;
    for (const auto& c : chans) {
      const auto h = hilbert_spectrum(*c.d, opt);
      if (cfg.outputs.count("spectrum")) {
        std::string s = "# clipped_negative=" + std::to_string(h.clipped_negative) +
                        "\n# clipped_above=" + std::to_string(h.clipped_above) +
                        "\nfreq,time,energy\n";
        for (Index t = 0; t < h.energy.cols(); ++t) {
          for (Index f = 0; f < h.energy.rows(); ++f) {
            s += format_double(h.freq_bins[f]) + "," + format_double(h.time_bins[t]) + "," +
                 format_double(h.energy(f, t)) + "\n";
          }
        }
        artifacts.push_back({file_for("spectrum", chans, c), std::move(s)});
      }
      if (cfg.outputs.count("marginal")) {
        std::string s = "freq,energy\n";
        for (Index f = 0; f < h.marginal.size(); ++f) {
          s += format_double(h.freq_bins[f]) + "," + format_double(h.marginal[f]) + "\n";
        }
        artifacts.push_back({file_for("marginal", chans, c), std::move(s)});
      }
    }
  }

  if (cfg.outputs.count("significance")) {
    const auto& c = chans.front();
    const auto band = white_noise_band(c.x.size(), variant, cfg.significance_trials, cfg.seed,
                                       c.x.sample_rate(), cfg.sift);
    const auto pts = significance_test(*c.d, band);
    std::string s = "component,mean_period,energy_density,inside\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string label =
          k < c.d->imf_count() ? vname + "_imf" + std::to_string(k + 1) : std::string("residue");
      s += label + "," + (pts[k].applicable ? format_double(pts[k].mean_period) : "nan") + "," +
           format_double(pts[k].energy_density) + "," +
           (pts[k].applicable ? (pts[k].inside_bounds ? "true" : "false") : "n/a") + "\n";
    }
    artifacts.push_back({"significance.csv", std::move(s)});
  }

  if (cfg.outputs.count("sweep")) {
    const auto rows =
        sweep_io_t(cfg.sweep_rates.empty() ? default_sweep_rates() : cfg.sweep_rates, cfg.sift);
    std::string s = "fs,io_t_emd,io_t_epemd\n";
    for (const auto& r : rows) {
      s += format_double(r.fs) + "," + format_double(r.io_t_emd) + "," +
           format_double(r.io_t_epemd) + "\n";
    }
    artifacts.push_back({"sweep.csv", std::move(s)});
  }

  json manifest;
  manifest["schema_version"] = kReportSchemaVersion;
  manifest["algorithm"] = to_string(cfg.algorithm);
  manifest["variant"] = vname;
  manifest["post"] = cfg.post ? json(std::string(emdkit::to_string(*cfg.post))) : json(nullptr);
  manifest["seed"] = cfg.seed;
  manifest["sample_rate"] = grid.sample_rate();
  manifest["length"] = grid.size();
  manifest["imf_count"] = n_imf;
  manifest["channels"] = json::array();
  for (const auto& c : chans) manifest["channels"].push_back(c.name);
  manifest["source"] = cfg.input ? json{{"input", cfg.input->string()}}
                                 : json{{"generator", *cfg.generator}};
  manifest["sift"] = {{"sd_threshold", cfg.sift.sd_threshold},
                      {"max_sift_iterations", cfg.sift.max_sift_iterations},
                      {"max_imfs", cfg.sift.max_imfs}};
  json files = json::array();
  for (const auto& a : artifacts) files.push_back(a.file);
  files.push_back("manifest.json");
  manifest["files"] = files;
  artifacts.push_back({"manifest.json", dump(manifest)});

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  RunSummary summary;
  for (const auto& a : artifacts) {
    const auto path = cfg.output_dir / a.file;
    write_text(path, a.text);
    summary.written.push_back(path);
  }
  summary.variant = variant;
  summary.channels = chans.size();
  summary.components = n_imf + 1;
  return summary;
}

}  // namespace emdkit::io
