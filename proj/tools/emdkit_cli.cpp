// emdkit command-line front end.
//
//   emdkit decompose (--input x.csv | --gen NAME) [--algo A] [--post P] [--out K...] [-o DIR]
//   emdkit verify DIR [--expect-monotone-ridge]
//   emdkit generate NAME -o x.csv
//
// Exit codes: 0 ok, 1 validation or usage, 2 numerical failure, 3 I/O.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "emdkit/errors.hpp"
#include "emdkit/io/csv.hpp"
#include "emdkit/io/pipeline.hpp"
#include "emdkit/siggen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

std::uint64_t env_seed() {
  const char* s = std::getenv("EMDKIT_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw emdkit::InvalidConfigError("EMDKIT_SEED is not an unsigned integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical mode decomposition toolkit"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand("decompose", "Decompose a signal and write artifacts");
  std::string input, gen, algo = "emd", post, config_path, out_dir = ".";
  std::vector<std::string> outs;
  std::optional<std::uint64_t> seed;
  std::optional<double> sd, gen_rate, gen_duration;
  std::optional<int> max_iter, max_imfs, ensemble, trials, freq_bins, time_bins, directions;
  std::optional<double> noise_ratio;
  bool include_residue = false;
  auto* in_opt = dec->add_option("-i,--input", input, "CSV file: time column then values");
  auto* gen_opt = dec->add_option("-g,--gen", gen, "Built-in signal (lp, bp, hp, bs, ap, am, fm, "
                                                    "wgn, chirp, chirp-vd, multitone4, sweep)");
  in_opt->excludes(gen_opt);
  dec->add_option("--gen-rate", gen_rate, "Generator sample rate, Hz");
  dec->add_option("--gen-duration", gen_duration, "Generator duration, s");
  dec->add_option("-a,--algo", algo, "emd, eemd, memd, epemd or epmemd");
  dec->add_option("-p,--post", post, "Gram-Schmidt ordering: oimf, foimf, roimf, fouimf, rouimf");
  dec->add_option("--out", outs, "Artifacts: imfs report spectrum marginal significance sweep");
  dec->add_option("-o,--output-dir", out_dir, "Output directory");
  dec->add_option("-s,--seed", seed, "Seed (default: EMDKIT_SEED or 0)");
  dec->add_option("-c,--config", config_path, "JSON config; flags override it");
  dec->add_option("--sd-threshold", sd);
  dec->add_option("--max-sift-iterations", max_iter);
  dec->add_option("--max-imfs", max_imfs);
  dec->add_option("--ensemble-size", ensemble);
  dec->add_option("--noise-ratio", noise_ratio);
  dec->add_option("--directions", directions, "MEMD projection directions");
  dec->add_option("--freq-bins", freq_bins);
  dec->add_option("--time-bins", time_bins, "0 = one column per sample");
  dec->add_flag("--include-residue", include_residue, "Residue enters the Hilbert spectrum");
  dec->add_option("--trials", trials, "Monte-Carlo trials for significance bands");

  // verify
  auto* ver = app.add_subcommand("verify", "Re-check an artifact directory");
  std::string verify_dir;
  bool expect_ridge = false;
  ver->add_option("dir", verify_dir, "Artifact directory")->required();
  ver->add_flag("--expect-monotone-ridge", expect_ridge);

  // generate
  auto* genc = app.add_subcommand("generate", "Write a built-in signal as CSV");
  std::string gen_name, gen_out;
  std::optional<std::uint64_t> gen_seed;
  genc->add_option("name", gen_name)->required();
  genc->add_option("-o,--output", gen_out, "CSV path")->required();
  genc->add_option("--rate", gen_rate);
  genc->add_option("--duration", gen_duration);
  genc->add_option("-s,--seed", gen_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*dec) {
      emdkit::io::RunConfig cfg;
      std::set<std::string> from_config;
      if (!config_path.empty()) {
        from_config = emdkit::io::apply_json_config(cfg, emdkit::io::read_text(config_path));
      }
      if (!input.empty()) {
        cfg.input = input;
        cfg.generator.reset();
      }
      if (!gen.empty()) {
        cfg.generator = gen;
        cfg.input.reset();
      }
      if (gen_rate) cfg.gen_sample_rate = gen_rate;
      if (gen_duration) cfg.gen_duration = gen_duration;
      if (dec->count("--algo")) {
        auto a = emdkit::io::parse_algorithm(algo);
        if (!a) throw emdkit::InvalidConfigError("unknown algorithm '" + algo + "'");
        cfg.algorithm = *a;
      }
      if (!post.empty()) {
        auto p = emdkit::parse_variant(post);
        if (!p) throw emdkit::InvalidConfigError("unknown post ordering '" + post + "'");
        cfg.post = *p;
      }
      if (!outs.empty()) {
        cfg.outputs.clear();
        cfg.outputs.insert(outs.begin(), outs.end());
      }
      if (dec->count("--output-dir") || !from_config.count("output_dir")) cfg.output_dir = out_dir;
      if (seed) {
        cfg.seed = *seed;
      } else if (!from_config.count("seed")) {
        cfg.seed = env_seed();
      }
      if (sd) cfg.sift.sd_threshold = *sd;
      if (max_iter) cfg.sift.max_sift_iterations = *max_iter;
      if (max_imfs) cfg.sift.max_imfs = *max_imfs;
      if (ensemble) cfg.eemd.ensemble_size = *ensemble;
      if (noise_ratio) cfg.eemd.noise_stddev_ratio = *noise_ratio;
      if (directions) cfg.memd_directions = *directions;
      if (freq_bins) cfg.n_freq_bins = *freq_bins;
      if (time_bins) cfg.n_time_bins = *time_bins;
      if (include_residue) cfg.spectrum_include_residue = true;
      if (trials) cfg.significance_trials = *trials;

      const auto summary = emdkit::io::run(cfg);
      std::cout << "variant " << emdkit::to_string(summary.variant) << ", " << summary.channels
                << " channel(s), " << summary.components << " component(s) per channel\n";
      for (const auto& p : summary.written) std::cout << "wrote " << p.string() << "\n";
      return kExitOk;
    }
    if (*ver) {
      emdkit::io::VerifyOptions opt;
      opt.expect_monotone_ridge = expect_ridge;
      const auto rep = emdkit::io::verify(verify_dir, opt);
      for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "PASS " : (c.diagnostic ? "NOTE " : "FAIL ")) << c.name;
        if (c.threshold > 0) std::cout << " value=" << c.value << " threshold=" << c.threshold;
        std::cout << "\n";
      }
      std::cout << (rep.passed() ? "verify: PASS\n" : "verify: FAIL\n");
      return rep.passed() ? kExitOk : kExitValidation;
    }
    if (*genc) {
      const auto kind = emdkit::parse_signal_kind(gen_name);
      if (!kind) throw emdkit::InvalidConfigError("unknown generator '" + gen_name + "'");
      auto spec = emdkit::preset(*kind, gen_seed ? *gen_seed : env_seed());
      if (gen_rate) spec.sample_rate = *gen_rate;
      if (gen_duration) spec.duration = *gen_duration;
      const auto x = emdkit::generate(spec);
      emdkit::Vector<double> t(x.size());
      for (emdkit::Index i = 0; i < x.size(); ++i) t[i] = x.time_at(i);
      emdkit::io::write_text(gen_out, emdkit::io::to_csv(t, {gen_name}, {&x.samples()}));
      return kExitOk;
    }
  } catch (const emdkit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const emdkit::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const emdkit::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
