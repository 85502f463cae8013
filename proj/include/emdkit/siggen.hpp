#ifndef EMDKIT_SIGGEN_HPP
#define EMDKIT_SIGGEN_HPP

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/emd.hpp"
#include "emdkit/epemd.hpp"
#include "emdkit/memd.hpp"
#include "emdkit/metrics.hpp"

namespace emdkit {

enum class SignalKind {
  LP,
  BP,
  HP,
  BS,
  AP,
  AM,
  FM,
  WGN,
  CHIRP,       // 0.1 -> 50 Hz, amplitude A1
  CHIRP_VD,    // 100 -> 200 Hz over 0.3 s at 10 kHz, zero padded
  MULTITONE4,  // 4, 8, 16, 32 Hz tones plus noise (one channel)
  SWEEP,       // sum_{f=1..50} A1 sin(2 pi f t)
};

inline std::string_view to_string(SignalKind k);
inline std::optional<SignalKind> parse_signal_kind(std::string_view s);

struct SignalSpec {
  SignalKind kind = SignalKind::LP;
  double a1 = 100.0;
  double a2 = 1.0;
  double sample_rate = 150.0;
  double duration = 10.0;
  std::uint64_t seed = 0;
  double noise_stddev = 0.1;  // MULTITONE4 only
  int channel = 0;            // MULTITONE4 noise stream

  void validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
      throw InvalidConfigError("sample_rate must be positive");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
      throw InvalidConfigError("duration must be positive");
    }
    if (!(noise_stddev >= 0.0)) throw InvalidConfigError("noise_stddev must be >= 0");
  }

  /// Sample count, round(duration * sample_rate).
  Index length() const {
    return static_cast<Index>(std::llround(duration * sample_rate));
  }
};

/// Parameters of the zero-padded 100-200 Hz chirp.
inline constexpr double kChirpVdRate = 10000.0;
inline constexpr double kChirpVdDuration = 0.3;
inline constexpr double kChirpVdLow = 100.0;
inline constexpr double kChirpVdHigh = 200.0;
inline constexpr Index kChirpVdPadding = 50;

/// Tone frequencies of the 4-variate record.
inline constexpr std::array<double, 4> kMultitoneFrequencies = {4.0, 8.0, 16.0, 32.0};

/// Spec presets matching the experiments; `kind` alone selects the grid.
inline SignalSpec preset(SignalKind kind, std::uint64_t seed = 0);

namespace detail {

inline Vector<double> standard_normal(Index n, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x53494747u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector<double> v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace detail

inline SignalSpec preset(SignalKind kind, std::uint64_t seed) {
  SignalSpec s;
  s.kind = kind;
  s.seed = seed;
  switch (kind) {
    case SignalKind::CHIRP_VD:
      s.sample_rate = kChirpVdRate;
      s.duration = kChirpVdDuration;
      s.a1 = 1.0;
      break;
    case SignalKind::MULTITONE4:
      s.sample_rate = 256.0;
      s.duration = 4.0;
      break;
    default:
      break;
  }
  return s;
}

/**
 * Realizes a spec on the grid t_i = i / sample_rate, i < round(duration * rate).
 * CHIRP_VD additionally carries kChirpVdPadding zeros at both ends.
 */
inline Signal<double> generate(const SignalSpec& spec) {
  spec.validate();
  const Index n = spec.length();
  if (n < 2) throw InsufficientDataError("spec yields fewer than 2 samples");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double fs = spec.sample_rate;
  const double a1 = spec.a1;
  const double a2 = spec.a2;
  auto sine = [&](double f, double t) { return std::sin(two_pi * f * t); };

  Vector<double> x(n);
  if (spec.kind == SignalKind::WGN) {
    x = detail::standard_normal(n, spec.seed, 0);
    return Signal<double>(std::move(x), fs);
  }
  Vector<double> noise;
  if (spec.kind == SignalKind::MULTITONE4 && spec.noise_stddev > 0.0) {
    noise = spec.noise_stddev *
            detail::standard_normal(n, spec.seed, 1 + static_cast<std::uint64_t>(spec.channel));
  }

  for (Index k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fs;
    double v = 0.0;
    switch (spec.kind) {
      case SignalKind::LP:
        for (int i = 1; i <= 20; ++i) v += a2 * sine(50 - i, t) + a1 * sine(1 + i, t);
        break;
      case SignalKind::BP:
        for (int i = 1; i <= 20; ++i) {
          v += a2 * sine(50 - i, t) + a1 * sine(15 + i, t) + a2 * sine(1 + i, t);
        }
        break;
      case SignalKind::HP:
        for (int i = 1; i <= 20; ++i) v += a1 * sine(50 - i, t) + a2 * sine(1 + i, t);
        break;
      case SignalKind::BS:
        for (int i = 1; i <= 20; ++i) {
          v += a1 * sine(50 - i, t) + a2 * sine(15 + i, t) + a1 * sine(0 + i, t);
        }
        break;
      case SignalKind::AP:
      case SignalKind::SWEEP:
        for (int i = 1; i <= 50; ++i) v += a1 * sine(i, t);
        break;
      case SignalKind::AM:
        v = (1.0 + a2 * sine(3, t)) * (a1 * sine(20, t));
        break;
      case SignalKind::FM:
        // Phase as written: the bracket multiplies t.
        v = a1 * std::sin((two_pi * 10.0 + 5.0 * sine(3, t)) * t);
        break;
      case SignalKind::CHIRP: {
        const double f0 = 0.1;
        const double f1 = 50.0;
        v = a1 * std::sin(two_pi * (f0 * t + 0.5 * (f1 - f0) / spec.duration * t * t));
        break;
      }
      case SignalKind::CHIRP_VD: {
        const double rate = (kChirpVdHigh - kChirpVdLow) / spec.duration;
        v = a1 * std::sin(two_pi * (kChirpVdLow * t + 0.5 * rate * t * t));
        break;
      }
      case SignalKind::MULTITONE4:
        for (double f : kMultitoneFrequencies) v += sine(f, t);
        if (noise.size() == n) v += noise[k];
        break;
      case SignalKind::WGN:
        break;
    }
    x[k] = v;
  }

  if (spec.kind == SignalKind::CHIRP_VD) {
    Vector<double> padded = Vector<double>::Zero(n + 2 * kChirpVdPadding);
    padded.segment(kChirpVdPadding, n) = x;
    return Signal<double>(std::move(padded), fs);
  }
  return Signal<double>(std::move(x), fs);
}

/// The 4-variate record, channel j drawing its own noise stream.
inline MultivariateSignal<double> generate_multichannel(const SignalSpec& base, int channels = 4) {
  if (channels < 2) throw InvalidConfigError("multichannel generation needs >= 2 channels");
  std::vector<Signal<double>> chans;
  for (int j = 0; j < channels; ++j) {
    SignalSpec s = base;
    s.channel = j;
    chans.push_back(generate(s));
  }
  return MultivariateSignal<double>::from_channels(chans);
}

struct SweepRow {
  double fs;
  double io_t_emd;
  double io_t_epemd;
};

/// Length of each sweep record, seconds.
inline constexpr double kSweepDuration = 10.0;

/// IO_T of EMD and EPEMD on the 1..50 Hz tone sum for each sampling rate.
inline std::vector<SweepRow> sweep_io_t(const std::vector<double>& fs_list, const SiftConfig& cfg = {}) {
  for (double fs : fs_list) {
    if (!(fs > 100.0)) {
      throw AliasingError("sampling rate " + std::to_string(fs) +
                          " Hz does not exceed twice the 50 Hz content");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(fs_list.size());
  for (double fs : fs_list) {
    SignalSpec s;
    s.kind = SignalKind::SWEEP;
    s.sample_rate = fs;
    s.duration = kSweepDuration;
    const auto x = generate(s);
    const double io_emd = ortho_report(x, emd(x, cfg)).io_total;
    const double io_ep = ortho_report(x, epemd(x, cfg)).io_total;
    rows.push_back({fs, io_emd, io_ep});
  }
  return rows;
}

inline std::string_view to_string(SignalKind k) {
  switch (k) {
    case SignalKind::LP: return "lp";
    case SignalKind::BP: return "bp";
    case SignalKind::HP: return "hp";
    case SignalKind::BS: return "bs";
    case SignalKind::AP: return "ap";
    case SignalKind::AM: return "am";
    case SignalKind::FM: return "fm";
    case SignalKind::WGN: return "wgn";
    case SignalKind::CHIRP: return "chirp";
    case SignalKind::CHIRP_VD: return "chirp-vd";
    case SignalKind::MULTITONE4: return "multitone4";
    case SignalKind::SWEEP: return "sweep";
  }
  return "?";
}

inline std::optional<SignalKind> parse_signal_kind(std::string_view s) {
  std::string low(s);
  for (auto& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto k : {SignalKind::LP, SignalKind::BP, SignalKind::HP, SignalKind::BS, SignalKind::AP,
                 SignalKind::AM, SignalKind::FM, SignalKind::WGN, SignalKind::CHIRP,
                 SignalKind::CHIRP_VD, SignalKind::MULTITONE4, SignalKind::SWEEP}) {
    if (low == to_string(k)) return k;
  }
  if (low == "chirp_vd") return SignalKind::CHIRP_VD;
  return std::nullopt;
}

}  // namespace emdkit

#endif  // EMDKIT_SIGGEN_HPP
