// Independent reference implementations used to check the library.
// Nothing here calls into emdkit's numerics.
#ifndef EMDKIT_TESTS_ORACLES_HPP
#define EMDKIT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

/// Long-double summation of a.b * dt.
inline double inner(const Vec& a, const Vec& b, double dt) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s * dt);
}

/// Dense Gaussian elimination with partial pivoting.
inline Vec solve(Mat a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    if (a[c][c] == 0.0) throw std::runtime_error("singular");
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Natural cubic spline through (t, v) evaluated at q, second derivatives from a dense solve.
inline Vec natural_spline(const Vec& t, const Vec& v, const Vec& q) {
  const std::size_t n = t.size();
  if (n == 2) {
    Vec out;
    for (double x : q) out.push_back(v[0] + (v[1] - v[0]) * (x - t[0]) / (t[1] - t[0]));
    return out;
  }
  Mat a(n, Vec(n, 0.0));
  Vec rhs(n, 0.0);
  a[0][0] = 1.0;
  a[n - 1][n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    a[i][i - 1] = h0 / 6.0;
    a[i][i] = (h0 + h1) / 3.0;
    a[i][i + 1] = h1 / 6.0;
    rhs[i] = (v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0;
  }
  const Vec m = solve(a, rhs);
  Vec out;
  for (double x : q) {
    std::size_t k = 0;
    while (k + 2 < n && x > t[k + 1]) ++k;
    const double h = t[k + 1] - t[k];
    const double A = (t[k + 1] - x) / h;
    const double B = (x - t[k]) / h;
    out.push_back(A * v[k] + B * v[k + 1] +
                  ((A * A * A - A) * m[k] + (B * B * B - B) * m[k + 1]) * h * h / 6.0);
  }
  return out;
}

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

/// Brute-force scan: strict extrema with plateaus collapsed to their centre,
/// runs touching either end excluded.
inline Extrema extrema(const Vec& x) {
  Extrema e;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;
    const bool up = x[i - 1] < x[i] && x[j + 1] < x[i];
    const bool down = x[i - 1] > x[i] && x[j + 1] > x[i];
    const std::size_t centre = (i + j) / 2;
    if (up) e.maxima.push_back(centre);
    if (down) e.minima.push_back(centre);
    i = j + 1;
  }
  return e;
}

/// Index of the strongest non-DC bin of a naive DFT, returned in Hz.
inline double dft_peak(const Vec& x, double fs) {
  const std::size_t n = x.size();
  double best = -1;
  std::size_t arg = 1;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * double(k) * double(i) / double(n));
    }
    if (std::abs(s) > best) {
      best = std::abs(s);
      arg = k;
    }
  }
  return double(arg) * fs / double(n);
}

/// Magnitude of the DFT at integer bin k.
inline double dft_magnitude(const Vec& x, std::size_t k) {
  std::complex<double> s = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * double(k) * double(i) / double(n));
  }
  return std::abs(s);
}

/// Householder QR of the column matrix cols (each inner vector a column).
/// Returns q_k * r_kk, the classical Gram-Schmidt basis vector k up to sign.
inline Mat householder_basis(const Mat& cols) {
  const std::size_t m = cols.front().size();
  const std::size_t n = cols.size();
  Mat a = cols;  // column-major working copy
  std::vector<Vec> vs;
  Vec rdiag(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double norm = 0;
    for (std::size_t i = k; i < m; ++i) norm += static_cast<long double>(a[k][i]) * a[k][i];
    const double alpha = (a[k][k] > 0 ? -1.0 : 1.0) * std::sqrt(static_cast<double>(norm));
    Vec v(m, 0.0);
    for (std::size_t i = k; i < m; ++i) v[i] = a[k][i];
    v[k] -= alpha;
    long double vn = 0;
    for (std::size_t i = k; i < m; ++i) vn += static_cast<long double>(v[i]) * v[i];
    for (std::size_t j = k; j < n; ++j) {
      long double d = 0;
      for (std::size_t i = k; i < m; ++i) d += static_cast<long double>(v[i]) * a[j][i];
      const double f = vn > 0 ? static_cast<double>(2 * d / vn) : 0.0;
      for (std::size_t i = k; i < m; ++i) a[j][i] -= f * v[i];
    }
    rdiag[k] = a[k][k];
    vs.push_back(std::move(v));
  }
  // q_k = H_0 ... H_{n-1} e_k
  Mat out(n, Vec(m, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    Vec q(m, 0.0);
    q[k] = 1.0;
    for (std::size_t h = n; h-- > 0;) {
      const Vec& v = vs[h];
      long double d = 0, vn = 0;
      for (std::size_t i = h; i < m; ++i) {
        d += static_cast<long double>(v[i]) * q[i];
        vn += static_cast<long double>(v[i]) * v[i];
      }
      const double f = vn > 0 ? static_cast<double>(2 * d / vn) : 0.0;
      for (std::size_t i = h; i < m; ++i) q[i] -= f * v[i];
    }
    for (std::size_t i = 0; i < m; ++i) out[k][i] = q[i] * rdiag[k];
  }
  return out;
}

/// Gram matrix G_jk = <c_j, c_k> dt by direct summation.
inline Mat gram(const Mat& cols, double dt) {
  Mat g(cols.size(), Vec(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t k = 0; k < cols.size(); ++k) g[j][k] = inner(cols[j], cols[k], dt);
  }
  return g;
}

/// Sample Pearson correlation.
inline double correlation(const Vec& a, const Vec& b) {
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

/// Sum of unit sines at the given frequencies on n samples at rate fs.
inline Vec tones(const Vec& freqs, std::size_t n, double fs, const Vec& amps = {}) {
  Vec x(n, 0.0);
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const double a = amps.empty() ? 1.0 : amps[k];
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += a * std::sin(2.0 * std::numbers::pi * freqs[k] * double(i) / fs);
    }
  }
  return x;
}

/// Seeded generator of random multitone test signals.
class SignalFactory {
 public:
  explicit SignalFactory(std::uint64_t seed) : rng_(seed) {}

  Vec gaussian(std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> d(0.0, sd);
    Vec x(n);
    for (auto& v : x) v = d(rng_);
    return x;
  }

  /// k tones with random frequencies in [lo, hi] Hz, amplitudes in [0.5, 2] and phases.
  Vec multitone(std::size_t n, double fs, int k, double lo, double hi) {
    std::uniform_real_distribution<double> f(lo, hi), a(0.5, 2.0), p(0.0, 2 * std::numbers::pi);
    Vec x(n, 0.0);
    for (int j = 0; j < k; ++j) {
      const double fj = f(rng_), aj = a(rng_), pj = p(rng_);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += aj * std::sin(2 * std::numbers::pi * fj * double(i) / fs + pj);
      }
    }
    return x;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // EMDKIT_TESTS_ORACLES_HPP
