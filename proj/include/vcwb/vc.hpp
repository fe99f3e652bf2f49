#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jet.hpp"

namespace vcwb {

// paper's working-precision policy: 80 digits carry to n ~ 250, 200 digits
// to n ~ 550
inline unsigned default_digits(long n) { return n <= 260 ? 80 : 200; }

struct VCSample {
  long n = 0;
  unsigned digits = 0;
  std::string j_re, j_im;  // high-precision J(n)(e^{2pi i/n}), decimal strings
  double vc_re = 0, vc_im = 0;
  double wall_time = 0;

  bool operator==(const VCSample&) const = default;

  std::string to_json() const {
    nlohmann::json j{{"n", n},        {"digits", digits}, {"j_re", j_re},
                     {"j_im", j_im},  {"vc_re", vc_re},   {"vc_im", vc_im},
                     {"wall_time", wall_time}};
    return j.dump();
  }
};

// VC(n) = (2 pi/n) log J(n)(e^{2 pi i/n}) on the principal branch.
// lenient skips the double-zero residual safeguard and never escalates the
// precision: that reproduces a fixed-precision run faithfully, round-off
// pathology included.
inline VCSample vc_sample(long n, unsigned digits, bool lenient = false) {
  auto t0 = std::chrono::steady_clock::now();
  BigComplex J = [&] {
    if (lenient) return eval_jones_at_root_full(n, digits, true).value;
    try {
      return eval_jones_at_root(n, digits);
    } catch (const std::runtime_error&) {
      // residual failure: one retry at doubled precision
      return eval_jones_at_root(n, 2 * digits);
    }
  }();
  auto t1 = std::chrono::steady_clock::now();
  VCSample s;
  s.n = n;
  s.digits = digits;
  s.j_re = J.re.str(digits);
  s.j_im = J.im.str(digits);
  mpreal mod = J.abs();
  if (mod == 0) throw std::runtime_error("vc: J vanished at root of unity");
  mpreal two_pi_n = 2 * pi_val() / n;
  s.vc_re = static_cast<double>(two_pi_n * log(mod));
  s.vc_im = static_cast<double>(two_pi_n * atan2(J.im, J.re));
  s.wall_time = std::chrono::duration<double>(t1 - t0).count();
  return s;
}

inline std::complex<double> vc(long n, unsigned digits) {
  VCSample s = vc_sample(n, digits);
  return {s.vc_re, s.vc_im};
}

// JSONL cache keyed (n, digits).  A malformed line is never overwritten
// silently: loading reports its line number and stops.
class VCCache {
 public:
  explicit VCCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in.good()) return;  // no cache yet
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      VCSample s;
      try {
        nlohmann::json j = nlohmann::json::parse(line);
        s.n = j.at("n").get<long>();
        s.digits = j.at("digits").get<unsigned>();
        s.j_re = j.at("j_re").get<std::string>();
        s.j_im = j.at("j_im").get<std::string>();
        s.vc_re = j.at("vc_re").get<double>();
        s.vc_im = j.at("vc_im").get<double>();
        s.wall_time = j.at("wall_time").get<double>();
      } catch (const std::exception& e) {
        throw std::runtime_error("cache corrupt: " + path_ + " line " +
                                 std::to_string(lineno) + ": " + e.what());
      }
      entries_[{s.n, s.digits}] = s;
    }
  }

  std::optional<VCSample> find(long n, unsigned digits) const {
    auto it = entries_.find({n, digits});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const VCSample& s) {
    entries_[{s.n, s.digits}] = s;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cache: cannot append to " + path_);
    out << s.to_json() << "\n";
  }

  size_t size() const { return entries_.size(); }

 private:
  std::string path_;
  std::map<std::pair<long, unsigned>, VCSample> entries_;
};

struct ScanProgress {
  long computed = 0;
  long cache_hits = 0;
};

inline std::vector<VCSample> scan(long n_min, long n_max, long step,
                                  unsigned digits, const std::string& cache_path,
                                  ScanProgress* progress = nullptr,
                                  std::ostream* log = nullptr,
                                  bool lenient = false) {
  if (n_min < 2 || n_max < n_min || step < 1)
    throw std::domain_error("scan: bad range");
  VCCache cache(cache_path);
  std::vector<VCSample> out;
  for (long n = n_min; n <= n_max; n += step) {
    unsigned d = digits ? digits : default_digits(n);
    if (auto hit = cache.find(n, d)) {
      out.push_back(*hit);
      if (progress) ++progress->cache_hits;
      continue;
    }
    VCSample s = vc_sample(n, d, lenient);
    cache.append(s);
    out.push_back(s);
    if (progress) ++progress->computed;
    if (log)
      (*log) << "n=" << n << " digits=" << d << " vc_re=" << s.vc_re
             << " wall=" << s.wall_time << "s\n"
             << std::flush;
  }
  return out;
}

struct FitResult {
  double c_const = 0, c_inv = 0, c_logn = 0;  // basis {1, 1/n, log(n)/n}
  double residual_max = 0;
  long n_min = 0, n_max = 0;
};

// Least squares of Re VC on {1, 1/n, log(n)/n} over [n_min, n_max] via
// Householder QR of the tall design matrix.
inline FitResult fit_asymptotics(const std::vector<VCSample>& samples,
                                 long n_min = 21, long n_max = 250) {
  std::vector<std::array<double, 3>> A;
  std::vector<double> y;
  std::vector<long> ns;
  for (const VCSample& s : samples) {
    if (s.n < n_min || s.n > n_max) continue;
    double n = static_cast<double>(s.n);
    A.push_back({1.0, 1.0 / n, std::log(n) / n});
    y.push_back(s.vc_re);
    ns.push_back(s.n);
  }
  const size_t m = A.size();
  if (m < 4) throw std::runtime_error("fit: fewer than 4 samples in window");

  // Householder QR, 3 columns
  std::array<double, 3> beta{};
  {
    std::vector<std::array<double, 3>> R = A;
    std::vector<double> b = y;
    for (int col = 0; col < 3; ++col) {
      double norm = 0;
      for (size_t i = col; i < m; ++i) norm += R[i][col] * R[i][col];
      norm = std::sqrt(norm);
      if (norm < 1e-14) throw std::runtime_error("fit: rank-deficient design");
      double alpha = R[col][col] > 0 ? -norm : norm;
      std::vector<double> v(m, 0.0);
      for (size_t i = col; i < m; ++i) v[i] = R[i][col];
      v[col] -= alpha;
      double vnorm2 = 0;
      for (size_t i = col; i < m; ++i) vnorm2 += v[i] * v[i];
      if (vnorm2 < 1e-28) continue;
      for (int c2 = col; c2 < 3; ++c2) {
        double dot = 0;
        for (size_t i = col; i < m; ++i) dot += v[i] * R[i][c2];
        double f = 2 * dot / vnorm2;
        for (size_t i = col; i < m; ++i) R[i][c2] -= f * v[i];
      }
      double dot = 0;
      for (size_t i = col; i < m; ++i) dot += v[i] * b[i];
      double f = 2 * dot / vnorm2;
      for (size_t i = col; i < m; ++i) b[i] -= f * v[i];
    }
    for (int row = 2; row >= 0; --row) {
      double s = b[row];
      for (int c2 = row + 1; c2 < 3; ++c2) s -= R[row][c2] * beta[c2];
      beta[row] = s / R[row][row];
    }
  }

  FitResult r;
  r.c_const = beta[0];
  r.c_inv = beta[1];
  r.c_logn = beta[2];
  r.n_min = n_min;
  r.n_max = n_max;
  for (size_t i = 0; i < m; ++i) {
    double pred = beta[0] * A[i][0] + beta[1] * A[i][1] + beta[2] * A[i][2];
    r.residual_max = (std::max)(r.residual_max, std::abs(pred - y[i]));
  }
  return r;
}

struct VolumeReport {
  double vol = 3.474247;  // vol(K_0), hyperbolic volume
  double const_deviation = 0;  // c_const - vol
  double logn_over_2pi = 0;    // c_logn/(2 pi), expect near 3/2
  double logn_deviation = 0;   // c_logn/(2 pi) - 3/2
};

inline VolumeReport volume_consistency(const FitResult& fit) {
  VolumeReport r;
  r.const_deviation = fit.c_const - r.vol;
  r.logn_over_2pi = fit.c_logn / (2 * M_PI);
  r.logn_deviation = r.logn_over_2pi - 1.5;
  return r;
}

struct MonotonicityReport {
  long violations = 0;          // count of Re VC(n_{i+1}) >= Re VC(n_i)
  std::vector<long> violation_ns;
  long argmin_n = 0;            // n of the minimal Re VC in the window
  bool strictly_decreasing = false;
};

inline MonotonicityReport monotonicity_report(
    const std::vector<VCSample>& samples) {
  MonotonicityReport r;
  if (samples.empty()) return r;
  double best = samples[0].vc_re;
  r.argmin_n = samples[0].n;
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].vc_re >= samples[i - 1].vc_re) {
      ++r.violations;
      r.violation_ns.push_back(samples[i].n);
    }
    if (samples[i].vc_re < best) {
      best = samples[i].vc_re;
      r.argmin_n = samples[i].n;
    }
  }
  r.strictly_decreasing = r.violations == 0;
  return r;
}

struct PeriodicityReport {
  bool dominant_found = false;
  double dominant_period = 0;  // in n-units (step-1 sampling)
  double power_ratio = 0;      // dominant bin power / mean power
};

// Detrend Im VC with a 12-point moving average, then locate the dominant
// discrete-spectrum bin.  Informational (soft check for the 12-periodicity
// of the twisted (3,8) torus knot).
inline PeriodicityReport periodicity_report(
    const std::vector<VCSample>& samples) {
  PeriodicityReport r;
  const size_t L = samples.size();
  if (L < 24) return r;
  std::vector<double> y(L);
  for (size_t i = 0; i < L; ++i) y[i] = samples[i].vc_im;
  // centered 12-point moving average (window shrinks at the edges)
  std::vector<double> d(L);
  for (size_t i = 0; i < L; ++i) {
    size_t lo = i >= 6 ? i - 6 : 0;
    size_t hi = (std::min)(i + 6, L);
    double s = 0;
    for (size_t j = lo; j < hi; ++j) s += y[j];
    d[i] = y[i] - s / double(hi - lo);
  }
  double mean_power = 0;
  double best_power = 0;
  size_t best_k = 0;
  size_t kmax = L / 2;
  for (size_t k = 1; k <= kmax; ++k) {
    double re = 0, im = 0;
    for (size_t i = 0; i < L; ++i) {
      double a = 2 * M_PI * double(k) * double(i) / double(L);
      re += d[i] * std::cos(a);
      im -= d[i] * std::sin(a);
    }
    double p = re * re + im * im;
    mean_power += p;
    if (p > best_power) {
      best_power = p;
      best_k = k;
    }
  }
  mean_power /= double(kmax);
  if (best_k == 0 || mean_power == 0) return r;
  r.power_ratio = best_power / mean_power;
  r.dominant_found = r.power_ratio > 5.0;
  if (r.dominant_found) r.dominant_period = double(L) / double(best_k);
  return r;
}

inline void export_csv(const std::vector<VCSample>& samples,
                       const std::string& path, bool gnuplot = false) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  const char* sep = gnuplot ? " " : ",";
  if (gnuplot)
    out << "# n vc_re vc_im\n";
  else
    out << "n,vc_re,vc_im\n";
  out.precision(17);
  for (const VCSample& s : samples)
    out << s.n << sep << s.vc_re << sep << s.vc_im << "\n";
  if (!out) throw std::runtime_error("export_csv: write failed");
}

}  // namespace vcwb
