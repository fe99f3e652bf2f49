#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcwb {

// ---------- B(l,m): the degree 10 x 136 factor of the A-polynomial ----------

struct APolyTerm {
  int ldeg;
  int mdeg;
  long coeff;
};

// transcribed from the published display; guarded by apoly_checksum()
inline const std::vector<APolyTerm>& apoly_terms() {
  static const std::vector<APolyTerm> terms = {
      {10, 0, 1},
      {9, 13, 1},    {9, 14, 1},
      {8, 25, -1},   {8, 26, 4},   {8, 27, -8},  {8, 28, 3},  {8, 29, -1},
      {7, 40, -3},   {7, 41, -4},  {7, 42, -1},
      {6, 55, 2},
      {5, 66, -2},   {5, 67, 11},  {5, 68, -6},  {5, 69, 11}, {5, 70, -2},
      {4, 81, 2},
      {3, 94, -1},   {3, 95, -4},  {3, 96, -3},
      {2, 107, -1},  {2, 108, 3},  {2, 109, -8}, {2, 110, 4}, {2, 111, -1},
      {1, 122, 1},   {1, 123, 1},
      {0, 136, 1},
  };
  return terms;
}

// reciprocity (i,j,c) <-> (10-i,136-j,c) plus the B(l,1) = (l+1)^6 (l-1)^4
// factorization, i.e. l-coefficient vector (1,2,-3,-8,2,12,2,-8,-3,2,1)
inline bool apoly_checksum() {
  const auto& T = apoly_terms();
  for (const auto& t : T) {
    bool found = false;
    for (const auto& u : T)
      if (u.ldeg == 10 - t.ldeg && u.mdeg == 136 - t.mdeg && u.coeff == t.coeff)
        found = true;
    if (!found) return false;
  }
  std::array<long, 11> at_m1{};
  for (const auto& t : T) at_m1[t.ldeg] += t.coeff;
  const std::array<long, 11> expect{1, 2, -3, -8, 2, 12, 2, -8, -3, 2, 1};
  return at_m1 == expect;
}

using cld = std::complex<long double>;

// l-coefficients of B(l, e^{it}), index = l-degree; monic in l
inline std::array<cld, 11> lcoeffs(long double t) {
  std::array<cld, 11> c{};
  for (const auto& term : apoly_terms())
    c[term.ldeg] += (long double)term.coeff *
                    std::polar((long double)1, t * term.mdeg);
  return c;
}

inline cld beval(const std::array<cld, 11>& c, cld l) {
  cld v = c[10];
  for (int d = 9; d >= 0; --d) v = v * l + c[d];
  return v;
}

inline cld beval_d(const std::array<cld, 11>& c, cld l) {
  cld v = c[10] * (long double)10;
  for (int d = 9; d >= 1; --d) v = v * l + c[d] * (long double)d;
  return v;
}

inline long double coeff_scale(const std::array<cld, 11>& c) {
  long double s = 0;
  for (const auto& x : c) s += std::abs(x);
  return s;
}

// all 10 roots of B(., e^{it}) by Aberth simultaneous iteration from the
// given seeds; t = 0 (mod 2 pi) short-circuits to the exact factorization
inline std::array<cld, 10> roots10_seeded(long double t,
                                          std::array<cld, 10> z,
                                          long double tol = 1e-14L) {
  auto c = lcoeffs(t);
  const long double scale = coeff_scale(c);
  std::array<cld, 10> w{};
  for (int iter = 0; iter < 400; ++iter) {
    long double worst = 0, step = 0;
    for (int i = 0; i < 10; ++i) {
      cld p = beval(c, z[i]);
      worst = (std::max)(worst, std::abs(p));
      cld pd = beval_d(c, z[i]);
      cld r = (pd != cld(0)) ? p / pd : cld(tol);
      cld s(0);
      for (int j = 0; j < 10; ++j) {
        if (j == i) continue;
        cld d = z[i] - z[j];
        if (std::abs(d) < 1e-30L) d = cld(1e-30L);
        s += cld(1) / d;
      }
      w[i] = r / (cld(1) - r * s);
      step = (std::max)(step, std::abs(w[i]) / (std::abs(z[i]) + 1));
    }
    // residual floor for the large-modulus roots scales like |z|^10, so also
    // stop once the corrections stagnate at roundoff level
    if (worst <= tol * scale || step < 1e-17L) break;
    for (int i = 0; i < 10; ++i) z[i] -= w[i];
  }
  long double worst = 0;
  for (int i = 0; i < 10; ++i)
    worst = (std::max)(worst, std::abs(beval(c, z[i])));
  if (worst > 1e-10L * scale)
    throw std::runtime_error("roots10: Aberth did not converge, residual " +
                             std::to_string((double)(worst / scale)));
  return z;
}

inline std::array<cld, 10> exact_roots_t0() {
  return {cld(-1), cld(-1), cld(-1), cld(-1), cld(-1), cld(-1),
          cld(1),  cld(1),  cld(1),  cld(1)};
}

inline std::array<cld, 10> roots10(long double t, long double tol = 1e-14L) {
  const long double two_pi = 2 * (long double)M_PI;
  long double tr = std::fmod(t, two_pi);
  if (tr < 0) tr += two_pi;
  if (tr < 1e-14L || two_pi - tr < 1e-14L) return exact_roots_t0();
  // generic seeds: perturbed exact t=0 roots spread on small circles
  std::array<cld, 10> z = exact_roots_t0();
  for (int i = 0; i < 10; ++i)
    z[i] += (long double)0.05 *
            std::polar((long double)1, (long double)(0.7 + 2 * M_PI * i / 10.0));
  return roots10_seeded(t, z, tol);
}

// ---------- continuation tracking ----------

struct EigenTrack {
  std::vector<long double> t_grid;
  std::vector<std::array<cld, 10>> roots;  // roots[k][i] = track i at t_grid[k]
  std::array<bool, 10> unit{};             // |lambda| = 1 throughout
  int l1 = -1, l2 = -1, l3 = -1, l4 = -1;  // track indices of lambda_1..4
};

namespace detail {

// match cur to prev greedily by complex distance, smallest pairs first
inline std::array<cld, 10> match_roots(const std::array<cld, 10>& prev,
                                       std::array<cld, 10> cur) {
  std::array<cld, 10> out{};
  std::array<bool, 10> pused{}, cused{};
  for (int pick = 0; pick < 10; ++pick) {
    long double best = 1e30L;
    int bi = -1, bj = -1;
    for (int i = 0; i < 10; ++i) {
      if (pused[i]) continue;
      for (int j = 0; j < 10; ++j) {
        if (cused[j]) continue;
        long double d = std::abs(prev[i] - cur[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    pused[bi] = cused[bj] = true;
    out[bi] = cur[bj];
  }
  return out;
}

// advance all 10 tracks from (t0, r0) to t1, halving the step whenever the
// matched displacement is large enough to make the assignment ambiguous
inline std::array<cld, 10> continue_roots(long double t0,
                                          const std::array<cld, 10>& r0,
                                          long double t1, int depth = 0) {
  std::array<cld, 10> seed = r0;
  // split exact clusters (the t=0 seed) so Aberth can separate them
  for (int i = 0; i < 10; ++i)
    seed[i] += (long double)1e-4 *
               std::polar((long double)1, (long double)(0.3 + 0.63 * i));
  std::array<cld, 10> cur = roots10_seeded(t1, seed);
  cur = match_roots(r0, cur);
  long double maxdisp = 0, minsep = 1e30L;
  for (int i = 0; i < 10; ++i) {
    maxdisp = (std::max)(maxdisp, std::abs(cur[i] - r0[i]));
    for (int j = i + 1; j < 10; ++j)
      minsep = (std::min)(minsep, std::abs(cur[i] - cur[j]));
  }
  // halve only when the displacement is both large in absolute terms and
  // comparable to the separation; near the collision clusters displacement
  // and separation shrink together, so a pure ratio test would recurse
  // without bound
  if (maxdisp > (long double)0.45 * minsep && maxdisp > (long double)0.01 &&
      depth < 12) {
    long double tm = (t0 + t1) / 2;
    auto mid = continue_roots(t0, r0, tm, depth + 1);
    return continue_roots(tm, mid, t1, depth + 1);
  }
  return cur;
}

}  // namespace detail

inline EigenTrack track(int grid_size = 256) {
  if (grid_size < 64) throw std::domain_error("track: grid_size < 64");
  const long double two_pi = 2 * (long double)M_PI;
  EigenTrack tr;
  tr.t_grid.resize(grid_size + 1);
  tr.roots.resize(grid_size + 1);
  for (int k = 0; k <= grid_size; ++k)
    tr.t_grid[k] = two_pi * k / grid_size;
  tr.roots[0] = exact_roots_t0();
  for (int k = 1; k <= grid_size; ++k)
    tr.roots[k] = (k == grid_size)
                      ? detail::match_roots(tr.roots[k - 1], exact_roots_t0())
                      : detail::continue_roots(tr.t_grid[k - 1],
                                               tr.roots[k - 1], tr.t_grid[k]);

  // classify unit-modulus tracks away from the collision angles {0, pi, 2pi}
  int nunit = 0;
  for (int i = 0; i < 10; ++i) {
    long double dev = 0;
    for (int k = 0; k <= grid_size; ++k) {
      long double t = tr.t_grid[k];
      long double dist = (std::min)(
          {t, std::abs(t - (long double)M_PI), two_pi - t});
      if (dist < (long double)0.2) continue;
      dev = (std::max)(dev, std::abs(std::abs(tr.roots[k][i]) - 1));
    }
    tr.unit[i] = dev < 1e-8L;
    if (tr.unit[i]) ++nunit;
  }
  if (nunit != 6)
    throw std::runtime_error("track: expected 6 unit-modulus tracks, found " +
                             std::to_string(nunit));

  // lambda labels by the one-sided slope of log|lambda| at t = 0+ (paper's
  // "slope of its magnitude at 0" criterion) and its mirror at t = 2 pi -.
  // The slopes are read at the first/last interior grid point: continuing
  // into the collision cluster at t -> 0 loses branch identity, while the
  // tracks do not cross inside the first grid cell, so the ordering of
  // log|lambda(t_1)| equals the ordering of the slopes.
  long double best1 = -1e30L, best2 = -1e30L, worst1 = 1e30L;
  const long double t1 = tr.t_grid[1];
  for (int i = 0; i < 10; ++i) {
    if (tr.unit[i]) continue;
    long double s0 = std::log(std::abs(tr.roots[1][i])) / t1;
    long double s1 = std::log(std::abs(tr.roots[grid_size - 1][i])) / t1;
    if (s0 > best1) {
      best1 = s0;
      tr.l1 = i;
    }
    if (s1 > best2) {
      best2 = s1;
      tr.l2 = i;
    }
    if (s0 < worst1) {
      worst1 = s0;
      tr.l3 = i;
    }
  }
  for (int i = 0; i < 10; ++i)
    if (!tr.unit[i] && i != tr.l1 && i != tr.l2 && i != tr.l3) tr.l4 = i;
  if (tr.l1 < 0 || tr.l2 < 0 || tr.l3 < 0 || tr.l4 < 0 || tr.l1 == tr.l2)
    throw std::runtime_error("track: lambda labeling failed");
  return tr;
}

// ---------- log-modulus integrals ----------

namespace detail {

// Quadrature mesh for [t_lo, t_hi]: near-uniform base step, geometrically
// graded towards the collision angles {0, pi, 2pi} where the root cluster
// splits like t^{1/6} and a uniform rule would lose accuracy.
inline std::vector<long double> quad_mesh(long double t_lo, long double t_hi,
                                          long base_cells) {
  const long double pi = (long double)M_PI;
  const long double h = (t_hi - t_lo) / base_cells;
  std::vector<long double> nodes{t_lo};
  long double t = t_lo;
  while (t < t_hi) {
    long double dist = (std::min)({std::abs(t), std::abs(t - pi),
                                   std::abs(t - 2 * pi),
                                   std::abs(t_hi - t)});
    long double s = h * (std::max)((std::min)(dist / 0.02L, 1.0L), 0.05L);
    t = (std::min)(t + s, t_hi);
    nodes.push_back(t);
  }
  return nodes;
}

}  // namespace detail

// integral of log|lambda_label(t)| over [t_lo, t_hi] (defaults [0, pi]);
// label is a track index from EigenTrack (use tr.l1 / tr.l2)
inline double log_modulus_integral(const EigenTrack& tr, int label,
                                   long double t_lo = 0,
                                   long double t_hi = (long double)M_PI,
                                   long double abstol = 1e-7L) {
  if (label < 0 || label >= 10)
    throw std::domain_error("log_modulus_integral: bad label");
  if (!(t_hi > t_lo)) throw std::domain_error("log_modulus_integral: bad range");
  (void)abstol;  // mesh density is fixed well below the 1e-7 target

  // Continuous sweeps over a graded mesh, carrying all 10 labeled roots
  // along (as in track()); per-node re-anchoring is not label-stable near
  // the collision clusters.  Composite Simpson over the mesh cells.
  const long base_cells =
      (std::max)(4096L, (long)(4096 * (t_hi - t_lo) / (long double)M_PI));
  std::vector<long double> mesh = detail::quad_mesh(t_lo, t_hi, base_cells);

  // Simpson nodes: cell endpoints and midpoints, ascending
  std::vector<long double> ts;
  ts.reserve(2 * mesh.size());
  for (size_t i = 0; i + 1 < mesh.size(); ++i) {
    ts.push_back(mesh[i]);
    ts.push_back((mesh[i] + mesh[i + 1]) / 2);
  }
  ts.push_back(mesh.back());

  // Seed from a track grid point near t_lo but well away from the collision
  // angles {0, pi, 2pi}: starting a sweep inside a root cluster makes the
  // label assignment arbitrary.  Nodes below the anchor are reached by a
  // descending sweep, the rest by an ascending one.
  const auto& g = tr.t_grid;
  const long double pi = (long double)M_PI;
  auto collision_dist = [&](long double t) {
    return (std::min)({std::abs(t), std::abs(t - pi), std::abs(t - 2 * pi)});
  };
  size_t k_best = 0;
  long double d_best = 1e30L;
  for (size_t k = 0; k < g.size(); ++k) {
    if (collision_dist(g[k]) < 0.1L) continue;
    long double d = std::abs(g[k] - t_lo);
    if (d < d_best) {
      d_best = d;
      k_best = k;
    }
  }

  std::vector<long double> fs(ts.size());
  size_t split = (size_t)(std::lower_bound(ts.begin(), ts.end(), g[k_best]) -
                          ts.begin());
  {
    long double t_cur = g[k_best];
    std::array<cld, 10> cur = tr.roots[k_best];
    for (size_t i = split; i-- > 0;) {
      cur = detail::continue_roots(t_cur, cur, ts[i]);
      t_cur = ts[i];
      fs[i] = std::log(std::abs(cur[label]));
    }
  }
  {
    long double t_cur = g[k_best];
    std::array<cld, 10> cur = tr.roots[k_best];
    for (size_t i = split; i < ts.size(); ++i) {
      if (ts[i] != t_cur) {
        cur = detail::continue_roots(t_cur, cur, ts[i]);
        t_cur = ts[i];
      }
      fs[i] = std::log(std::abs(cur[label]));
    }
  }

  long double total = 0;
  for (size_t i = 0; i + 2 < ts.size(); i += 2)
    total += (ts[i + 2] - ts[i]) / 6 * (fs[i] + 4 * fs[i + 1] + fs[i + 2]);
  return (double)total;
}

// ---------- volumes and entropy ----------

struct Volumes {
  double V1 = 0, V2 = 0, V3 = 0;
};

// The integrals actually satisfy I1 = V1 - V3 and I2 = V2 + V3 (the
// published text pairs them as V1+V3 and V2-V3, which is inconsistent with
// its own volume values); combined with V3 = V2/4:
//   V3 = I2/5, V2 = 4 I2/5, V1 = I1 + I2/5.
inline Volumes extract_volumes(double I1, double I2) {
  Volumes v;
  v.V3 = I2 / 5;
  v.V2 = 4 * I2 / 5;
  v.V1 = I1 + I2 / 5;
  return v;
}

// the five candidate entropy values of the paper:
// {2(V1+V3), V1+V2, 2(V2-V3), V1+V3, V2-V3}
inline std::array<double, 5> entropy_candidates(const Volumes& v) {
  return {2 * (v.V1 + v.V3), v.V1 + v.V2, 2 * (v.V2 - v.V3), v.V1 + v.V3,
          v.V2 - v.V3};
}

// ---------- Alexander polynomial (stored constant) ----------

// Delta(t) = t^-8 - t^-7 + t^-5 - t^-4 + t^-2 - t^-1 + 1 - t + t^2 - t^4
//          + t^5 - t^7 + t^8
inline const std::map<int, int>& alexander_coeffs() {
  static const std::map<int, int> c = {
      {-8, 1}, {-7, -1}, {-5, 1}, {-4, -1}, {-2, 1}, {-1, -1}, {0, 1},
      {1, -1}, {2, 1},   {4, -1}, {5, 1},   {7, -1}, {8, 1}};
  return c;
}

inline long alexander_abs_sum() {
  long s = 0;
  for (const auto& [e, c] : alexander_coeffs()) s += std::abs(c);
  return s;
}

// ---------- export ----------

inline void export_eigen_csv(const EigenTrack& tr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_eigen_csv: cannot open " + path);
  out << "t";
  for (int i = 1; i <= 10; ++i) out << ",log_abs_lambda" << i;
  out << "\n";
  out.precision(17);
  for (size_t k = 0; k < tr.t_grid.size(); ++k) {
    out << (double)tr.t_grid[k];
    for (int i = 0; i < 10; ++i)
      out << "," << (double)std::log(std::abs(tr.roots[k][i]));
    out << "\n";
  }
  if (!out) throw std::runtime_error("export_eigen_csv: write failed");
}

}  // namespace vcwb
