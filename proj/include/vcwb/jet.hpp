#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bigcomplex.hpp"

namespace vcwb {

// 2-jet (value, d/dB, d2/dB2) at the fixed evaluation point B0.
struct Jet2 {
  BigComplex v, d1, d2;

  Jet2() = default;
  explicit Jet2(long c) : v(c) {}
  Jet2(BigComplex v_, BigComplex d1_, BigComplex d2_)
      : v(std::move(v_)), d1(std::move(d1_)), d2(std::move(d2_)) {}

  static Jet2 constant(BigComplex c) { return Jet2(std::move(c), BigComplex(), BigComplex()); }

  Jet2 operator+(const Jet2& o) const { return Jet2(v + o.v, d1 + o.d1, d2 + o.d2); }
  Jet2 operator-(const Jet2& o) const { return Jet2(v - o.v, d1 - o.d1, d2 - o.d2); }
  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  Jet2 operator-() const { return Jet2(-v, -d1, -d2); }

  Jet2 operator*(const Jet2& o) const {
    return Jet2(v * o.v, v * o.d1 + d1 * o.v,
                v * o.d2 + (d1 * o.d1) * 2L + d2 * o.v);
  }

  Jet2 operator/(const Jet2& o) const {
    BigComplex q0 = v / o.v;
    BigComplex q1 = (d1 - q0 * o.d1) / o.v;
    BigComplex q2 = (d2 - q0 * o.d2 - (q1 * o.d1) * 2L) / o.v;
    return Jet2(q0, q1, q2);
  }

  mpreal max_abs() const {
    mpreal m = v.abs();
    m = (std::max)(m, d1.abs());
    m = (std::max)(m, d2.abs());
    return m;
  }
};

// Allocation-free kernels for the evaluator's inner loop.  Outputs must not
// alias inputs.  All scratch lives here so the z-loop does no mpfr_init.
class JetWorkspace {
 public:
  explicit JetWorkspace(unsigned digits) { reset(digits); }

  void reset(unsigned digits) {
    set_working_digits(digits);
    t1 = t2 = t3 = t4 = n = mpreal(0);
    q0 = q1c = q2c = BigComplex();
  }

  // out = a*b (complex)
  void cmul(BigComplex& out, const BigComplex& a, const BigComplex& b) {
    t1 = a.re * b.re;
    t2 = a.im * b.im;
    t3 = a.re * b.im;
    t4 = a.im * b.re;
    out.re = t1 - t2;
    out.im = t3 + t4;
  }

  // out += a*b (complex)
  void cmul_acc(BigComplex& out, const BigComplex& a, const BigComplex& b) {
    t1 = a.re * b.re;
    t2 = a.im * b.im;
    t1 -= t2;
    out.re += t1;
    t3 = a.re * b.im;
    t4 = a.im * b.re;
    t3 += t4;
    out.im += t3;
  }

  // out = a/b (complex)
  void cdiv(BigComplex& out, const BigComplex& a, const BigComplex& b) {
    n = b.re * b.re;
    t1 = b.im * b.im;
    n += t1;
    t1 = a.re * b.re;
    t2 = a.im * b.im;
    t1 += t2;
    out.re = t1 / n;
    t3 = a.im * b.re;
    t4 = a.re * b.im;
    t3 -= t4;
    out.im = t3 / n;
  }

  // out = a*b (jet)
  void mul(Jet2& out, const Jet2& a, const Jet2& b) {
    cmul(out.v, a.v, b.v);
    cmul(out.d1, a.v, b.d1);
    cmul_acc(out.d1, a.d1, b.v);
    cmul(out.d2, a.v, b.d2);
    cmul_acc(out.d2, a.d2, b.v);
    cmul(q0, a.d1, b.d1);
    out.d2.re += q0.re;
    out.d2.re += q0.re;
    out.d2.im += q0.im;
    out.d2.im += q0.im;
  }

  // a *= b (jet); uses internal register, a and b must be distinct objects
  void mul_assign(Jet2& a, const Jet2& b) {
    mul(prod, a, b);
    std::swap(a, prod);
  }

  // out = a/b (jet)
  void div(Jet2& out, const Jet2& a, const Jet2& b) {
    cdiv(out.v, a.v, b.v);
    cmul(q0, out.v, b.d1);
    q1c.re = a.d1.re - q0.re;
    q1c.im = a.d1.im - q0.im;
    cdiv(out.d1, q1c, b.v);
    cmul(q0, out.v, b.d2);
    cmul(q1c, out.d1, b.d1);
    q2c.re = a.d2.re - q0.re - q1c.re - q1c.re;
    q2c.im = a.d2.im - q0.im - q1c.im - q1c.im;
    cdiv(out.d2, q2c, b.v);
  }

  void div_assign(Jet2& a, const Jet2& b) {
    div(prod, a, b);
    std::swap(a, prod);
  }

 private:
  mpreal t1, t2, t3, t4, n;
  BigComplex q0, q1c, q2c;
  Jet2 prod;
};

// Jet tables at B0 = exp(i*pi/(n+1)) for one (n, digits) pair: quantum
// integers [m] via the closed-form derivative expressions, factorials by the
// [n]! = [n][n-1]! recursion, binomials by the B-Pascal recursion.
// Ratio-factorials are maintained incrementally by the evaluator instead of
// as a full triangular table (memory).
struct QJetTables {
  long n = 0;
  unsigned digits = 0;
  BigComplex B0;
  std::vector<Jet2> integers;    // [m], m = 0 .. 3n+2
  std::vector<Jet2> factorials;  // [m]!, m = 0 .. n
  std::vector<std::vector<Jet2>> binomials;  // [m choose r], m = 0 .. 2n

  const Jet2& qi(long m) const { return integers[m]; }
  const Jet2& qf(long m) const { return factorials[m]; }
  const Jet2& qb(long m, long r) const { return binomials[m][r]; }
};

namespace detail {

// B^m as a jet at B0, m any integer (or zero)
inline Jet2 bpow_jet(const BigComplex& B0, long m) {
  // B0^m with exact-angle reduction is handled by callers that know the
  // angle; here plain powers suffice since |m| stays modest in table build.
  BigComplex p(1);
  BigComplex base = B0;
  long e = m < 0 ? -m : m;
  while (e) {
    if (e & 1) p = p * base;
    base = base * base;
    e >>= 1;
  }
  if (m < 0) p = BigComplex(1) / p;
  BigComplex pm1 = p / B0;
  BigComplex pm2 = pm1 / B0;
  return Jet2(p, pm1 * m, pm2 * (m * (m - 1)));
}

}  // namespace detail

// q^{e} prefactor as a jet in B: q^e = B^{2e} with 8e = e8 integer, so
// alpha = 2e = e8/4.  Value exp(i*pi*e8/(4(n+1))), angle reduced exactly
// mod 2*pi before any trig.
inline Jet2 bpow_rational_jet(long n, long long e8) {
  const long long den = 8LL * (n + 1);  // angle = 2*pi*e8/den
  long long r = e8 % den;
  if (r < 0) r += den;
  const mpreal two_pi = 2 * pi_val();
  BigComplex val = BigComplex::polar(two_pi * r / den);
  mpreal alpha = mpreal(e8) / 4;
  BigComplex B0inv = BigComplex::polar(-two_pi / (2 * (n + 1)));  // B0^{-1}
  BigComplex d1 = val * B0inv * alpha;
  BigComplex d2 = d1 * B0inv * (alpha - 1);
  return Jet2(val, d1, d2);
}

inline QJetTables build_tables(long n, unsigned digits) {
  if (n < 0 || digits < 32) throw std::domain_error("build_tables: bad args");
  set_working_digits(digits);
  QJetTables T;
  T.n = n;
  T.digits = digits;
  const mpreal pi = pi_val();
  T.B0 = BigComplex::polar(pi / (n + 1));

  const long mmax = 3 * n + 2;
  T.integers.resize(mmax + 1);
  // [m] and derivatives from the closed forms; Bm = B0^m computed
  // incrementally, denominator u = B - B^{-1} at B0
  BigComplex Binv = BigComplex(1) / T.B0;
  BigComplex u = T.B0 - Binv;
  BigComplex u2 = u * u, u3 = u2 * u;
  BigComplex w = BigComplex(1) + Binv * Binv;        // 1 + B^{-2}
  BigComplex w3 = BigComplex(1) + Binv * Binv * 3L;  // 1 + 3B^{-2}
  BigComplex Bm(1), Bmm(1);  // B0^m, B0^{-m}
  T.integers[0] = Jet2(0);
  for (long m = 1; m <= mmax; ++m) {
    Bm = Bm * T.B0;
    Bmm = Bmm * Binv;
    BigComplex num = Bm - Bmm;              // B^m - B^{-m}
    BigComplex s = Bm * Binv + Bmm * Binv;  // B^{m-1} + B^{-m-1}
    BigComplex v = num / u;
    BigComplex d1 = (s * m) / u - (num / u2) * w;
    BigComplex d2 =
        ((Bm * Binv * Binv) * (m - 1) - (Bmm * Binv * Binv) * (m + 1)) * m / u -
        (s * (2 * m)) / u2 * w + (num * 2L) / u3 * w3;
    T.integers[m] = Jet2(v, d1, d2);
  }

  T.factorials.resize(n + 1);
  T.factorials[0] = Jet2(1);
  for (long m = 1; m <= n; ++m)
    T.factorials[m] = T.factorials[m - 1] * T.integers[m];

  // Pascal in B: [m r] = B^{-r}[m-1 r] + B^{m-r}[m-1 r-1]
  const long bmax = 2 * n;
  T.binomials.assign(bmax + 1, {});
  for (long m = 0; m <= bmax; ++m) {
    T.binomials[m].resize(m + 1);
    T.binomials[m][0] = Jet2(1);
    T.binomials[m][m] = Jet2(1);
    for (long r = 1; r < m; ++r) {
      Jet2 a = detail::bpow_jet(T.B0, -r) * T.binomials[m - 1][r];
      Jet2 b = detail::bpow_jet(T.B0, m - r) * T.binomials[m - 1][r - 1];
      T.binomials[m][r] = a + b;
    }
  }
  return T;
}

// [n+1] = T*S*(B-B0): S from the displayed closed forms, T from its
// definition and derivatives.
inline std::pair<Jet2, Jet2> st_split(long n, const QJetTables& tab) {
  const BigComplex& B0 = tab.B0;
  BigComplex Binv = BigComplex(1) / B0;
  Jet2 S(BigComplex(Binv * (2 * (n + 1))),
         BigComplex(Binv * Binv * ((n + 1) * (2 * n + 1))),
         BigComplex(Binv * Binv * Binv *
                    (mpreal(4) / 3 * n * (n + 1) * (2 * n + 1))));
  BigComplex u = B0 - Binv;
  BigComplex u2 = u * u, u3 = u2 * u;
  BigComplex w = BigComplex(1) + Binv * Binv;
  BigComplex w3 = BigComplex(1) + Binv * Binv * 3L;
  BigComplex Bn1 = detail::bpow_jet(B0, -(n + 1)).v;  // B0^{-n-1}
  BigComplex Tv = Bn1 / u;
  BigComplex Td1 = (Bn1 * Binv * (-(n + 1))) / u - Bn1 / u2 * w;
  BigComplex Td2 = (Bn1 * Binv * Binv * ((n + 1) * (n + 2))) / u +
                   (Bn1 * Binv * (2 * (n + 1))) / u2 * w + (Bn1 * 2L) / u3 * w3;
  return {S, Jet2(Tv, Td1, Td2)};
}

struct EvalResult {
  BigComplex value;       // J(N) at q0
  mpreal residual_v;      // |f(B0)| / max|h|
  mpreal residual_d1;     // |f'(B0)| / max|h|
  bool residual_ok = false;
};

// Appendix-A evaluator: J(N) at q0 = exp(2 pi i/N) via the second derivative
// of f = sum of pole-cleared summands.  lenient keeps the value even when the
// double-zero residual check fails (precision-pathology studies).
inline EvalResult eval_jones_at_root_full(long N, unsigned digits,
                                          bool lenient = false) {
  if (N < 2) throw std::domain_error("eval_jones_at_root: N < 2");
  const long n = N - 1;
  QJetTables tab = build_tables(n, digits);
  JetWorkspace ws(digits);
  auto [S, Tj] = st_split(n, tab);
  Jet2 TS = S * Tj;
  Jet2 TS2 = TS * TS;

  Jet2 f(0);
  mpreal maxh(0);

  Jet2 rfD(1);           // [(2n+k)/2+1, n+1]!
  Jet2 nkf = tab.qf(n);  // [n, k/2]!
  Jet2 kf(1);            // [k/2]!
  Jet2 h, coef, Z, term, rf1, rf2, pref;

  for (long k = 0; k <= 2 * n; k += 2) {
    const long a1 = (2 * n + k) / 2;
    // denominator for this k: [a1+1,n+1]! [n,k/2]! (TS)^2
    Jet2 den = rfD * nkf;
    ws.mul_assign(den, TS2);
    // numerator factor independent of l: [k+1]*[k/2]! over the denominator
    coef = tab.qi(k + 1) * kf;
    ws.div_assign(coef, den);

    const long lmin = (n - k >= 0) ? n - k : k - n;
    for (long l = lmin; l <= n + k; l += 2) {
      const long a2 = (n + k + l) / 2;
      const long zmin = (std::max)(a1, a2);
      const long zmax = (std::min)(
          (std::min)((n + 2 * k + l) / 2, (3 * n + l) / 2), n + k);
      if (zmax < zmin) continue;
      // rf2(z) = [z+1, a2+1]! at z = zmin
      rf2 = Jet2(1);
      for (long m = a2 + 2; m <= zmin + 1; ++m) ws.mul_assign(rf2, tab.qi(m));
      // rf1(z) = [n-k/2, z-a2]! at z = zmin
      rf1 = tab.qf(n - k / 2);
      if (zmin > a2) ws.div_assign(rf1, tab.qf(zmin - a2));

      const long i1 = (k + l - n) / 2, i2 = (n + l - k) / 2, i3 = (n + k - l) / 2;
      const long b1 = (n + 2 * k + l) / 2, b2 = (3 * n + l) / 2, b3 = n + k;

      Z = Jet2(0);
      for (long z = zmin;; ++z) {
        ws.mul(term, tab.qb(i1, b1 - z), tab.qb(i2, b2 - z));
        ws.mul_assign(term, tab.qb(i3, b3 - z));
        ws.mul_assign(term, rf1);
        ws.mul_assign(term, rf2);
        if (((k / 2 + z) & 1) == 0)
          Z += term;
        else
          Z -= term;
        if (z == zmax) break;
        ws.mul_assign(rf2, tab.qi(z + 2));
        ws.div_assign(rf1, tab.qi(z + 1 - a2));
      }

      // prefactor q^{e(n,k,l)} = B^{2e}, 8e integer
      long long e8 = -3LL * (2 * k + k * k) + 7LL * (2 * l + l * l) -
                     51LL * (2 * n + (long long)n * n);
      pref = bpow_rational_jet(n, e8);
      ws.mul(h, coef, tab.qi(l + 1));
      ws.mul_assign(h, pref);
      ws.mul_assign(h, Z);
      f += h;
      mpreal hm = h.max_abs();
      if (hm > maxh) maxh = hm;
    }
    // advance k-dependent running products to k+2
    if (k + 2 <= 2 * n) {
      ws.mul_assign(kf, tab.qi(k / 2 + 1));
      ws.div_assign(nkf, tab.qi(k / 2 + 1));
      ws.mul_assign(rfD, tab.qi(a1 + 2));
    }
  }

  EvalResult r;
  r.residual_v = f.v.abs() / maxh;
  r.residual_d1 = f.d1.abs() / maxh;
  r.residual_ok = r.residual_v <= mpreal("1e-10") && r.residual_d1 <= mpreal("1e-10");
  if (!r.residual_ok && !lenient)
    throw std::runtime_error("eval_jones_at_root: double-zero residual too large");
  r.value = BigComplex(f.d2.re / 2, f.d2.im / 2);
  return r;
}

inline BigComplex eval_jones_at_root(long N, unsigned digits) {
  return eval_jones_at_root_full(N, digits).value;
}

}  // namespace vcwb
