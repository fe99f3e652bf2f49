#pragma once

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include "laurent.hpp"

namespace vcwb {

// 8*e(n,k,l) for the prefactor q^{e(n,k,l)} of the triple-sum formula
inline long long summand_exponent8(long n, long k, long l) {
  return -3LL * (2 * k + (long long)k * k) + 7LL * (2 * l + (long long)l * l) -
         51LL * (2 * n + (long long)n * n);
}

// J_{K0}(N) by the triple-sum formula.  Common-denominator strategy: each
// (k,l)-term is multiplied by [2n+1,(2n+k)/2+1]!, the grand total divided
// once by [2n+1]!*[n+1].
inline LaurentPoly colored_jones(long N) {
  if (N < 1) throw std::domain_error("colored_jones: N < 1");
  const long n = N - 1;
  if (n == 0) return LaurentPoly(1);
  LaurentPoly total;
  for (long k = 0; k <= 2 * n; k += 2) {
    const long a1 = (2 * n + k) / 2;
    for (long l = std::abs(n - k); l <= n + k; l += 2) {
      const long a2 = (n + k + l) / 2;
      const long zmin = std::max(a1, a2);
      const long zmax =
          std::min(std::min((n + 2 * k + l) / 2, (3 * n + l) / 2), n + k);
      if (zmax < zmin) continue;
      LaurentPoly Z;
      for (long z = zmin; z <= zmax; ++z) {
        LaurentPoly t = qbinom((k + l - n) / 2, (n + 2 * k + l) / 2 - z);
        t *= qbinom((n + l - k) / 2, (3 * n + l) / 2 - z);
        t *= qbinom((n + k - l) / 2, n + k - z);
        t *= qfact_ratio((2 * n - k) / 2, z - a2);
        t *= qfact_ratio(z + 1, a2 + 1);
        if (((k / 2 + z) & 1) != 0) t = -t;
        Z += t;
      }
      LaurentPoly kl = qint(k + 1) * qint(l + 1);
      LaurentPoly kf = qfact(k / 2);
      kl *= kf * kf;
      kl *= Z;
      kl *= qfact_ratio(2 * n + 1, a1 + 1);
      long long e8 = summand_exponent8(n, k, l);
      total += kl.shifted(static_cast<long>(e8));  // q^e = x^{8e}
    }
  }
  return exact_div(total, qfact(2 * n + 1) * qint(n + 1));
}

inline bool admissible(long a, long b, long c) {
  return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 &&
         std::abs(b - c) <= a && a <= b + c;
}

struct InternalColors {
  long i, j, k;
};

inline InternalColors internal_colors(long a, long b, long c) {
  if (!admissible(a, b, c)) throw std::domain_error("triple not admissible");
  return {(b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2};
}

// loop value <k>
inline LaurentPoly loop_value(long k) {
  LaurentPoly p = qint(k + 1);
  return (k & 1) ? -p : p;
}

// value as an exact numerator/denominator pair (the unrenormalized theta
// and tetrahedron are rational, not Laurent, in general)
struct RatioValue {
  LaurentPoly numerator;
  LaurentPoly denominator;
};

// Renormalized trihedron <a,b,c>' = [a]![b]![c]! <a,b,c>
//                                 = (-1)^{i+j+k} [i+j+k+1]! [i]![j]![k]!
// from the standard Kauffman-Lins theta
//   <a,b,c> = (-1)^{i+j+k} [i+j+k+1]! [i]![j]![k]! / ([i+j]![i+k]![j+k]!)
// whose denominator is exactly [a]![b]![c]!.  The paper's display swaps the
// internal-color factorials between numerator and denominator, which
// telescopes to [i+j+k+1]! alone and breaks the bracket/fusion identity;
// the KL form restores it (checked exactly against the triple-sum below).
inline LaurentPoly trihedron_renorm(long a, long b, long c) {
  auto [i, j, k] = internal_colors(a, b, c);
  LaurentPoly p = qfact(i + j + k + 1) * qfact(i) * qfact(j) * qfact(k);
  return ((i + j + k) & 1) ? -p : p;
}

inline RatioValue trihedron(long a, long b, long c) {
  return {trihedron_renorm(a, b, c), qfact(a) * qfact(b) * qfact(c)};
}

struct TetLabels {
  long A, B, E, D, C, F;
  long a[4];
  long b[3];
};

inline TetLabels tet_labels(long A, long B, long E, long D, long C, long F) {
  if (!admissible(A, B, E) || !admissible(B, D, F) || !admissible(E, D, C) ||
      !admissible(A, C, F))
    throw std::domain_error("tetrahedron: face triple not admissible");
  TetLabels t{A, B, E, D, C, F, {}, {}};
  long S = A + B + C + D + E + F;
  t.a[0] = (A + B + E) / 2;
  t.a[1] = (B + D + F) / 2;
  t.a[2] = (C + D + E) / 2;
  t.a[3] = (A + C + F) / 2;
  t.b[0] = (S - A - D) / 2;
  t.b[1] = (S - E - F) / 2;
  t.b[2] = (S - B - C) / 2;
  return t;
}

// renormalized tetrahedron: prod [b_i - a_j]! times the zeta-sum (the edge
// factorial denominator of the unrenormalized value is dropped)
inline LaurentPoly tetrahedron_renorm(long A, long B, long E, long D, long C,
                                      long F) {
  TetLabels t = tet_labels(A, B, E, D, C, F);
  long zmin = *std::max_element(t.a, t.a + 4);
  long zmax = *std::min_element(t.b, t.b + 3);
  // prod_{ij}[b_i-a_j]! * sum_z (-1)^z [z+1]! / (prod[b_i-z]! prod[z-a_j]!),
  // with the division distributed through ratio-factorials so every z-term
  // stays polynomial: each denominator factorial is paired with a [b-a]!
  LaurentPoly out;
  for (long z = zmin; z <= zmax; ++z) {
    LaurentPoly term = qfact(z + 1);
    term *= qfact_ratio(t.b[0] - t.a[0], t.b[0] - z);
    term *= qfact_ratio(t.b[1] - t.a[1], t.b[1] - z);
    term *= qfact_ratio(t.b[2] - t.a[2], t.b[2] - z);
    term *= qfact_ratio(t.b[1] - t.a[0], z - t.a[0]);
    term *= qfact_ratio(t.b[0] - t.a[1], z - t.a[1]);
    term *= qfact_ratio(t.b[0] - t.a[2], z - t.a[2]);
    term *= qfact_ratio(t.b[0] - t.a[3], z - t.a[3]);
    // remaining five [b_i-a_j]! factors
    term *= qfact(t.b[1] - t.a[2]);
    term *= qfact(t.b[1] - t.a[3]);
    term *= qfact(t.b[2] - t.a[0]);
    term *= qfact(t.b[2] - t.a[1]);
    term *= qfact(t.b[2] - t.a[3]);
    if (z & 1) term = -term;
    out += term;
  }
  return out;
}

inline RatioValue tetrahedron(long A, long B, long E, long D, long C, long F) {
  RatioValue v;
  v.numerator = tetrahedron_renorm(A, B, E, D, C, F);
  v.denominator = qfact(A) * qfact(B) * qfact(C) * qfact(D) * qfact(E) * qfact(F);
  return v;
}

// mu(k) = (-1)^k A^{k^2+2k}, a monomial in A = x^2
inline LaurentPoly mu_coeff(long k) {
  return LaurentPoly::monomial(2 * (k * k + 2 * k), (k & 1) ? -1 : 1);
}

// delta(c;a,b) = (-1)^k A^{i j - k(i+j+k+2)} with (i,j,k) the internal
// colors of (a,b,c), k attached to the fused edge c
inline LaurentPoly delta_coeff(long c, long a, long b) {
  auto [i, j, k] = internal_colors(a, b, c);
  long e = i * j - k * (i + j + k + 2);
  return LaurentPoly::monomial(2 * e, (k & 1) ? -1 : 1);
}

// J_{K0}(N) through the Kauffman bracket fusion pipeline; independent oracle
// for colored_jones.
inline LaurentPoly bracket_fusion(long N) {
  if (N < 1) throw std::domain_error("bracket_fusion: N < 1");
  const long n = N - 1;
  if (n == 0) return LaurentPoly(1);
  LaurentPoly total;
  for (long k = 0; k <= 2 * n; k += 2) {
    for (long l = std::abs(n - k); l <= n + k; l += 2) {
      LaurentPoly t = loop_value(k) * loop_value(l);
      LaurentPoly dk = delta_coeff(k, n, n);
      LaurentPoly dl = delta_coeff(l, k, n);
      for (int r = 0; r < 4; ++r) t *= dk;
      for (int r = 0; r < 7; ++r) t *= dl;
      t *= tetrahedron_renorm(n, n, k, n, l, k);
      // divide by the two renormalized trihedra
      //   theta'(n,n,k)  = (-1)^{a1} [a1+1]! [k/2]!^2 [n-k/2]!
      //   theta'(l,k,n)  = (-1)^{a2} [a2+1]! [i2]![j2]![k2]!
      // where a1 = n+k/2, a2 = (n+k+l)/2.  Everything but [a1+1]! divides
      // each (k,l)-term exactly; [a1+1]! does not, so clear it by
      // multiplying with [2n+1,a1+1]! and divide the total by [2n+1]! once.
      auto [i1, j1, k1] = internal_colors(n, n, k);
      auto [i2, j2, k2] = internal_colors(l, k, n);
      const long a1 = i1 + j1 + k1, a2 = i2 + j2 + k2;
      t = exact_div(t, qfact(i1) * qfact(j1) * qfact(k1));
      t = exact_div(t, qfact(i2) * qfact(j2) * qfact(k2));
      t = exact_div(t, qfact(a2 + 1));
      t *= qfact_ratio(2 * n + 1, a1 + 1);
      if ((a1 + a2) & 1) t = -t;
      total += t;
    }
  }
  // mu(n)^{-18}: A-exponent -18(n^2+2n), sign (+1)^{18n}
  total = total.shifted(-36 * (n * n + 2 * n));
  LaurentPoly J = exact_div(total, qfact(2 * n + 1) * qint(n + 1));
  return (n & 1) ? -J : J;
}

inline void export_table(long N_max, const std::string& path) {
  if (N_max < 1) throw std::domain_error("export_table: N_max < 1");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_table: cannot open " + path);
  for (long N = 1; N <= N_max; ++N) {
    out << "{\"n\":" << N << ",\"jones\":" << colored_jones(N).to_json()
        << "}\n";
    if (!out) throw std::runtime_error("export_table: write failed");
  }
}

}  // namespace vcwb
