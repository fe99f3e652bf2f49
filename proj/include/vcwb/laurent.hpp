#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace vcwb {

using bigint = boost::multiprecision::cpp_int;

// Integer-coefficient Laurent polynomial in x = q^{1/8}.
// q = x^8, B = q^{1/2} = x^4, A = q^{1/4} = x^2.
struct LaurentPoly {
  std::map<long, bigint> coeffs;  // exponent -> nonzero coefficient

  LaurentPoly() = default;
  explicit LaurentPoly(long c) {
    if (c != 0) coeffs[0] = c;
  }

  static LaurentPoly monomial(long exp, bigint c = 1) {
    LaurentPoly p;
    if (c != 0) p.coeffs[exp] = std::move(c);
    return p;
  }

  bool is_zero() const { return coeffs.empty(); }

  long min_exp() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
  long max_exp() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

  bool operator==(const LaurentPoly& o) const { return coeffs == o.coeffs; }
  bool operator!=(const LaurentPoly& o) const { return coeffs != o.coeffs; }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs) {
      auto it = coeffs.find(e);
      if (it == coeffs.end()) {
        coeffs.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
      }
    }
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs) {
      auto it = coeffs.find(e);
      if (it == coeffs.end()) {
        coeffs.emplace(e, -c);
      } else {
        it->second -= c;
        if (it->second == 0) coeffs.erase(it);
      }
    }
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    for (const auto& [ea, ca] : a.coeffs)
      for (const auto& [eb, cb] : b.coeffs) {
        auto it = r.coeffs.find(ea + eb);
        if (it == r.coeffs.end()) {
          r.coeffs.emplace(ea + eb, ca * cb);
        } else {
          it->second += ca * cb;
          if (it->second == 0) r.coeffs.erase(it);
        }
      }
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs) r.coeffs.emplace(e, -c);
    return r;
  }

  LaurentPoly scaled(long s) const {
    LaurentPoly r;
    if (s == 0) return r;
    for (const auto& [e, c] : coeffs) r.coeffs.emplace(e, c * s);
    return r;
  }

  LaurentPoly shifted(long de) const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs) r.coeffs.emplace(e + de, c);
    return r;
  }

  bool palindromic() const {
    for (const auto& [e, c] : coeffs) {
      auto it = coeffs.find(-e);
      if (it == coeffs.end() || it->second != c) return false;
    }
    return true;
  }

  // {"var":"q^(1/8)","terms":[[exp,"coeff"],...]} sorted by exponent
  std::string to_json() const {
    std::ostringstream os;
    os << "{\"var\":\"q^(1/8)\",\"terms\":[";
    bool first = true;
    for (const auto& [e, c] : coeffs) {
      if (!first) os << ",";
      first = false;
      os << "[" << e << ",\"" << c.str() << "\"]";
    }
    os << "]}";
    return os.str();
  }
};

inline LaurentPoly qint(long n) {
  if (n < 0) throw std::domain_error("qint: n must be nonnegative");
  LaurentPoly p;
  for (long i = 0; i < n; ++i) p.coeffs[4 * (n - 1 - 2 * i)] = 1;
  return p;
}

inline LaurentPoly qfact(long n) {
  if (n < 0) throw std::domain_error("qfact: n must be nonnegative");
  LaurentPoly p(1);
  for (long m = 2; m <= n; ++m) p *= qint(m);
  return p;
}

// [a,b]! = [a]!/[b]! = [b+1][b+2]...[a]
inline LaurentPoly qfact_ratio(long a, long b) {
  if (b > a) throw std::domain_error("qfact_ratio: b > a");
  LaurentPoly p(1);
  for (long m = b + 1; m <= a; ++m) p *= qint(m);
  return p;
}

// Gaussian binomial via the Pascal recursion of the paper:
// [n k] = q^{-k/2} [n-1 k] + q^{(n-k)/2} [n-1 k-1], memoized.
inline LaurentPoly qbinom(long n, long k) {
  if (k < 0 || k > n) return LaurentPoly();
  if (k == 0 || k == n) return LaurentPoly(1);
  static std::map<std::pair<long, long>, LaurentPoly> memo;
  static std::shared_mutex mx;
  {
    std::shared_lock lk(mx);
    auto it = memo.find({n, k});
    if (it != memo.end()) return it->second;
  }
  LaurentPoly r = qbinom(n - 1, k).shifted(-4 * k) +
                  qbinom(n - 1, k - 1).shifted(4 * (n - k));
  std::unique_lock lk(mx);
  return memo.emplace(std::make_pair(n, k), std::move(r)).first->second;
}

// Exact quotient in Z[x^{+-1}]; nonzero remainder or non-dividing leading
// coefficient is always a bug upstream, so it throws.
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw std::domain_error("exact_div: divide by zero poly");
  if (p.is_zero()) return LaurentPoly();
  LaurentPoly rem = p;
  LaurentPoly q;
  const long dlead = d.max_exp();
  const bigint& dc = d.coeffs.rbegin()->second;
  // an exact quotient has span(p)-span(d) worth of terms at most; anything
  // beyond that means the division is inexact and would never terminate
  const long max_steps =
      (p.max_exp() - p.min_exp()) - (dlead - d.min_exp()) + 2;
  long steps = 0;
  while (!rem.is_zero()) {
    if (++steps > max_steps)
      throw std::runtime_error("exact_div: nonzero remainder (guard)");
    long rlead = rem.max_exp();
    if (rlead - rem.min_exp() < dlead - d.min_exp())
      throw std::runtime_error("exact_div: nonzero remainder");
    const bigint& rc = rem.coeffs.rbegin()->second;
    if (rc % dc != 0)
      throw std::runtime_error("exact_div: leading coefficient not divisible");
    bigint qc = rc / dc;
    long qe = rlead - dlead;
    q.coeffs[qe] = qc;
    for (const auto& [e, c] : d.coeffs) {
      auto it = rem.coeffs.find(e + qe);
      bigint v = (it == rem.coeffs.end()) ? bigint(0) : it->second;
      v -= c * qc;
      if (v == 0) {
        if (it != rem.coeffs.end()) rem.coeffs.erase(it);
      } else if (it == rem.coeffs.end()) {
        rem.coeffs.emplace(e + qe, std::move(v));
      } else {
        it->second = std::move(v);
      }
    }
  }
  return q;
}

}  // namespace vcwb
