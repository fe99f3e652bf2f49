#pragma once

#include <string>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "laurent.hpp"

namespace vcwb {

// dynamic-precision real; precision is controlled via set_working_digits()
using mpreal = boost::multiprecision::mpfr_float;

inline void set_working_digits(unsigned digits) {
  mpreal::default_precision(digits);
}

inline mpreal pi_val() { return boost::math::constants::pi<mpreal>(); }

struct BigComplex {
  mpreal re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(mpreal r, mpreal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(long v) : re(v), im(0) {}

  unsigned precision() const { return re.precision(); }

  static BigComplex polar(const mpreal& angle) {
    return BigComplex(cos(angle), sin(angle));
  }

  BigComplex operator+(const BigComplex& o) const {
    return BigComplex(re + o.re, im + o.im);
  }
  BigComplex operator-(const BigComplex& o) const {
    return BigComplex(re - o.re, im - o.im);
  }
  BigComplex operator*(const BigComplex& o) const {
    return BigComplex(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  BigComplex operator/(const BigComplex& o) const {
    mpreal n = o.re * o.re + o.im * o.im;
    return BigComplex((re * o.re + im * o.im) / n,
                      (im * o.re - re * o.im) / n);
  }
  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex operator-() const { return BigComplex(-re, -im); }
  BigComplex conj() const { return BigComplex(re, -im); }

  BigComplex operator*(long s) const { return BigComplex(re * s, im * s); }
  BigComplex operator*(const mpreal& s) const {
    return BigComplex(re * s, im * s);
  }

  mpreal abs() const { return hypot(re, im); }
};

// p evaluated at x = exp(2*pi*i*num/den); angle reduced exactly per term
// before any trig.  Deterministic ascending-exponent summation.
inline BigComplex eval_on_unit_circle(const LaurentPoly& p, long long num,
                                      long long den, unsigned digits) {
  if (digits < 16) throw std::domain_error("eval_on_unit_circle: digits < 16");
  if (den == 0) throw std::domain_error("eval_on_unit_circle: zero denominator");
  set_working_digits(digits + 10);
  const mpreal two_pi = 2 * pi_val();
  BigComplex acc;
  for (const auto& [e, c] : p.coeffs) {
    long long r = (static_cast<long long>(e) * num) % den;
    if (r < 0) r += (den < 0 ? -den : den);
    mpreal angle = two_pi * r / den;
    mpreal cf(c);
    acc.re += cf * cos(angle);
    acc.im += cf * sin(angle);
  }
  set_working_digits(digits);
  return BigComplex(mpreal(acc.re, digits), mpreal(acc.im, digits));
}

}  // namespace vcwb
