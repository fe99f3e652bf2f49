#include <catch2/catch_amalgamated.hpp>

#include "vcwb/laurent.hpp"

using namespace vcwb;

TEST_CASE("qint basic values") {
  CHECK(qint(0).is_zero());
  CHECK(qint(1) == LaurentPoly(1));
  // [2] = x^4 + x^-4
  LaurentPoly two = LaurentPoly::monomial(4) + LaurentPoly::monomial(-4);
  CHECK(qint(2) == two);
  // [3] = x^8 + 1 + x^-8
  LaurentPoly three = LaurentPoly::monomial(8) + LaurentPoly(1) +
                      LaurentPoly::monomial(-8);
  CHECK(qint(3) == three);
  for (long m = 1; m <= 20; ++m) {
    CHECK(qint(m).palindromic());
    CHECK(qint(m).max_exp() == 4 * (m - 1));
    CHECK(qint(m).min_exp() == -4 * (m - 1));
  }
}

TEST_CASE("qfact and qfact_ratio") {
  CHECK(qfact(0) == LaurentPoly(1));
  CHECK(qfact(1) == LaurentPoly(1));
  for (long m = 2; m <= 10; ++m) CHECK(qfact(m) == qfact(m - 1) * qint(m));
  for (long a = 0; a <= 10; ++a)
    for (long b = 0; b <= a; ++b)
      CHECK(qfact_ratio(a, b) * qfact(b) == qfact(a));
  CHECK_THROWS_AS(qfact_ratio(3, 5), std::domain_error);
}

TEST_CASE("qbinom matches factorial definition") {
  for (long n = 0; n <= 12; ++n)
    for (long k = 0; k <= n; ++k) {
      LaurentPoly lhs = qbinom(n, k) * qfact(k) * qfact(n - k);
      CHECK(lhs == qfact(n));
    }
}

TEST_CASE("qbinom symmetry and palindromicity") {
  for (long n = 0; n <= 14; ++n)
    for (long k = 0; k <= n; ++k) {
      CHECK(qbinom(n, k) == qbinom(n, n - k));
      CHECK(qbinom(n, k).palindromic());
    }
  CHECK(qbinom(5, -1).is_zero());
  CHECK(qbinom(5, 6).is_zero());
}

TEST_CASE("exact_div recovers factors") {
  LaurentPoly a = qfact(7);
  LaurentPoly b = qbinom(9, 4) + LaurentPoly::monomial(-3, 5);
  CHECK(exact_div(a * b, a) == b);
  CHECK(exact_div(a * b, b) == a);
  CHECK(exact_div(LaurentPoly(), a).is_zero());
}

TEST_CASE("exact_div rejects inexact division") {
  CHECK_THROWS_AS(exact_div(qint(3), qint(2)), std::runtime_error);
  CHECK_THROWS_AS(exact_div(LaurentPoly(3), LaurentPoly(2)),
                  std::runtime_error);
  CHECK_THROWS_AS(exact_div(qint(3), LaurentPoly()), std::domain_error);
}

TEST_CASE("arithmetic identities") {
  LaurentPoly p = qbinom(8, 3);
  LaurentPoly q = qfact(5);
  CHECK(p + q - q == p);
  CHECK((p - p).is_zero());
  CHECK(p.shifted(12).shifted(-12) == p);
  CHECK(p.scaled(3) == p + p + p);
  CHECK((-p) + p == LaurentPoly());
}

TEST_CASE("to_json shape") {
  LaurentPoly p = LaurentPoly::monomial(-8, -2) + LaurentPoly::monomial(4, 1);
  CHECK(p.to_json() ==
        "{\"var\":\"q^(1/8)\",\"terms\":[[-8,\"-2\"],[4,\"1\"]]}");
  CHECK(LaurentPoly().to_json() == "{\"var\":\"q^(1/8)\",\"terms\":[]}");
}
