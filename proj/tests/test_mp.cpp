#include <catch2/catch_amalgamated.hpp>

#include "vcwb/jet.hpp"
#include "vcwb/jones.hpp"

using namespace vcwb;

// J(N) at q0 = exp(2 pi i/N) through the exact polynomial: x = q^{1/8}
// evaluated at exp(2 pi i/(8N))
static BigComplex exact_value(long N, unsigned digits) {
  return eval_on_unit_circle(colored_jones(N), 1, 8 * N, digits);
}

TEST_CASE("unit-circle evaluation basics") {
  set_working_digits(50);
  // [2] at x = exp(2 pi i/16): x^4 + x^-4 = 2 cos(pi/2) = 0
  BigComplex v = eval_on_unit_circle(qint(2), 1, 16, 50);
  CHECK(v.abs() < mpreal("1e-45"));
  // constant polynomial
  BigComplex c = eval_on_unit_circle(LaurentPoly(7), 3, 11, 50);
  CHECK((c - BigComplex(7)).abs() < mpreal("1e-45"));
  CHECK_THROWS_AS(eval_on_unit_circle(qint(2), 1, 0, 50), std::domain_error);
  CHECK_THROWS_AS(eval_on_unit_circle(qint(2), 1, 16, 8), std::domain_error);
}

TEST_CASE("pole-cleared evaluator agrees with the exact polynomial") {
  const unsigned digits = 80;
  for (long N = 2; N <= 12; ++N) {
    INFO("N = " << N);
    EvalResult r = eval_jones_at_root_full(N, digits);
    CHECK(r.residual_ok);
    CHECK(r.residual_v < mpreal("1e-10"));
    CHECK(r.residual_d1 < mpreal("1e-10"));
    BigComplex ref = exact_value(N, digits);
    mpreal rel = (r.value - ref).abs() / ref.abs();
    INFO("rel = " << rel.str(8));
    CHECK(rel <= mpreal("1e-40"));
  }
}

TEST_CASE("evaluator input validation") {
  CHECK_THROWS_AS(eval_jones_at_root(1, 80), std::domain_error);
  CHECK_THROWS_AS(eval_jones_at_root(5, 8), std::domain_error);
}

TEST_CASE("jet table quantum integers vanish and peak where they should") {
  long n = 9;
  QJetTables tab = build_tables(n, 60);
  // [n+1] has a simple zero at B0
  CHECK(tab.qi(n + 1).v.abs() < mpreal("1e-55"));
  CHECK(tab.qi(n + 1).d1.abs() > mpreal(1));
  // [m] for 1 <= m <= n is nonzero at B0
  for (long m = 1; m <= n; ++m) CHECK(tab.qi(m).v.abs() > mpreal("0.1"));
  // [1] = 1 identically
  CHECK((tab.qi(1).v - BigComplex(1)).abs() < mpreal("1e-55"));
  CHECK(tab.qi(1).d1.abs() < mpreal("1e-55"));
}

TEST_CASE("st_split reconstructs [n+1] derivatives at B0") {
  long n = 7;
  QJetTables tab = build_tables(n, 60);
  auto [S, T] = st_split(n, tab);
  // [n+1] = T*S*(B-B0): at B0 the product rule gives
  //   [n+1]'(B0)  = T*S
  //   [n+1]''(B0) = 2 (T*S)'
  Jet2 TS = T * S;
  CHECK((tab.qi(n + 1).d1 - TS.v).abs() < mpreal("1e-50"));
  CHECK((tab.qi(n + 1).d2 - TS.d1 * 2L).abs() < mpreal("1e-49"));
}
