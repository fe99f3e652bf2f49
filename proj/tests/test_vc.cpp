#include <cstdio>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "vcwb/vc.hpp"

using namespace vcwb;

TEST_CASE("vc(2) is pi log 5") {
  auto v = vc(2, 80);
  CHECK(std::abs(v.real() - M_PI * std::log(5.0)) < 1e-12);
  CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("lenient sampling matches strict where both succeed") {
  VCSample a = vc_sample(10, 80);
  VCSample b = vc_sample(10, 80, true);
  CHECK(a.vc_re == b.vc_re);
  CHECK(a.vc_im == b.vc_im);
  CHECK(a.j_re == b.j_re);
}

TEST_CASE("default digits policy") {
  CHECK(default_digits(250) == 80);
  CHECK(default_digits(260) == 80);
  CHECK(default_digits(261) == 200);
  CHECK(default_digits(550) == 200);
}

TEST_CASE("scan returns the window and caches idempotently") {
  std::string path = "scan_cache_test.jsonl";
  std::remove(path.c_str());
  ScanProgress p1, p2;
  auto s1 = scan(2, 8, 1, 80, path, &p1);
  REQUIRE(s1.size() == 7);
  CHECK(p1.computed == 7);
  CHECK(p1.cache_hits == 0);
  CHECK(std::abs(s1[0].vc_re - M_PI * std::log(5.0)) < 1e-12);
  auto s2 = scan(2, 8, 1, 80, path, &p2);
  CHECK(p2.computed == 0);
  CHECK(p2.cache_hits == 7);
  CHECK(s1 == s2);  // bit-for-bit round trip through the cache
  std::remove(path.c_str());
}

TEST_CASE("single-point scan without cache") {
  auto s = scan(2, 2, 1, 80, "");
  REQUIRE(s.size() == 1);
  CHECK(s[0].n == 2);
  CHECK(std::abs(s[0].vc_re - M_PI * std::log(5.0)) < 1e-12);
}

TEST_CASE("scan validates its range") {
  CHECK_THROWS_AS(scan(1, 5, 1, 80, ""), std::domain_error);
  CHECK_THROWS_AS(scan(5, 4, 1, 80, ""), std::domain_error);
  CHECK_THROWS_AS(scan(2, 5, 0, 80, ""), std::domain_error);
}

TEST_CASE("corrupt cache is reported with its line number") {
  std::string path = "corrupt_cache_test.jsonl";
  {
    std::ofstream out(path);
    out << VCSample{2, 80, "5", "0", 5.06, 0.0, 0.1}.to_json() << "\n";
    out << "{not json\n";
  }
  try {
    scan(2, 3, 1, 80, path);
    FAIL("expected cache corruption error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::remove(path.c_str());
}

static std::vector<VCSample> synthetic(double c0, double c1, double c2,
                                       long n_min, long n_max) {
  std::vector<VCSample> v;
  for (long n = n_min; n <= n_max; ++n) {
    VCSample s;
    s.n = n;
    s.vc_re = c0 + c1 / n + c2 * std::log(double(n)) / n;
    v.push_back(s);
  }
  return v;
}

TEST_CASE("fit recovers an exact model") {
  auto data = synthetic(3.5, -5.5, 9.3, 21, 250);
  FitResult f = fit_asymptotics(data);
  CHECK(std::abs(f.c_const - 3.5) < 1e-10);
  CHECK(std::abs(f.c_inv + 5.5) < 1e-8);
  CHECK(std::abs(f.c_logn - 9.3) < 1e-8);
  CHECK(f.residual_max < 1e-10);
}

TEST_CASE("fit rejects tiny or degenerate input") {
  auto data = synthetic(1, 1, 1, 21, 23);
  CHECK_THROWS_AS(fit_asymptotics(data), std::runtime_error);
}

TEST_CASE("volume consistency report") {
  FitResult f;
  f.c_const = 3.4750687755;
  f.c_logn = 9.2824952;
  VolumeReport r = volume_consistency(f);
  CHECK(std::abs(r.const_deviation - 8.2e-4) < 1e-4);
  CHECK(std::abs(r.logn_over_2pi - 1.47735) < 1e-4);
  CHECK(std::abs(r.logn_deviation + 0.0226) < 1e-3);
}

TEST_CASE("monotonicity report") {
  std::vector<VCSample> dec;
  for (long n = 10; n <= 40; ++n)
    dec.push_back({n, 80, "", "", 10.0 - 0.1 * n, 0, 0});
  MonotonicityReport r = monotonicity_report(dec);
  CHECK(r.strictly_decreasing);
  CHECK(r.violations == 0);
  CHECK(r.argmin_n == 40);

  // valley shape: minimum in the middle
  std::vector<VCSample> valley;
  for (long n = 10; n <= 40; ++n)
    valley.push_back({n, 80, "", "", 0.01 * (n - 25.0) * (n - 25.0), 0, 0});
  MonotonicityReport rv = monotonicity_report(valley);
  CHECK_FALSE(rv.strictly_decreasing);
  CHECK(rv.argmin_n == 25);
  CHECK(rv.violations == 15);
}

TEST_CASE("periodicity report flags a 12-periodic signal") {
  std::vector<VCSample> v;
  for (long n = 0; n < 240; ++n)
    v.push_back({n + 2, 80, "", "", 0, std::sin(2 * M_PI * n / 12.0), 0});
  PeriodicityReport r = periodicity_report(v);
  CHECK(r.dominant_found);
  CHECK(std::abs(r.dominant_period - 12.0) < 0.5);
}

TEST_CASE("periodicity report stays quiet on constant input") {
  std::vector<VCSample> v;
  for (long n = 0; n < 240; ++n) v.push_back({n + 2, 80, "", "", 0, 3.25, 0});
  PeriodicityReport r = periodicity_report(v);
  CHECK_FALSE(r.dominant_found);
}

TEST_CASE("csv export") {
  std::vector<VCSample> v{{2, 80, "5", "0", 5.0561983, 0.0, 0.1}};
  export_csv(v, "csv_export_test.csv");
  std::ifstream in("csv_export_test.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "n,vc_re,vc_im");
  CHECK(row.substr(0, 2) == "2,");
  std::remove("csv_export_test.csv");

  export_csv(v, "gnuplot_export_test.dat", true);
  std::ifstream gin("gnuplot_export_test.dat");
  std::getline(gin, header);
  CHECK(header == "# n vc_re vc_im");
  std::remove("gnuplot_export_test.dat");
}
