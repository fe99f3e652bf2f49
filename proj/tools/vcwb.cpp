// Batch front-end: exact Jones tables, VC(n) scans, asymptotic fits, and
// the A-polynomial eigenvalue analysis as subcommands.
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcwb/apoly.hpp"
#include "vcwb/jones.hpp"
#include "vcwb/vc.hpp"

namespace {

constexpr const char* kSchemaVersion = "1";

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

[[noreturn]] void fail(ExitCode code, const std::string& type,
                       const std::string& message) {
  nlohmann::json err{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  std::exit(code);
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  out << body;
  if (!out) fail(kIo, "io", "cannot write " + path);
}

int run_jones(long n_max, const std::string& out) {
  for (long N = 1; N <= n_max; ++N) {
    auto t0 = std::chrono::steady_clock::now();
    vcwb::colored_jones(N);  // warms the process; export recomputes cheaply
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "J(" << N << ") "
              << std::chrono::duration<double>(t1 - t0).count() << "s\n";
  }
  vcwb::export_table(n_max, out);
  return kOk;
}

int run_vc_scan(long start, long end, long step, unsigned digits,
                const std::string& cache, const std::string& out,
                const std::string& format, bool lenient) {
  vcwb::ScanProgress progress;
  auto samples = vcwb::scan(start, end, step, digits, cache, &progress,
                            &std::cerr, lenient);
  std::cerr << "computed " << progress.computed << ", cache hits "
            << progress.cache_hits << "\n";
  if (format == "json") {
    nlohmann::json j{{"schema-version", kSchemaVersion},
                     {"samples", nlohmann::json::array()}};
    for (const auto& s : samples)
      j["samples"].push_back(nlohmann::json::parse(s.to_json()));
    write_text(out, j.dump(2) + "\n");
  } else {
    if (out.empty() || out == "-")
      fail(kValidation, "validation", "csv/gnuplot output needs --out FILE");
    vcwb::export_csv(samples, out, format == "gnuplot");
  }
  return kOk;
}

int run_fit(const std::string& cache, long n_min, long n_max, unsigned digits,
            const std::string& out) {
  if (cache.empty())
    fail(kValidation, "validation", "fit needs --cache FILE with scan data");
  vcwb::VCCache store(cache);
  std::vector<vcwb::VCSample> samples;
  std::vector<long> missing;
  for (long n = n_min; n <= n_max; ++n) {
    unsigned d = digits ? digits : vcwb::default_digits(n);
    if (auto hit = store.find(n, d))
      samples.push_back(*hit);
    else
      missing.push_back(n);
  }
  if (!missing.empty()) {
    std::string list;
    for (size_t i = 0; i < missing.size() && i < 20; ++i)
      list += (i ? "," : "") + std::to_string(missing[i]);
    if (missing.size() > 20) list += ",...";
    fail(kValidation, "validation",
         "cache lacks " + std::to_string(missing.size()) +
             " samples in the fit window: n=" + list);
  }
  vcwb::FitResult fit = vcwb::fit_asymptotics(samples, n_min, n_max);
  vcwb::VolumeReport vol = vcwb::volume_consistency(fit);
  vcwb::MonotonicityReport mono = vcwb::monotonicity_report(samples);
  vcwb::PeriodicityReport per = vcwb::periodicity_report(samples);
  nlohmann::json j{
      {"schema-version", kSchemaVersion},
      {"window", {{"n_min", n_min}, {"n_max", n_max}}},
      {"fit",
       {{"c_const", fit.c_const},
        {"c_inv", fit.c_inv},
        {"c_logn", fit.c_logn},
        {"residual_max", fit.residual_max}}},
      {"volume",
       {{"vol", vol.vol},
        {"const_deviation", vol.const_deviation},
        {"logn_over_2pi", vol.logn_over_2pi},
        {"logn_deviation", vol.logn_deviation}}},
      {"monotonicity",
       {{"violations", mono.violations},
        {"violation_ns", mono.violation_ns},
        {"argmin_n", mono.argmin_n},
        {"strictly_decreasing", mono.strictly_decreasing}}},
      {"periodicity",
       {{"dominant_found", per.dominant_found},
        {"dominant_period", per.dominant_period},
        {"power_ratio", per.power_ratio}}}};
  write_text(out, j.dump(2) + "\n");
  return kOk;
}

int run_apoly(long grid, const std::string& out, const std::string& csv) {
  vcwb::EigenTrack tr = vcwb::track(grid);
  if (!csv.empty()) vcwb::export_eigen_csv(tr, csv);
  double I1 = vcwb::log_modulus_integral(tr, tr.l1);
  double I2 = vcwb::log_modulus_integral(tr, tr.l2);
  vcwb::Volumes v = vcwb::extract_volumes(I1, I2);
  auto ent = vcwb::entropy_candidates(v);
  nlohmann::json j{
      {"schema-version", kSchemaVersion},
      {"grid", grid},
      {"integrals", {{"log_lambda1", I1}, {"log_lambda2", I2}}},
      {"volumes", {{"V1", v.V1}, {"V2", v.V2}, {"V3", v.V3}}},
      {"entropy_candidates", ent},
      {"alexander_abs_sum", vcwb::alexander_abs_sum()}};
  write_text(out, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume Conjecture workbench for the twisted (3,8) torus knot"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  // shared config: flags > environment > defaults
  unsigned digits = 0;  // 0 = per-n policy default
  std::string cache;
  long threads = 1;
  app.add_option("--digits", digits, "working precision (0 = policy default)")
      ->envname("VCWB_DIGITS");
  app.add_option("--cache", cache, "JSONL sample cache path")
      ->envname("VCWB_CACHE");
  app.add_option("--threads", threads, "worker threads")
      ->envname("VCWB_THREADS")
      ->check(CLI::PositiveNumber);

  auto* jones = app.add_subcommand("jones", "export exact Jones polynomials");
  long n_max = 7;
  std::string jones_out = "jones_table.jsonl";
  jones->add_option("--n-max", n_max, "largest color N")->check(CLI::PositiveNumber);
  jones->add_option("--out", jones_out, "output JSONL path");

  auto* vcscan = app.add_subcommand("vc-scan", "scan VC(n) on a range");
  long start = 2, end = 50, step = 1;
  std::string scan_out = "-", format = "csv";
  vcscan->add_option("--start", start, "first n");
  vcscan->add_option("--end", end, "last n");
  vcscan->add_option("--step", step, "stride");
  vcscan->add_option("--out", scan_out, "output path (- = stdout, json only)");
  vcscan->add_option("--format", format, "csv | json | gnuplot")
      ->check(CLI::IsMember({"csv", "json", "gnuplot"}));
  bool lenient = false;
  vcscan->add_flag("--lenient", lenient,
                   "no residual safeguard, no precision escalation "
                   "(round-off pathology studies)");

  auto* fit = app.add_subcommand("fit", "asymptotic fit + reports from cache");
  long n_min = 21, n_max_fit = 250;
  std::string fit_out = "-";
  fit->add_option("--n-min", n_min, "fit window start");
  fit->add_option("--n-max", n_max_fit, "fit window end");
  fit->add_option("--out", fit_out, "report path (- = stdout)");

  auto* apoly = app.add_subcommand("apoly", "A-polynomial eigenvalue analysis");
  long grid = 256;
  std::string apoly_out = "-", apoly_csv;
  apoly->add_option("--grid", grid, "t-grid size")->check(CLI::PositiveNumber);
  apoly->add_option("--out", apoly_out, "report path (- = stdout)");
  apoly->add_option("--eigen-csv", apoly_csv, "eigenvalue CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::ostringstream msg;
    app.exit(e, msg, msg);
    fail(kValidation, "validation", msg.str());
  }

  try {
    if (jones->parsed()) return run_jones(n_max, jones_out);
    if (vcscan->parsed())
      return run_vc_scan(start, end, step, digits, cache, scan_out, format,
                         lenient);
    if (fit->parsed())
      return run_fit(cache, n_min, n_max_fit, digits, fit_out);
    if (apoly->parsed()) return run_apoly(grid, apoly_out, apoly_csv);
  } catch (const std::domain_error& e) {
    fail(kValidation, "validation", e.what());
  } catch (const std::runtime_error& e) {
    std::string w = e.what();
    if (w.find("cache") != std::string::npos ||
        w.find("open") != std::string::npos ||
        w.find("write") != std::string::npos)
      fail(kIo, "io", w);
    fail(kNumerical, "numerical", w);
  }
  return kOk;
}
