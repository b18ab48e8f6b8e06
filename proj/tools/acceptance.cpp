// Runs the fourteen acceptance criteria and prints one PASS/FAIL line each.
// Exact comparisons throughout; each criterion also carries a wall-clock
// budget in seconds.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "ncd/verify.hpp"

using namespace ncd;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<SuiteReport(Workspace&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool extended = false;
  bool verbose = false;
  std::string cache;
  int threads = 1;
  app.add_flag("--extended", extended, "Include A6, A7, D6, D7 in the reference table check");
  app.add_flag("--verbose", verbose, "Print every individual check");
  app.add_option("--cache-dir", cache, "NC cache directory");
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::optional<std::filesystem::path> cache_dir;
  if (!cache.empty()) cache_dir = cache;
  Workspace ws(threads, cache_dir);

  const auto E7 = TypeLabel::parse("E7");
  const auto E8 = TypeLabel::parse("E8");
  const std::vector<Criterion> criteria = {
      {1, std::string("reference decomposition numbers by brute force") + (extended ? " (extended)" : ""),
       extended ? 1800.0 : 120.0,
       [&](Workspace& w) {
         SuiteReport r = verify_reference_numbers(w, reference_ambients(false));
         if (extended) r.append(verify_reference_numbers(w, reference_ambients(true)));
         return r;
       }},
      {2, "type A closed form equals brute force, n <= 5", 120.0, [](Workspace& w) { return verify_type_a(w, 5); }},
      {3, "characteristic polynomials, direct and recursive", 900.0,
       [](Workspace& w) { return verify_characteristic(w); }},
      {4, "zeta polynomials of NC and NC^m", 120.0, [](Workspace& w) { return verify_zeta(w); }},
      {5, "multichain identity for A2, A3, D4", 120.0,
       [](Workspace& w) { return verify_zeta_identity(w, labels({"A2", "A3", "D4"})); }},
      {6, "assembled M-triangle equals Moebius sum of NC^m", 60.0,
       [](Workspace& w) { return verify_mtriangle_oracle(w); }},
      {7, "E7 dual M-triangle equals reference", 300.0, [&](Workspace& w) { return verify_reference_triangle(w, E7); }},
      {8, "E8 dual M-triangle and spot values", 3600.0,
       [&](Workspace& w) {
         SuiteReport r = verify_reference_triangle(w, E8);
         r.append(verify_counts(w, E8, {{"D4", 325}, {"D4,A4", 15}, {"A4,A1*A3", 390}, {"A5,A1*A2", 390}, {"D5,A1*A2", 195}}));
         return r;
       }},
      {9, "E7 brute-force pins", 600.0,
       [&](Workspace& w) { return verify_counts(w, E7, {{"A1^4,A1^3", 9}, {"A1^2*A2,A1^3", 54}}); }},
      {10, "linear system replay for E6, D6, E7, E8", 3600.0,
       [](Workspace& w) { return verify_linsys(w, labels({"E6", "D6", "E7", "E8"})); }},
      {11, "reflection orbit sizes and case table", 120.0,
       [](Workspace&) {
         SuiteReport r = verify_orbit_multisets();
         r.append(verify_orbits(labels({"A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "D7", "E6", "E7", "E8"})));
         return r;
       }},
      {12, "reciprocity of symbolic M-triangles", 3600.0,
       [](Workspace& w) {
         return verify_reciprocity(w, labels({"A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "E7", "E8"}));
       }},
      {13, "F-triangles of E7 and E8 for m = 1, 2, 3", 3600.0,
       [](Workspace& w) { return verify_f_transform(w, labels({"E7", "E8"}), 3); }},
      {14, "absolute length equals reflection length on W(A3), W(D4)", 60.0,
       [](Workspace&) { return verify_absolute_length(labels({"A3", "D4"})); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r;
    std::string error;
    try {
      r = c.run(ws);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs <= c.budget_seconds;
    bool pass = error.empty() && r.ok() && in_time;
    if (!pass) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << r.passed() << "/"
              << r.checks.size() << " checks, " << timing << "]";
    if (!error.empty()) std::cout << " error: " << error;
    if (!in_time) std::cout << " over budget";
    std::cout << std::endl;
    for (const auto& ch : r.checks)
      if (verbose || !ch.pass)
        std::cerr << "    " << (ch.pass ? "ok   " : "FAIL ") << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  }
  return failures == 0 ? 0 : 1;
}
