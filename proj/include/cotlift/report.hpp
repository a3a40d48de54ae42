#pragma once

#include "cotlift/verify.hpp"

#include <string>
#include <vector>

namespace cotlift {

inline constexpr const char* kToolVersion = "0.1.0";

/* Everything a run needs; mirrors the CLI flags one-to-one. */
struct RunConfig {
  int n = 3;
  double c = -1.0;
  double A = 1.0;
  std::string profile = "einstein";  // einstein | sqrt | affine | sasaki
  double B = 0.0;      // radicand slope for profile=sqrt (0 -> -c)
  double slope = 1.0;  // for profile=affine
  std::vector<std::string> suites;  // expanded, ordered
  SampleSpec sample;
  Tolerances tol;
  std::string out_path;        // empty -> stdout only
  std::string format = "json"; // json | text
};

struct VerificationReport {
  RunConfig config;
  std::vector<SuiteResult> suites;
  double runtime_seconds = 0.0;
  bool pass = false;
};

/* "all" -> the five suites in canonical order; rejects unknown names. */
std::vector<std::string> expand_suites(std::vector<std::string> names);

LiftProfile profile_from_config(const RunConfig& cf);

/* Runs every requested suite with the shared sampling plan and stamps the
   wall time.  The single entry point behind both the CLI and the golden
   comparisons. */
VerificationReport run_suites(const RunConfig& cf);

/* Byte-stable JSON: fixed key order, %.17g doubles, LF line ends.
   runtime_seconds is the last key so goldens can mask a single line. */
std::string render_json(const VerificationReport& rep);
std::string render_text(const VerificationReport& rep);

/* tmp-file + rename so a crashed run never leaves a torn report */
void write_atomic(const std::string& path, const std::string& content);

/* profile scan: the scalar invariants along a t-grid, for plotting */
struct ScanRow {
  double t, u, u_prime, v, w, u_plus_2tv, u2_minus_2ct, f_minus_c, gamma, a;
};
std::vector<ScanRow> profile_scan(const LiftProfile& prof, int n, double c,
                                  double t_max, int steps);
std::string render_csv(const std::vector<ScanRow>& rows);

}  // namespace cotlift
