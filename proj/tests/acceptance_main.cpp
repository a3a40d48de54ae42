// Acceptance gate: one line per criterion, tolerances pinned here rather
// than read from anywhere else.  argv[1] = golden canonical report.

#include "cotlift/report.hpp"
#include "cotlift/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cotlift;

namespace {

int failures = 0;

void criterion(int num, bool pass, const std::string& label,
               const std::string& detail) {
  std::printf("criterion %d %s  %s  (%s)\n", num, pass ? "PASS" : "FAIL",
              label.c_str(), detail.c_str());
  if (!pass) ++failures;
}

Tolerances pinned_tolerances() {
  Tolerances tol;
  tol.analytic = 1e-10;
  tol.analytic_loose = 1e-9;
  tol.fd = 1e-4;
  tol.fd_curvature = 1e-3;
  tol.ricci_closed = 1e-6;
  tol.cross_block = 1e-8;
  tol.einstein_rel = 1e-6;
  tol.holomorphic = 1e-6;
  tol.sectional_spread = 1e-5;
  tol.ode = 1e-10;
  tol.f_defect = 1e-10;
  tol.witness = 1e-2;
  return tol;
}

const CheckResult* find_check(const SuiteResult& sr, const std::string& name) {
  for (const auto& ck : sr.checks)
    if (ck.name == name) return &ck;
  return nullptr;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string mask_runtime(std::string body) {
  const std::string key = "\"runtime_seconds\":";
  const size_t at = body.find(key);
  if (at == std::string::npos) return body;
  const size_t end = body.find('\n', at);
  body.replace(at, end - at, key + " 0");
  return body;
}

}  // namespace

int main(int argc, char** argv) {
  const Tolerances tol = pinned_tolerances();

  // 1: almost-Kahler identities at 1e-10, 100 samples, profile-generic
  {
    bool pass = true;
    double worst = 0.0;
    for (double c : {-1.0, 0.0, 1.0}) {
      const SpaceForm base(3, c);
      SampleSpec spec;
      spec.count = 100;
      const SuiteResult sr =
          almost_kaehler_suite(base, default_check_profiles(c, 1.0), spec,
                               tol);
      pass = pass && sr.pass;
      for (const auto& ck : sr.checks) {
        pass = pass && ck.tolerance == 1e-10;
        worst = std::max(worst, ck.max_residual);
      }
    }
    criterion(1, pass, "metric/J compatibility and closed fundamental form",
              "max residual " + fmt(worst) + " < 1e-10, c in {-1,0,1}, 100 "
              "samples each");
  }

  // 2: integrability forms vanish at 1e-9, bracket oracle at 1e-4,
  //    v + 0.05 witness above 1e-2
  {
    bool pass = true;
    double worst_analytic = 0.0, worst_oracle = 0.0, least_witness = 1e30;
    const std::vector<std::pair<double, double>> combos = {
        {-1.0, 1.0}, {0.0, 1.0}, {1.0, 2.0}};
    for (const auto& [c, A] : combos) {
      const SpaceForm base(3, c);
      SampleSpec spec;
      spec.count = 50;
      const SuiteResult sr =
          integrability_suite(base, LiftProfile::einstein(A, c), spec, tol);
      pass = pass && sr.pass;
      worst_analytic = std::max(
          worst_analytic,
          find_check(sr, "analytic_components_vanish")->max_residual);
      worst_oracle = std::max(
          worst_oracle, find_check(sr, "oracle_matches_analytic")->max_residual);
      least_witness = std::min(
          least_witness,
          find_check(sr, "perturbed_oracle_witness")->max_residual);
    }
    criterion(2, pass, "integrability condition and its bracket oracle",
              "closed forms " + fmt(worst_analytic) + " < 1e-9, oracle " +
                  fmt(worst_oracle) + " < 1e-4, witness " +
                  fmt(least_witness) + " > 1e-2");
  }

  // 3 and 4 share one connection-suite evaluation
  SuiteResult conn;
  {
    const SpaceForm base(3, -1.0);
    SampleSpec spec;
    spec.count = 20;
    conn = connection_suite(base, default_check_profiles(-1.0, 1.0), spec,
                            tol);
  }

  // 3: coefficient tables against the Koszul/FD oracles
  {
    bool pass = true;
    std::string detail;
    for (const char* name :
         {"qps_vs_koszul", "expanded_vs_generic", "torsion_free",
          "metric_compatibility", "nabla_j_vanishes"}) {
      const CheckResult* ck = find_check(conn, name);
      pass = pass && ck && ck->pass;
      if (ck) {
        if (!detail.empty()) detail += ", ";
        detail += std::string(name) + " " + fmt(ck->max_residual);
      }
    }
    criterion(3, pass, "connection coefficients, torsion, compatibility, "
              "parallel J", detail);
  }

  // 4: traced Ricci against the closed forms, itemized
  {
    bool pass = true;
    std::string detail;
    for (const char* name :
         {"ricci_trace_vs_closed", "ricci_cross_zero", "ricci_symmetry",
          "diff_qq_gamma_model", "diff_pp_gamma_model"}) {
      const CheckResult* ck = find_check(conn, name);
      pass = pass && ck && ck->pass;
      if (ck) {
        if (!detail.empty()) detail += ", ";
        detail += std::string(name) + " " + fmt(ck->max_residual);
      }
    }
    criterion(4, pass, "Ricci traces vs closed forms at 1e-6, cross block at "
              "1e-8", detail);
  }

  // 5: Einstein property across dimensions and signs
  {
    bool pass = true;
    std::string detail;
    const std::vector<std::pair<double, double>> combos = {{-1.0, 1.0},
                                                           {1.0, 2.0}};
    for (const auto& [c, A] : combos)
      for (int n : {2, 3, 5}) {
        const SpaceForm base(n, c);
        SampleSpec spec;
        spec.count = 25;
        const SuiteResult sr = einstein_suite(base, A, spec, tol);
        pass = pass && sr.pass;
        if (!sr.pass) detail += " [c=" + fmt(c) + ",n=" + std::to_string(n) +
                                " FAIL]";
      }
    criterion(5, pass, "Ric = ((n+1)c/A) G at relative 1e-6, obstruction "
              "scalar vanishes iff the radicand slope is -2c",
              detail.empty() ? "c in {-1,+1}, n in {2,3,5}, tube respected"
                             : detail);
  }

  // 6: constant holomorphic sectional curvature 2c/A
  {
    bool pass = true;
    std::string detail;
    const std::vector<std::pair<double, double>> combos = {{-1.0, 1.0},
                                                           {1.0, 2.0}};
    for (const auto& [c, A] : combos) {
      const SpaceForm base(3, c);
      SampleSpec spec;
      spec.count = 100;  // one unit vector per sample for the spread
      const SuiteResult sr = holomorphic_suite(base, A, spec, tol);
      pass = pass && sr.pass;
      const double k = 2.0 * c / A;
      const double lambda = 4.0 * c / A;
      if (!detail.empty()) detail += "; ";
      detail += "k=" + fmt(k) + " lambda=" + fmt(lambda) + " spread " +
                fmt(find_check(sr, "sectional_spread")->max_residual);
    }
    criterion(6, pass, "model curvature blocks at 1e-6 and sectional value "
              "2c/A with spread < 1e-5 over 100 unit vectors", detail);
  }

  // 7: the profile equation and its singular solutions
  {
    bool pass = true;
    double worst = 0.0;
    const std::vector<std::pair<double, double>> combos = {
        {-1.0, 1.0}, {0.0, 1.0}, {1.0, 2.0}};
    for (const auto& [c, A] : combos) {
      const LiftProfile prof = LiftProfile::einstein(A, c);
      double t_hi = 1.5;
      if (std::isfinite(prof.t_sup())) t_hi = 0.999 * prof.t_sup();
      for (int i = 0; i < 200; ++i) {
        const double t = t_hi * i / 199.0;
        const Jet3 u = prof.u(t);
        const double mag = std::abs(u.f * u.f * u.d2) +
                           std::abs(2.0 * t * u.d1 * u.d1 * u.d1) +
                           std::abs(2.0 * u.f * u.d1 * u.d1);
        worst = std::max(worst, std::abs(ode_residual(u, t)) / (1.0 + mag));
      }
    }
    pass = worst < 1e-10;
    double singular = 0.0;
    for (double t : {0.0, 0.3, 0.9}) {
      singular = std::max(
          singular, std::abs(LiftProfile::constant(1.0, -1.0)
                                 .ode_residual_at(t)));
      singular = std::max(
          singular,
          std::abs(LiftProfile::linear(1.0, -1.0).ode_residual_at(t)));
    }
    pass = pass && singular <= 1e-15;
    criterion(7, pass, "u = A + sqrt(A^2 - 2ct) solves the profile equation; "
              "u = A and u = At are the singular solutions",
              "relative residual " + fmt(worst) + " < 1e-10, singular " +
                  fmt(singular));
  }

  // 8: canonical run reproduces the golden report bytewise
  {
    bool pass = false;
    std::string detail = "no golden path supplied";
    if (argc > 1) {
      const std::string want = mask_runtime(slurp(argv[1]));
      const VerificationReport rep = run_suites(RunConfig{});
      const std::string got = mask_runtime(render_json(rep));
      pass = !want.empty() && got == want;
      detail = pass ? "n=3, c=-1, A=1, seed 42: byte-identical"
                    : "mismatch against " + std::string(argv[1]);
      if (!pass) {
        std::ofstream("acceptance_canonical_masked.json") << got;
        detail += " (masked output written)";
      }
    }
    criterion(8, pass, "canonical report is byte-stable", detail);
  }

  return failures == 0 ? 0 : 1;
}
