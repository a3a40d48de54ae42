#include "cotlift/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cotlift {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

}  // namespace

std::vector<std::string> expand_suites(std::vector<std::string> names) {
  static const std::vector<std::string> kAll = {
      "almost_kaehler", "integrability", "connection", "einstein",
      "holomorphic"};
  if (names.empty()) names.emplace_back("all");
  std::vector<std::string> out;
  for (const auto& name : names) {
    if (name == "all") {
      out.insert(out.end(), kAll.begin(), kAll.end());
      continue;
    }
    if (std::find(kAll.begin(), kAll.end(), name) == kAll.end())
      throw InputError("unknown suite: " + name);
    out.push_back(name);
  }
  return out;
}

LiftProfile profile_from_config(const RunConfig& cf) {
  if (cf.profile == "einstein") return LiftProfile::einstein(cf.A, cf.c);
  if (cf.profile == "sqrt") {
    double B = cf.B;
    if (B == 0.0) B = cf.c == 0.0 ? 1.0 : -cf.c;
    return LiftProfile::general_sqrt(cf.A, B, cf.c);
  }
  if (cf.profile == "affine") return LiftProfile::affine(cf.A, cf.slope, cf.c);
  if (cf.profile == "sasaki") return LiftProfile::sasaki(cf.c);
  throw InputError("unknown profile: " + cf.profile);
}

VerificationReport run_suites(const RunConfig& cf_in) {
  RunConfig cf = cf_in;
  cf.suites = expand_suites(cf.suites);
  const SpaceForm base(cf.n, cf.c);
  const LiftProfile prof = profile_from_config(cf);

  VerificationReport rep;
  rep.config = cf;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& suite : cf.suites) {
    if (suite == "almost_kaehler")
      rep.suites.push_back(almost_kaehler_suite(
          base, default_check_profiles(cf.c, cf.A), cf.sample, cf.tol));
    else if (suite == "integrability")
      rep.suites.push_back(integrability_suite(base, prof, cf.sample, cf.tol));
    else if (suite == "connection")
      rep.suites.push_back(connection_suite(
          base, default_check_profiles(cf.c, cf.A), cf.sample, cf.tol));
    else if (suite == "einstein")
      rep.suites.push_back(einstein_suite(base, cf.A, cf.sample, cf.tol));
    else if (suite == "holomorphic")
      rep.suites.push_back(holomorphic_suite(base, cf.A, cf.sample, cf.tol));
  }
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  rep.pass = all_pass(rep.suites);
  return rep;
}

std::string render_json(const VerificationReport& rep) {
  const RunConfig& cf = rep.config;
  std::ostringstream os;
  os << "{\n";
  os << "  \"tool\": " << quoted("cotlift-verify") << ",\n";
  os << "  \"version\": " << quoted(kToolVersion) << ",\n";
  os << "  \"config\": {\n";
  os << "    \"n\": " << cf.n << ",\n";
  os << "    \"c\": " << fmt_double(cf.c) << ",\n";
  os << "    \"A\": " << fmt_double(cf.A) << ",\n";
  os << "    \"profile\": " << quoted(cf.profile) << ",\n";
  os << "    \"B\": " << fmt_double(cf.B) << ",\n";
  os << "    \"slope\": " << fmt_double(cf.slope) << ",\n";
  os << "    \"suites\": [";
  for (size_t i = 0; i < cf.suites.size(); ++i)
    os << (i ? ", " : "") << quoted(cf.suites[i]);
  os << "],\n";
  os << "    \"samples\": " << cf.sample.count << ",\n";
  os << "    \"seed\": " << cf.sample.seed << ",\n";
  os << "    \"q_radius\": " << fmt_double(cf.sample.q_radius) << ",\n";
  os << "    \"t_min\": " << fmt_double(cf.sample.t_min) << ",\n";
  os << "    \"t_max\": " << fmt_double(cf.sample.t_max) << ",\n";
  os << "    \"guard\": " << fmt_double(cf.sample.guard) << ",\n";
  os << "    \"tolerances\": {\n";
  os << "      \"analytic\": " << fmt_double(cf.tol.analytic) << ",\n";
  os << "      \"analytic_loose\": " << fmt_double(cf.tol.analytic_loose)
     << ",\n";
  os << "      \"fd\": " << fmt_double(cf.tol.fd) << ",\n";
  os << "      \"fd_curvature\": " << fmt_double(cf.tol.fd_curvature) << ",\n";
  os << "      \"ricci_closed\": " << fmt_double(cf.tol.ricci_closed) << ",\n";
  os << "      \"cross_block\": " << fmt_double(cf.tol.cross_block) << ",\n";
  os << "      \"einstein_rel\": " << fmt_double(cf.tol.einstein_rel) << ",\n";
  os << "      \"holomorphic\": " << fmt_double(cf.tol.holomorphic) << ",\n";
  os << "      \"sectional_spread\": " << fmt_double(cf.tol.sectional_spread)
     << ",\n";
  os << "      \"ode\": " << fmt_double(cf.tol.ode) << ",\n";
  os << "      \"f_defect\": " << fmt_double(cf.tol.f_defect) << ",\n";
  os << "      \"witness\": " << fmt_double(cf.tol.witness) << "\n";
  os << "    }\n";
  os << "  },\n";
  os << "  \"checks\": [\n";
  bool first = true;
  int total = 0, passed = 0;
  for (const auto& suite : rep.suites)
    for (const auto& ck : suite.checks) {
      if (!first) os << ",\n";
      first = false;
      os << "    {\n";
      os << "      \"suite\": " << quoted(suite.suite) << ",\n";
      os << "      \"name\": " << quoted(ck.name) << ",\n";
      os << "      \"identity\": " << quoted(ck.identity) << ",\n";
      os << "      \"comparison\": " << quoted(ck.comparison) << ",\n";
      os << "      \"max_residual\": " << fmt_double(ck.max_residual) << ",\n";
      os << "      \"tolerance\": " << fmt_double(ck.tolerance) << ",\n";
      os << "      \"samples\": " << ck.samples << ",\n";
      os << "      \"verdict\": " << quoted(ck.pass ? "pass" : "fail") << "\n";
      os << "    }";
      ++total;
      if (ck.pass) ++passed;
    }
  os << "\n  ],\n";
  os << "  \"summary\": {\n";
  os << "    \"total\": " << total << ",\n";
  os << "    \"passed\": " << passed << ",\n";
  os << "    \"failed\": " << (total - passed) << ",\n";
  os << "    \"verdict\": " << quoted(rep.pass ? "pass" : "fail") << "\n";
  os << "  },\n";
  os << "  \"runtime_seconds\": " << fmt_double(rep.runtime_seconds) << "\n";
  os << "}\n";
  return os.str();
}

std::string render_text(const VerificationReport& rep) {
  std::ostringstream os;
  const RunConfig& cf = rep.config;
  os << "cotlift-verify " << kToolVersion << "  (n=" << cf.n
     << ", c=" << fmt_double(cf.c) << ", A=" << fmt_double(cf.A)
     << ", profile=" << cf.profile << ", seed=" << cf.sample.seed << ")\n";
  int total = 0, passed = 0;
  for (const auto& suite : rep.suites) {
    os << "\n[" << suite.suite << "]\n";
    for (const auto& ck : suite.checks) {
      char line[256];
      std::snprintf(line, sizeof(line), "  %-34s %-5s  max=%-13.6g %s %.6g (%d)",
                    ck.name.c_str(), ck.pass ? "PASS" : "FAIL",
                    ck.max_residual, ck.comparison == "above" ? ">" : "<",
                    ck.tolerance, ck.samples);
      os << line << "\n";
      ++total;
      if (ck.pass) ++passed;
    }
  }
  os << "\n" << passed << "/" << total << " checks passed, verdict "
     << (rep.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open for writing: " + tmp);
    f << content;
    if (!f.good()) throw InputError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InputError("rename failed: " + path);
}

std::vector<ScanRow> profile_scan(const LiftProfile& prof, int n, double c,
                                  double t_max, int steps) {
  if (steps < 2) throw InputError("profile_scan: steps < 2");
  double t_hi = t_max;
  if (std::isfinite(prof.t_sup()))
    t_hi = std::min(t_hi, prof.t_sup() * (1.0 - 1e-3));
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = t_hi * i / (steps - 1);
    const Jet3 u = prof.u(t);
    const Jet3 v = prof.v(t);
    const Jet3 w = prof.w(t);
    ScanRow r;
    r.t = t;
    r.u = u.f;
    r.u_prime = u.d1;
    r.v = v.f;
    r.w = w.f;
    r.u_plus_2tv = u.f + 2.0 * t * v.f;
    r.u2_minus_2ct = u.f * u.f - 2.0 * c * t;
    r.f_minus_c = prof.f_scalar_at(t) - c;
    r.gamma = ricci_coeff_gamma(n, c, u, t);
    r.a = ricci_coeff_a(n, c, u, t);
    rows.push_back(r);
  }
  return rows;
}

std::string render_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "t,u,u_prime,v,w,u_plus_2tv,u2_minus_2ct,f_minus_c,gamma,a\n";
  for (const auto& r : rows) {
    os << fmt_double(r.t) << "," << fmt_double(r.u) << ","
       << fmt_double(r.u_prime) << "," << fmt_double(r.v) << ","
       << fmt_double(r.w) << "," << fmt_double(r.u_plus_2tv) << ","
       << fmt_double(r.u2_minus_2ct) << "," << fmt_double(r.f_minus_c) << ","
       << fmt_double(r.gamma) << "," << fmt_double(r.a) << "\n";
  }
  return os.str();
}

}  // namespace cotlift
