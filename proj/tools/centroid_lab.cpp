// centroid-lab: experiments with L_p centroid bodies of symmetric polytopes:
// support functions, section profiles, polar volumes, convergence rates and
// uniformly convex approximants.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "centroid/centroid.hpp"
#include "verify_suites.hpp"

using namespace centroid;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt7(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = resolve from env / hardware
  std::string tol_profile = "precise";

  bool fast() const { return tol_profile == "fast"; }
  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("CENTROID_LAB_THREADS")) {
      int t = std::atoi(env);
      if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
};

void add_global_opts(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--seed", g.seed, "seed for all stochastic sampling");
  cmd->add_option("--threads", g.threads,
                  "worker threads (default: CENTROID_LAB_THREADS or hardware)");
  cmd->add_option("--tol-profile", g.tol_profile,
                  "tolerance profile: fast or precise")
      ->check(CLI::IsMember({"fast", "precise"}));
}

Vec parse_vector(const std::string& csv) {
  Vec v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stod(tok));
    } catch (...) {
      throw ParseError("bad vector component '" + tok + "'");
    }
  }
  if (v.size() < 2) throw ParseError("need at least two components");
  return v;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stod(tok));
    } catch (...) {
      throw ParseError("bad list entry '" + tok + "'");
    }
  }
  if (v.empty()) throw ParseError("empty list");
  return v;
}

int default_resolution(int n, bool fast) {
  if (n == 2) return fast ? 2048 : 8192;
  if (n == 3) return fast ? 5 : 7;
  return fast ? 20000 : 100000;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_body(const std::string& spec, bool normalize) {
  Body body = parse_body_spec(spec, normalize);
  if (body.is_ball) {
    std::cout << "body " << spec << "\n"
              << "n " << body.dim << "\n"
              << "kind analytic-ball (volume 1)\n"
              << "radius " << fmt17(ball_radius(body.dim)) << "\n"
              << "polar_volume "
              << fmt17(ball_volume(body.dim) *
                       std::pow(ball_radius(body.dim), -body.dim))
              << "\n";
    return 0;
  }
  const Polytope& p = *body.poly;
  std::cout << "body " << spec << "\n"
            << "n " << p.dim << "\n"
            << "vertices " << p.vertices.size() << "\n"
            << "facets " << p.facets.size() << "\n"
            << "volume " << fmt17(p.volume) << "\n";
  try {
    std::cout << "polar_volume " << fmt17(polar_volume_exact(p)) << "\n";
  } catch (const UnsupportedDimension&) {
  }
  if (p.has_lattice()) {
    GeometricConstants g = geometric_constants(p);
    std::cout << "r0 " << fmt17(g.r0) << "\n"
              << "h0 " << fmt17(g.h0) << "\n"
              << "HK " << fmt17(g.HK) << "\n"
              << "alpha " << fmt17(g.alpha) << "\n";
  }
  return 0;
}

int cmd_support(const std::string& spec, bool normalize,
                const std::string& theta_csv, std::optional<double> p) {
  Body body = parse_body_spec(spec, normalize);
  if (body.is_ball) {
    double h = p ? ball_support(body.dim, *p) : ball_radius(body.dim);
    std::cout << fmt7(h) << "\n";
    return 0;
  }
  Vec theta = normalized(parse_vector(theta_csv));
  if (static_cast<int>(theta.size()) != body.dim)
    throw ParseError("theta dimension does not match the body");
  double h = p ? centroid_support(*body.poly, *p, theta)
               : support(*body.poly, theta);
  std::cout << fmt7(h) << "\n";
  return 0;
}

int cmd_profile(const std::string& spec, bool normalize,
                const std::string& theta_csv, const std::string& out,
                int samples) {
  Body body = parse_body_spec(spec, normalize);
  if (body.is_ball) throw ParseError("profiles need a polytope body");
  Vec theta = normalized(parse_vector(theta_csv));
  SectionProfile prof = section_profile(*body.poly, theta);
  std::cout << "h " << fmt17(prof.h) << "\n";
  if (prof.s_theta)
    std::cout << "s_theta " << fmt17(*prof.s_theta) << "\n";
  else
    std::cout << "s_theta none (theta in B_K)\n";
  std::cout << "breakpoints";
  for (double b : prof.breakpoints) std::cout << " " << fmt17(b);
  std::cout << "\n";
  for (std::size_t j = 0; j < prof.pieces.size(); ++j) {
    const auto& piece = prof.pieces[j];
    std::cout << "piece " << j << " [" << fmt17(piece.lo) << ", "
              << fmt17(piece.hi) << "] coeffs";
    for (double c : piece.coeffs) std::cout << " " << fmt17(c);
    std::cout << "\n";
  }
  if (!out.empty()) {
    std::ofstream f(out);
    f << "t,f\n";
    for (int i = 0; i <= samples; ++i) {
      double t = prof.h * i / samples;
      f << fmt17(t) << "," << fmt17(eval_profile(prof, t)) << "\n";
    }
  }
  return 0;
}

int cmd_polarvol(const std::string& spec, bool normalize, int resolution,
                 const GlobalOpts& g) {
  Body body = parse_body_spec(spec, normalize);
  int n = body.dim;
  if (resolution <= 0) resolution = default_resolution(n, g.fast());
  if (body.is_ball) {
    QuadratureRule rule = build_quadrature(n, resolution, g.seed);
    PolarVolume pv =
        polar_volume(make_ball_support(n), rule, g.resolved_threads());
    std::cout << "quadrature " << fmt17(pv.value) << "\n"
              << "err_estimate " << fmt17(pv.err_estimate) << "\n"
              << "exact "
              << fmt17(ball_volume(n) * std::pow(ball_radius(n), -n)) << "\n";
    return 0;
  }
  const Polytope& p = *body.poly;
  QuadratureRule rule = build_quadrature(n, resolution, g.seed, kink_angles(p));
  PolarVolume pv =
      polar_volume(make_polytope_support(p), rule, g.resolved_threads());
  std::cout << "quadrature " << fmt17(pv.value) << "\n"
            << "err_estimate " << fmt17(pv.err_estimate) << "\n";
  try {
    std::cout << "exact " << fmt17(polar_volume_exact(p)) << "\n";
  } catch (const UnsupportedDimension&) {
  }
  return 0;
}

int cmd_rate(const std::string& spec, bool normalize, const std::string& plist,
             const std::string& out, int resolution, double p_min,
             const GlobalOpts& g) {
  Body body = parse_body_spec(spec, normalize);
  RateEngine engine = body.is_ball
                          ? RateEngine::for_ball(spec, body.dim)
                          : RateEngine::for_polytope(spec, *body.poly);
  if (resolution <= 0) resolution = default_resolution(body.dim, g.fast());
  QuadratureRule rule =
      build_quadrature(body.dim, resolution, g.seed, engine.hints());
  std::vector<double> ps = parse_list(plist);
  RateSeries series =
      build_rate_series(engine, ps, rule, p_min, g.resolved_threads());

  std::ostringstream csv;
  csv << "body,n,p,R,err,L,U,Zp_polar,K_polar\n";
  bool in_band = true;
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const RatePoint& r = series.points[i];
    const BandPoint& b = series.band[i];
    csv << spec << "," << series.n << "," << fmt17(r.p) << "," << fmt17(r.R)
        << "," << fmt17(r.err) << "," << fmt17(b.L) << "," << fmt17(b.U) << ","
        << fmt17(r.zp_polar) << "," << fmt17(r.k_polar) << "\n";
    bool ok = r.R >= b.L - 3.0 * r.err && r.R <= b.U + 3.0 * r.err;
    in_band = in_band && ok;
    std::cout << (ok ? "[in-band]  " : "[OUT-BAND] ") << "p=" << r.p
              << " R=" << fmt17(r.R) << " err=" << fmt17(r.err) << "\n";
  }
  if (series.fit)
    std::cout << "fit a=" << fmt17(series.fit->a) << " b=" << fmt17(series.fit->b)
              << " c=" << fmt17(series.fit->c) << " rms="
              << fmt17(series.fit->rms) << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  return in_band ? 0 : 1;
}

int cmd_fit(const std::string& in, const std::string& out, double p_min) {
  std::ifstream f(in);
  if (!f) throw ParseError("cannot open " + in);
  std::string line;
  std::getline(f, line);  // header
  std::string body;
  int n = 0;
  std::vector<RatePoint> pts;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() < 9) throw ParseError("bad rate CSV row: " + line);
    body = cols[0];
    n = std::stoi(cols[1]);
    RatePoint r;
    r.p = std::stod(cols[2]);
    r.R = std::stod(cols[3]);
    r.err = std::stod(cols[4]);
    pts.push_back(r);
  }
  RateFit fit = fit_rate_model(pts, p_min);
  std::ostringstream csv;
  csv << "body,a,b,c,rms,p_min\n"
      << body << "," << fmt17(fit.a) << "," << fmt17(fit.b) << ","
      << fmt17(fit.c) << "," << fmt17(fit.rms) << "," << fmt17(fit.p_min)
      << "\n";
  std::cout << "fit for " << body << " (n=" << n << "): a=" << fmt17(fit.a)
            << " b=" << fmt17(fit.b) << " c=" << fmt17(fit.c)
            << " rms=" << fmt17(fit.rms) << "\n";
  if (!out.empty()) {
    std::ofstream fo(out);
    fo << csv.str();
  } else {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_approx(const std::string& spec, bool normalize,
               const std::string& plist, const std::string& out, int pairs,
               int resolution, const GlobalOpts& g) {
  Body body = parse_body_spec(spec, normalize);
  if (body.is_ball) throw ParseError("approx needs a polytope body");
  const Polytope& p = *body.poly;
  if (resolution <= 0) resolution = default_resolution(body.dim, g.fast());
  QuadratureRule rule = build_quadrature(body.dim, resolution, g.seed);
  std::vector<double> ps = parse_list(plist);
  std::ostringstream csv;
  csv << "body,p,ds,bound,contained,worst_margin\n";
  std::vector<ApproximationReport> reps;
  for (double pv : ps) {
    ApproximationReport rep =
        theorem2_report(p, pv, rule, pairs, g.seed + 5, g.resolved_threads());
    reps.push_back(rep);
    csv << spec << "," << fmt17(rep.p) << "," << fmt17(rep.ds) << ","
        << fmt17(rep.bound) << "," << (rep.contained ? 1 : 0) << ","
        << fmt17(rep.worst_convexity_margin) << "\n";
    std::cout << "p=" << pv << " ds=" << fmt17(rep.ds)
              << " bound=" << fmt17(rep.bound)
              << " margin=" << fmt17(rep.worst_convexity_margin) << "\n";
  }
  // smallest tested p from which the bound holds for all larger tested p
  std::optional<double> p0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    bool all = true;
    for (std::size_t j = i; j < reps.size(); ++j)
      all = all && reps[j].ds <= reps[j].bound;
    if (all) {
      p0 = reps[i].p;
      break;
    }
  }
  if (p0)
    std::cout << "p0 " << fmt17(*p0) << "\n";
  else
    std::cout << "p0 none\n";
  if (!out.empty()) {
    std::ofstream f(out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out,
               const GlobalOpts& g) {
  centroid_lab::VerifyConfig cfg;
  cfg.seed = g.seed;
  cfg.threads = g.resolved_threads();
  cfg.fast = g.fast();
  auto rows = centroid_lab::run_suites(suite, cfg);
  if (rows.empty()) throw ParseError("unknown suite '" + suite + "'");
  bool all_pass = true;
  std::ostringstream csv;
  csv << "suite,check,value,pass\n";
  for (const auto& r : rows) {
    all_pass = all_pass && r.pass;
    csv << r.suite << "," << r.check << "," << fmt17(r.value) << ","
        << (r.pass ? 1 : 0) << "\n";
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << r.check
              << " " << fmt17(r.value) << "\n";
  }
  if (!out.empty()) {
    std::ofstream f(out);
    f << csv.str();
  }
  std::cout << (all_pass ? "verify: all checks passed\n"
                         : "verify: FAILURES present\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centroid-lab: L_p centroid-body experiments on symmetric polytopes"};
  app.require_subcommand(1);

  GlobalOpts g;

  std::string spec, theta_csv, plist, out, in;
  bool normalize = false;
  std::optional<double> pval;
  int resolution = 0;
  int samples = 256;
  int pairs = 10000;
  double p_min = 256.0;
  std::string suite = "all";

  auto* body = app.add_subcommand("body", "inspect a body and its constants");
  body->add_option("--body", spec, "body spec")->required();
  body->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(body, g);

  auto* support_cmd =
      app.add_subcommand("support", "h_K(theta) or h_{Z_p(K)}(theta)");
  support_cmd->add_option("--body", spec, "body spec")->required();
  support_cmd->add_option("--theta", theta_csv, "direction, comma separated")
      ->required();
  double pv_support = 0.0;
  auto* popt = support_cmd->add_option("--p", pv_support, "moment order p");
  support_cmd->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(support_cmd, g);

  auto* profile_cmd =
      app.add_subcommand("profile", "section profile f_{K,theta}");
  profile_cmd->add_option("--body", spec, "body spec")->required();
  profile_cmd->add_option("--theta", theta_csv, "direction")->required();
  profile_cmd->add_option("--out", out, "CSV of profile samples");
  profile_cmd->add_option("--samples", samples, "sample count for --out");
  profile_cmd->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(profile_cmd, g);

  auto* polarvol_cmd =
      app.add_subcommand("polarvol", "polar volume by spherical quadrature");
  polarvol_cmd->add_option("--body", spec, "body spec")->required();
  polarvol_cmd->add_option("--resolution", resolution,
                           "nodes (n=2), subdivision level (n=3)");
  polarvol_cmd->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(polarvol_cmd, g);

  auto* rate_cmd =
      app.add_subcommand("rate", "convergence rate series R(p) with bands");
  rate_cmd->add_option("--body", spec, "body spec")->required();
  rate_cmd->add_option("--p", plist, "comma-separated p values")->required();
  rate_cmd->add_option("--out", out, "output CSV");
  rate_cmd->add_option("--resolution", resolution, "quadrature resolution");
  rate_cmd->add_option("--p-min", p_min, "smallest p used by the fit");
  rate_cmd->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(rate_cmd, g);

  auto* fit_cmd = app.add_subcommand("fit", "fit the rate model to a CSV");
  fit_cmd->add_option("--in", in, "rate CSV")->required();
  fit_cmd->add_option("--out", out, "fit summary CSV");
  fit_cmd->add_option("--p-min", p_min, "smallest p used by the fit");
  add_global_opts(fit_cmd, g);

  auto* approx_cmd = app.add_subcommand(
      "approx", "uniformly convex approximation of a polytope");
  approx_cmd->add_option("--body", spec, "body spec")->required();
  approx_cmd->add_option("--p", plist, "comma-separated p values")->required();
  approx_cmd->add_option("--out", out, "output CSV");
  approx_cmd->add_option("--pairs", pairs, "convexity probe pairs");
  approx_cmd->add_option("--resolution", resolution, "quadrature resolution");
  approx_cmd->add_flag("--normalize", normalize, "rescale to volume 1");
  add_global_opts(approx_cmd, g);

  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("--suite", suite,
                         "all, special, polytope, sections, support, "
                         "quadrature or convergence");
  verify_cmd->add_option("--out", out, "results CSV");
  add_global_opts(verify_cmd, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*body) return cmd_body(spec, normalize);
    if (*support_cmd)
      return cmd_support(spec, normalize, theta_csv,
                         popt->count() ? std::optional<double>(pv_support)
                                       : std::nullopt);
    if (*profile_cmd) return cmd_profile(spec, normalize, theta_csv, out, samples);
    if (*polarvol_cmd) return cmd_polarvol(spec, normalize, resolution, g);
    if (*rate_cmd)
      return cmd_rate(spec, normalize, plist, out, resolution, p_min, g);
    if (*fit_cmd) return cmd_fit(in, out, p_min);
    if (*approx_cmd)
      return cmd_approx(spec, normalize, plist, out, pairs, resolution, g);
    if (*verify_cmd) return cmd_verify(suite, out, g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
