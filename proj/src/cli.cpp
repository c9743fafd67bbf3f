#include "sphsamp/cli.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sphsamp/acceptance.hpp"
#include "sphsamp/concentration.hpp"
#include "sphsamp/error.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/mz.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/report.hpp"

namespace sphsamp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// inf and nan have no JSON literal; they serialize as null
json num(double x) { return std::isfinite(x) ? json(x) : json(); }

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json();
}

struct Outcome {
  json results = json::object();
  json table = json::array();
  std::string summary;
  bool ok = true;
};

std::string default_dir() {
  const char* env = std::getenv("SPHSAMP_OUT_DIR");
  return env && *env ? env : ".";
}

std::string report_path(const RunConfig& cfg) {
  const std::string stem = cfg.kind.empty() || cfg.command == "gen" ? cfg.command : cfg.command + "-" + cfg.kind;
  fs::path base = cfg.out.empty() ? fs::path(default_dir()) : fs::path(cfg.out);
  if (base.extension() == ".json") return base.string();
  return (base / (stem + ".json")).string();
}

TriangularFamily load_family(const RunConfig& cfg) {
  if (cfg.family.empty()) throw InputError(cfg.command + ": --family is required");
  return read_family(cfg.family);
}

std::vector<int> degrees_or_all(const RunConfig& cfg, const TriangularFamily& fam) {
  return cfg.Ls.empty() ? fam.degrees() : cfg.Ls;
}

int single_L(const RunConfig& cfg) {
  if (cfg.Ls.size() != 1) throw InputError(cfg.command + ": give exactly one degree with --L");
  return cfg.Ls.front();
}

json bounds_json(const FrameBounds& b) {
  return {{"L", b.L}, {"m", b.m}, {"A", num(b.A)}, {"B", num(b.B)}, {"condition", num(b.condition)}};
}

Outcome cmd_gen(RunConfig& cfg) {
  if (cfg.Ls.empty()) throw InputError("gen: --Ls is required");
  TriangularFamily fam;
  fam.d = cfg.d;
  const double c = cfg.c.value_or(1.0);
  for (int L : cfg.Ls) {
    if (cfg.kind == "fibonacci") {
      if (cfg.d != 2) throw UnsupportedDimension("gen: fibonacci families live on S^2");
      fam.generations[L] = gen_fibonacci(L, c);
    } else if (cfg.kind == "random") {
      const auto m = static_cast<std::size_t>(std::ceil(c * static_cast<double>(dim_pi(cfg.d, L))));
      fam.generations[L] = gen_random(cfg.d, m, cfg.seed + static_cast<std::uint64_t>(L));
    } else if (cfg.kind == "tetrahedron") {
      if (cfg.d != 2) throw UnsupportedDimension("gen: tetrahedron lives on S^2");
      fam.generations[L] = tetrahedron();
    } else {
      throw InputError("gen: unknown --kind '" + cfg.kind + "' (fibonacci | random | tetrahedron)");
    }
  }
  const std::string dir = cfg.out.empty() ? (fs::path(default_dir()) / "family").string() : cfg.out;
  write_family(dir, fam);
  cfg.out = (fs::path(dir) / "gen.json").string();

  Outcome o;
  o.results["directory"] = dir;
  std::ostringstream s;
  s << "wrote " << fam.generations.size() << " generations to " << dir << "\n";
  for (const auto& [L, pts] : fam.generations) {
    const Separation sep = separation_constant(pts, L);
    o.table.push_back({{"L", L}, {"m", pts.size()}, {"pi_L", dim_pi(cfg.d, L)},
                       {"separation", sep.degenerate ? json() : num(sep.value)}});
    s << fmt("  L=%-4d m=%-7zu separation=%.4g\n", L, pts.size(), sep.value);
  }
  o.summary = s.str();
  return o;
}

Outcome cmd_kernel_check(RunConfig& cfg) {
  if (cfg.Ls.empty()) cfg.Ls = {1, 2, 4, 8, 16, 32, 50};
  const double tol = cfg.tolerances.count("kernel") ? cfg.tolerances["kernel"] : 1e-9;
  cfg.tolerances["kernel"] = tol;
  Outcome o;
  double worst_diag = 0.0, worst_rep = 0.0;
  std::ostringstream s;
  for (int L : cfg.Ls) {
    const double diag = kernel_diagonal_error(cfg.d, L, 20, cfg.seed + static_cast<std::uint64_t>(L));
    json row{{"L", L}, {"pi_L", dim_pi(cfg.d, L)}, {"diagonal_rel_err", diag}};
    worst_diag = std::max(worst_diag, diag);
    s << fmt("  L=%-4d diagonal rel err %.3g", L, diag);
    if (cfg.d == 2 && L >= 1) {
      const double rep = reproducing_error(L, 3, cfg.seed + 7919u * static_cast<std::uint64_t>(L));
      row["reproducing_err"] = rep;
      worst_rep = std::max(worst_rep, rep);
      s << fmt("  reproducing err %.3g", rep);
    }
    s << "\n";
    o.table.push_back(row);
  }
  o.ok = worst_diag <= tol && worst_rep <= tol;
  o.results = {{"max_diagonal_rel_err", worst_diag}, {"max_reproducing_err", worst_rep}, {"pass", o.ok}};
  o.summary = s.str() + (o.ok ? "kernel identities hold\n" : "kernel identities FAILED\n");
  return o;
}

Outcome cmd_spectrum(RunConfig& cfg) {
  const int L = single_L(cfg);
  if (cfg.d != 2) throw UnsupportedDimension("spectrum: the explicit basis is d = 2");
  SpectrumReport sp;
  if (cfg.theta) {
    sp = spectrum(L, *cfg.theta, RadiusMode::kTheta);
  } else {
    if (cfg.alphas.size() != 1) throw InputError("spectrum: give one --alpha or --theta");
    sp = spectrum(L, cfg.alphas.front(), RadiusMode::kAlpha);
  }
  const double closed = trace_closed_form(2, L, sp.alpha);
  const PlungeCount pc = plunge_count(sp, cfg.gamma);
  Outcome o;
  o.results = {{"L", L},
               {"alpha", sp.alpha},
               {"theta", sp.theta},
               {"eigenvalues", sp.eigenvalues},
               {"trace", sp.trace},
               {"trace_sq", sp.trace_sq},
               {"trace_closed_form", closed},
               {"clamped", sp.clamped},
               {"plunge", {{"gamma", cfg.gamma}, {"count", pc.count}, {"lower_bound", pc.lower_bound},
                           {"upper_bound", pc.upper_bound}}}};
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k)
    o.table.push_back({{"index", k + 1}, {"eigenvalue", sp.eigenvalues[k]}});
  std::ostringstream s;
  s << fmt("L=%d theta=%.6g alpha=%.6g: %zu eigenvalues, trace %.12g (closed form %.12g)\n", L, sp.theta,
           sp.alpha, sp.eigenvalues.size(), sp.trace, closed);
  s << fmt("#{lambda > %.3g} = %ld in [%.6g, %.6g]\n", cfg.gamma, pc.count, pc.lower_bound, pc.upper_bound);
  if (!cfg.family.empty()) {
    const TriangularFamily fam = load_family(cfg);
    const LandauComparison lc = landau_compare(fam.at(L), L, sp.alpha, cfg.gamma, cfg.delta, cfg.eps);
    o.results["landau"] = {{"n_plus", lc.n_plus},
                           {"n_minus", lc.n_minus},
                           {"separation_ok", lc.separation_ok},
                           {"measured_separation", num(lc.measured_separation)},
                           {"lambda_upper", opt(lc.lambda_upper)},
                           {"lambda_lower", opt(lc.lambda_lower)},
                           {"upper_holds", opt(lc.upper_holds)},
                           {"lower_holds", opt(lc.lower_holds)},
                           {"lambda_1", lc.lambda_1}};
    s << fmt("family counts: n+=%ld n-=%ld%s\n", lc.n_plus, lc.n_minus,
             lc.separation_ok ? "" : " (separation below eps, comparison skipped)");
  }
  o.summary = s.str();
  return o;
}

Outcome cmd_trace_deficit(RunConfig& cfg) {
  const int L = single_L(cfg);
  if (cfg.alphas.empty()) cfg.alphas = {4, 6, 8, 12, 16};
  const TraceDeficitFit fit = trace_deficit_slope(cfg.d, L, cfg.alphas);
  Outcome o;
  o.results = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"expected_slope", cfg.d - 1}};
  std::ostringstream s;
  for (const auto& r : fit.rows) {
    o.table.push_back({{"alpha", r.alpha}, {"trace", r.trace}, {"trace_sq", r.trace_sq},
                       {"deficit", r.deficit}, {"excluded", r.excluded}});
    s << fmt("  alpha=%-6g tr=%.10g tr2=%.10g deficit=%.6g%s\n", r.alpha, r.trace, r.trace_sq, r.deficit,
             r.excluded ? " (excluded)" : "");
  }
  s << fmt("slope of log deficit vs log alpha: %.4f (d-1 = %d)\n", fit.slope, cfg.d - 1);
  o.summary = s.str();
  return o;
}

Outcome cmd_density(RunConfig& cfg) {
  const TriangularFamily fam = load_family(cfg);
  if (cfg.alphas.empty()) cfg.alphas = {2, 4, 8, 16};
  const auto Ls = degrees_or_all(cfg, fam);
  const DensityReport r = density_scan(fam, cfg.alphas, Ls, cfg.probe_factor);
  Outcome o;
  o.results = {{"d_minus_est", r.d_minus_est},
               {"d_plus_est", r.d_plus_est},
               {"critical", critical_density(r.d)},
               {"warnings", r.warnings}};
  std::ostringstream s;
  for (const auto& c : r.cells) {
    o.table.push_back({{"alpha", c.alpha}, {"L", c.L}, {"min_count", c.min_count}, {"max_count", c.max_count},
                       {"min_ratio", c.min_ratio}, {"max_ratio", c.max_ratio}});
    s << fmt("  L=%-4d alpha=%-6g min %.4g max %.4g\n", c.L, c.alpha, c.min_ratio, c.max_ratio);
  }
  for (const auto& w : r.warnings) s << "warning: " << w << "\n";
  s << fmt("finite-scale D- ~ %.4g, D+ ~ %.4g (critical %.4g)\n", r.d_minus_est, r.d_plus_est,
           critical_density(r.d));
  o.summary = s.str();
  return o;
}

Outcome cmd_mz_bounds(RunConfig& cfg) {
  const TriangularFamily fam = load_family(cfg);
  MzThresholds th;
  if (cfg.tolerances.count("max_condition")) th.max_condition = cfg.tolerances["max_condition"];
  if (cfg.tolerances.count("min_lower")) th.min_lower = cfg.tolerances["min_lower"];
  const MzSweep sw = mz_sweep(fam, degrees_or_all(cfg, fam), th);
  Outcome o;
  std::ostringstream s;
  s << "     L        m     pi_L            A            B    condition\n";
  for (const auto& r : sw.rows) {
    json row = bounds_json(r.bounds);
    row["pi_L"] = r.pi_L;
    row["undersampled"] = r.undersampled;
    s << fmt("%6d %8zu %8lld %12.6g %12.6g %12.6g%s\n", r.bounds.L, r.bounds.m, static_cast<long long>(r.pi_L),
             r.bounds.A, r.bounds.B, r.bounds.condition, r.undersampled ? "  undersampled" : "");
    if (cfg.p && *cfg.p != 2.0) {
      const CpEstimate cp = cp_monte_carlo(fam.at(r.bounds.L), r.bounds.L, *cfg.p, cfg.trials, cfg.seed);
      row["p_lower_est"] = cp.lower_A_est;
      row["p_upper_est"] = cp.upper_B_est;
      s << fmt("         p=%g Monte Carlo ratios in [%.6g, %.6g]\n", *cfg.p, cp.lower_A_est, cp.upper_B_est);
    }
    o.table.push_back(row);
  }
  o.results = {{"mz_consistent", sw.mz_consistent},
               {"skipped", sw.skipped},
               {"max_condition", th.max_condition},
               {"min_lower", th.min_lower}};
  for (int L : sw.skipped) s << "skipped L=" << L << " (not in family)\n";
  s << (sw.mz_consistent ? "all rows within thresholds\n" : "some rows outside thresholds\n");
  o.summary = s.str();
  return o;
}

Outcome cmd_interpolate(RunConfig& cfg) {
  const TriangularFamily fam = load_family(cfg);
  const int L = single_L(cfg);
  const auto& pts = fam.at(L);
  std::vector<double> v;
  const std::string data = cfg.extra.count("data") ? cfg.extra["data"] : "ones";
  if (data == "ones") {
    v.assign(pts.size(), 1.0);
  } else if (data == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < pts.size(); ++i) v.push_back(g(rng));
  } else {
    std::ifstream in(data);
    if (!in) throw InputError("interpolate: cannot read values file " + data);
    double x;
    while (in >> x) v.push_back(x);
  }
  const InterpolationResult r = interpolate_min_norm(pts, L, v);
  Outcome o;
  o.results = {{"L", L},
               {"m", pts.size()},
               {"pi_L", dim_pi(2, L)},
               {"residual", r.residual},
               {"rank", r.rank},
               {"condition", num(r.condition)},
               {"interpolant_norm_sq", r.interpolant_norm_sq},
               {"data_norm_sq", r.data_norm_sq},
               {"stability_quotient", r.stability_quotient},
               {"interpolating", r.interpolating},
               {"coefficients", r.coefficients.coeffs}};
  for (std::size_t k = 0; k < r.coefficients.coeffs.size(); ++k)
    o.table.push_back({{"index", k}, {"coefficient", r.coefficients.coeffs[k]}});
  o.summary = fmt("L=%d m=%zu rank=%zu residual=%.3g stability quotient=%.6g %s\n", L, pts.size(), r.rank,
                  r.residual, r.stability_quotient, r.interpolating ? "(interpolating)" : "(not interpolating)");
  return o;
}

Outcome cmd_carleson(RunConfig& cfg) {
  const TriangularFamily fam = load_family(cfg);
  const double scale = cfg.tolerances.count("radius_scale") ? cfg.tolerances["radius_scale"] : 1.0;
  Outcome o;
  std::ostringstream s;
  long worst = 0;
  for (int L : degrees_or_all(cfg, fam)) {
    const auto& pts = fam.at(L);
    const long cnt = carleson_max_count(pts, L, scale);
    const Separation sep = separation_constant(pts, L);
    json row{{"L", L}, {"m", pts.size()}, {"max_count", cnt},
             {"separation", sep.degenerate ? json() : num(sep.value)}};
    if (fam.d == 2) row["mesh_norm"] = mesh_norm(pts, L);
    worst = std::max(worst, cnt);
    s << fmt("  L=%-4d max count %ld separation %.4g\n", L, cnt, sep.value);
    o.table.push_back(row);
  }
  o.results = {{"max_count", worst}, {"radius_scale", scale}};
  s << "Carleson bound over the generations: " << worst << "\n";
  o.summary = s.str();
  return o;
}

Outcome cmd_asymptotics(RunConfig& cfg) {
  if (cfg.Ls.empty()) cfg.Ls = {16, 24, 32, 48, 64, 96, 128};
  ScalingFit fit;
  if (cfg.kind == "jacobi-lp") {
    if (!cfg.p) throw InputError("asymptotics jacobi-lp: --p is required");
    fit = jacobi_lp_scaling(cfg.d, *cfg.p, cfg.Ls);
  } else if (cfg.kind == "projection-norm") {
    fit = projection_l1_norm(cfg.d, cfg.Ls);
  } else if (cfg.kind == "kernel-constant") {
    fit = kernel_constant_scaling(cfg.d, cfg.Ls);
  } else {
    throw InputError("asymptotics: kind must be jacobi-lp | projection-norm | kernel-constant");
  }
  Outcome o;
  o.results = {{"slope", fit.slope}, {"expected_slope", fit.expected_slope}};
  std::ostringstream s;
  for (const auto& r : fit.rows) {
    o.table.push_back({{"L", r.L}, {"value", r.value}});
    s << fmt("  L=%-5d %.10g\n", r.L, r.value);
  }
  s << fmt("%s: fitted slope %.4f, expected %.4f\n", cfg.kind.c_str(), fit.slope, fit.expected_slope);
  o.summary = s.str();
  return o;
}

Outcome cmd_multiplier(RunConfig& cfg) {
  if (cfg.Ls.empty()) cfg.Ls = {8, 16, 32};
  Outcome o;
  std::ostringstream s;
  double lo = 1e300, hi = 0.0, worst = 0.0;
  for (int L : cfg.Ls) {
    const DelayedMeans dm = delayed_means_check(cfg.d, L);
    double pass_err = 0.0, stop_err = 0.0;
    for (int ell = 0; ell <= 3 * L + 2; ++ell) {
      if (ell <= L) pass_err = std::max(pass_err, std::abs(dm.symbols[ell] - 1.0));
      if (ell > 3 * L) stop_err = std::max(stop_err, std::abs(dm.symbols[ell]));
    }
    worst = std::max({worst, pass_err, stop_err});
    lo = std::min(lo, dm.l1_norm);
    hi = std::max(hi, dm.l1_norm);
    o.table.push_back({{"L", L}, {"passband_err", pass_err}, {"stopband_err", stop_err},
                       {"l1_norm", dm.l1_norm}, {"scale", dm.scale}});
    s << fmt("  L=%-4d |m-1| <= %.3g on [0,L], |m| <= %.3g above 3L, ||g||_1 = %.6g\n", L, pass_err, stop_err,
             dm.l1_norm);
  }
  const double spread = (hi - lo) / lo;
  o.results = {{"max_symbol_err", worst}, {"l1_spread", spread}};
  s << fmt("l1 spread across L: %.3g\n", spread);
  o.summary = s.str();
  return o;
}

Outcome cmd_mollifier(RunConfig& cfg) {
  const int L = single_L(cfg);
  const MollifierSymbol ms = mollifier_symbol(cfg.d, L, cfg.delta);
  Outcome o;
  o.results = {{"min_symbol", ms.min_symbol}, {"symbols", ms.symbols}};
  for (std::size_t ell = 0; ell < ms.symbols.size(); ++ell)
    o.table.push_back({{"ell", ell}, {"symbol", ms.symbols[ell]}});
  o.summary = fmt("L=%d delta=%g: smallest symbol over ell<=L is %.6g\n", L, cfg.delta, ms.min_symbol);
  return o;
}

Outcome cmd_cis(RunConfig& cfg) {
  const TriangularFamily fam = load_family(cfg);
  const CisDiagnostic cd = complete_interp_diagnostic(fam, degrees_or_all(cfg, fam));
  Outcome o;
  o.results = {{"complete", cd.complete}, {"critical", cd.critical}, {"offending", cd.offending},
               {"verdict", cd.verdict}};
  std::ostringstream s;
  for (const auto& r : cd.rows) {
    json row = bounds_json(r.bounds);
    row["pi_L"] = r.pi_L;
    row["square"] = r.square;
    row["interpolation_condition"] = num(r.interpolation_condition);
    row["d_minus_est"] = opt(r.d_minus_est);
    row["d_plus_est"] = opt(r.d_plus_est);
    o.table.push_back(row);
    s << fmt("  L=%-4d m=%-6zu pi_L=%-6lld cond=%.4g\n", r.L, r.m, static_cast<long long>(r.pi_L),
             r.interpolation_condition);
  }
  s << cd.verdict << "\n";
  o.summary = s.str();
  return o;
}

Outcome cmd_accept(RunConfig& cfg, std::ostream& out) {
  const auto results = run_acceptance(cfg.quick, out);
  Outcome o;
  long failed = 0;
  for (const auto& r : results) {
    o.table.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    failed += !r.pass;
  }
  o.ok = failed == 0;
  o.results = {{"passed", static_cast<long>(results.size()) - failed}, {"failed", failed}};
  o.summary = fmt("%ld/%zu criteria passed\n", static_cast<long>(results.size()) - failed, results.size());
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  unsigned n_jobs = 0;
  double alpha_one = 0.0, theta = 0.0, p = 0.0, c = 0.0;
  std::string data;

  CLI::App app{"Spherical sampling and interpolation toolkit", "sphsamp"};
  app.require_subcommand(1);
  app.add_option("--jobs", n_jobs, "worker threads (default: hardware parallelism)");

  auto common = [&](CLI::App* sc) {
    sc->add_option("--out", cfg.out, "report path (.json) or directory");
    sc->add_option("--jobs", n_jobs, "worker threads");
  };
  auto add_d = [&](CLI::App* sc) { sc->add_option("--d", cfg.d, "sphere dimension")->check(CLI::Range(1, 64)); };
  auto add_Ls = [&](CLI::App* sc, bool one) {
    if (one) {
      sc->add_option("--L", cfg.Ls, "polynomial degree")->expected(1)->required();
    } else {
      sc->add_option("--Ls,--L", cfg.Ls, "comma separated degrees")->delimiter(',');
    }
  };
  auto add_family = [&](CLI::App* sc, bool required) {
    auto* o = sc->add_option("--family", cfg.family, "family directory");
    if (required) o->required();
  };

  auto* gen = app.add_subcommand("gen", "generate a triangular family into a directory");
  common(gen);
  add_d(gen);
  add_Ls(gen, false);
  gen->add_option("--kind", cfg.kind, "fibonacci | random | tetrahedron")->required();
  gen->add_option("--c", c, "oversampling factor: m_L = c * pi_L");
  gen->add_option("--seed", cfg.seed);

  auto* kc = app.add_subcommand("kernel-check", "reproducing kernel identities");
  common(kc);
  add_d(kc);
  add_Ls(kc, false);
  kc->add_option("--seed", cfg.seed);

  auto* sp = app.add_subcommand("spectrum", "cap concentration spectrum on S^2");
  common(sp);
  add_d(sp);
  add_Ls(sp, true);
  sp->add_option("--alpha", alpha_one, "cap radius alpha/(L+1)");
  sp->add_option("--theta", theta, "cap radius in radians");
  sp->add_option("--gamma", cfg.gamma);
  sp->add_option("--delta", cfg.delta);
  sp->add_option("--eps", cfg.eps);
  add_family(sp, false);

  auto* td = app.add_subcommand("trace-deficit", "tr - tr^2 against alpha");
  common(td);
  add_d(td);
  add_Ls(td, true);
  td->add_option("--alphas", cfg.alphas)->delimiter(',');

  auto* de = app.add_subcommand("density", "finite-scale Beurling density estimates");
  common(de);
  add_family(de, true);
  add_Ls(de, false);
  de->add_option("--alphas", cfg.alphas)->delimiter(',');
  de->add_option("--probe-factor", cfg.probe_factor);

  auto* mzb = app.add_subcommand("mz-bounds", "Marcinkiewicz-Zygmund frame bounds per generation");
  common(mzb);
  add_family(mzb, true);
  add_Ls(mzb, false);
  mzb->add_option("--p", p, "also estimate L^p constants by Monte Carlo");
  mzb->add_option("--trials", cfg.trials);
  mzb->add_option("--seed", cfg.seed);
  double max_cond = 0.0, min_lower = 0.0;
  mzb->add_option("--max-condition", max_cond);
  mzb->add_option("--min-lower", min_lower);

  auto* ip = app.add_subcommand("interpolate", "minimal-norm interpolant of sampled data");
  common(ip);
  add_family(ip, true);
  add_Ls(ip, true);
  ip->add_option("--data", data, "ones | random | path to a values file");
  ip->add_option("--seed", cfg.seed);

  auto* ca = app.add_subcommand("carleson", "Carleson counts and separation per generation");
  common(ca);
  add_family(ca, true);
  add_Ls(ca, false);
  double radius_scale = 0.0;
  ca->add_option("--radius-scale", radius_scale);

  auto* as = app.add_subcommand("asymptotics", "log-log scaling fits");
  common(as);
  add_d(as);
  add_Ls(as, false);
  as->add_option("kind", cfg.kind, "jacobi-lp | projection-norm | kernel-constant")
      ->required()
      ->check(CLI::IsMember({"jacobi-lp", "projection-norm", "kernel-constant"}));
  as->add_option("--p", p);

  auto* mc = app.add_subcommand("multiplier-check", "delayed means symbols");
  common(mc);
  add_d(mc);
  add_Ls(mc, false);

  auto* mo = app.add_subcommand("mollifier", "symbols of the cap mollifier");
  common(mo);
  add_d(mo);
  add_Ls(mo, true);
  mo->add_option("--delta", cfg.delta);

  auto* ci = app.add_subcommand("cis-diagnostic", "complete interpolating sequence diagnostic");
  common(ci);
  add_family(ci, true);
  add_Ls(ci, false);

  auto* ac = app.add_subcommand("accept", "run the acceptance suite");
  common(ac);
  ac->add_flag("--quick", cfg.quick, "trimmed parameter grids");

  std::vector<const char*> argv{"sphsamp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  auto given = [sub](const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--alpha")) cfg.alphas = {alpha_one};
  if (given("--theta")) cfg.theta = theta;
  if (given("--p")) cfg.p = p;
  if (given("--c")) cfg.c = c;
  if (given("--data")) cfg.extra["data"] = data;
  if (given("--max-condition")) cfg.tolerances["max_condition"] = max_cond;
  if (given("--min-lower")) cfg.tolerances["min_lower"] = min_lower;
  if (given("--radius-scale")) cfg.tolerances["radius_scale"] = radius_scale;
  set_jobs(n_jobs);

  try {
    Outcome o;
    if (cfg.command == "gen") o = cmd_gen(cfg);
    else if (cfg.command == "kernel-check") o = cmd_kernel_check(cfg);
    else if (cfg.command == "spectrum") o = cmd_spectrum(cfg);
    else if (cfg.command == "trace-deficit") o = cmd_trace_deficit(cfg);
    else if (cfg.command == "density") o = cmd_density(cfg);
    else if (cfg.command == "mz-bounds") o = cmd_mz_bounds(cfg);
    else if (cfg.command == "interpolate") o = cmd_interpolate(cfg);
    else if (cfg.command == "carleson") o = cmd_carleson(cfg);
    else if (cfg.command == "asymptotics") o = cmd_asymptotics(cfg);
    else if (cfg.command == "multiplier-check") o = cmd_multiplier(cfg);
    else if (cfg.command == "mollifier") o = cmd_mollifier(cfg);
    else if (cfg.command == "cis-diagnostic") o = cmd_cis(cfg);
    else o = cmd_accept(cfg, out);

    const std::string path = report_path(cfg);
    write_report(path, make_report(cfg, o.results, o.table));
    out << o.summary << "report: " << path << "\n";
    return o.ok ? 0 : 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sphsamp
