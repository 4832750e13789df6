#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "courantkit/corpus.hpp"
#include "courantkit/json_io.hpp"
#include "courantkit/ldata.hpp"
#include "courantkit/report.hpp"
#include "courantkit/rng.hpp"

namespace {

using namespace ck;

struct Options {
  std::string input_path;
  std::string suite = "all";
  std::string point;
  std::string json_out;
  std::uint64_t seed = 1;
  int trials = 0;
  bool timings = false;
  bool parallel = false;
  bool complete_only = false;
  bool check_only = false;
};

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

InputDoc require_input(const Options& opt, std::string* hash) {
  if (opt.input_path.empty()) throw InputError("this command needs --input FILE");
  std::string bytes;
  InputDoc doc = load_input(opt.input_path, &bytes);
  *hash = content_hash(bytes);
  return doc;
}

std::string fmt_sig(const std::tuple<int, int, int>& s) {
  return "(" + std::to_string(std::get<0>(s)) + "," + std::to_string(std::get<1>(s)) + "," +
         std::to_string(std::get<2>(s)) + ")";
}

void cmd_check_lie(const InputDoc& in, Report& rep) {
  if (in.lie.dim() == 0) throw InputError("check-lie needs a 'lie' or 'fiber' block");
  auto jac = jacobi_check(in.lie);
  std::string witness = "zero";
  if (!jac.pass()) {
    auto& v = jac.violations.front();
    witness = "triple (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
              std::to_string(v[2]) + ")";
  }
  rep.add("jacobi identity", jac.pass(), witness);
  if (in.has_metric) {
    bool sym = true, invariant = true;
    const RatMat& g = in.fiber.metric;
    for (int i = 0; i < in.lie.dim(); ++i)
      for (int j = 0; j < i; ++j) sym = sym && g(i, j) == g(j, i);
    for (int i = 0; i < in.lie.dim() && invariant; ++i) {
      RatMat adi = in.lie.ad_basis(i);
      invariant = mat_is_zero<Rational>(adi.transpose() * g + g * adi);
    }
    rep.add("metric is symmetric", sym);
    rep.add("metric is ad-invariant", invariant);
    rep.add("metric is non-degenerate", det_field<Rational>(g) != 0);
  }
}

void cmd_invariant_forms(const InputDoc& in, Report& rep) {
  if (in.lie.dim() == 0) throw InputError("invariant-forms needs a 'lie' or 'fiber' block");
  auto fam = invariant_sym_forms(in.lie);
  rep.add("solution space dimension = " + std::to_string(fam.dimension()), true);
  bool all_invariant = true;
  for (auto& b : fam.basis)
    for (int i = 0; i < in.lie.dim(); ++i) {
      RatMat adi = in.lie.ad_basis(i);
      if (!mat_is_zero<Rational>(adi.transpose() * b + b * adi)) all_invariant = false;
    }
  rep.add("every basis form is exactly invariant", all_invariant);
  rep.add("re-solving reproduces the dimension",
          invariant_sym_forms(in.lie).dimension() == fam.dimension());
}

void cmd_signature(const InputDoc& in, Report& rep) {
  RatMat g;
  if (in.form) g = *in.form;
  else if (in.has_metric) g = in.fiber.metric;
  else throw InputError("signature needs a 'form' matrix or a fiber metric");
  auto s = signature(g);
  rep.add("signature = " + fmt_sig(s), true);
}

void cmd_check_courant(const InputDoc& in, Report& rep) {
  if (!in.courant) throw InputError("check-courant needs a 'courant' block");
  const CourantData& d = *in.courant;
  auto inv = d.bundle.check_invariants();
  rep.add("connection preserves the bracket", inv.derivation);
  rep.add("connection preserves the metric", inv.metric);
  auto def = check_defining_data(d);
  auto res = [&](bool ok) { return ok ? std::string("zero") : def.first_failure; };
  rep.add("curvature matches the bracket action", def.curvature_matches_bracket,
          res(def.curvature_matches_bracket));
  rep.add("second Bianchi identity", def.bianchi, res(def.bianchi));
  rep.add("dH equals the curvature pairing", def.h_flux, res(def.h_flux));
}

GacsComponents gacs_of(const InputDoc& in) {
  if (in.gacs) return *in.gacs;
  if (in.seed) return nondeg_complete(*in.courant, *in.seed);
  throw InputError("this command needs a 'gacs' or 'seed' block");
}

void cmd_check_gacs(const InputDoc& in, Report& rep) {
  if (!in.courant) throw InputError("check-gacs needs a 'courant' block");
  GacsComponents c = gacs_of(in);
  auto a = check_algebraic(*in.courant, c);
  rep.add("B is skew", a.skew_b, a.first_failure.empty() ? "zero" : a.first_failure);
  rep.add("C is skew", a.skew_c);
  rep.add("A is metric-skew", a.skew_a);
  const char* names[6] = {"J^2 + BC - nu* mu = -Id", "-mu nu* - nu mu* + A^2 = -Id",
                          "JB - BJ* = nu* nu",       "mu B - nu J* + A nu = 0",
                          "CJ - J*C = mu* mu",       "mu J + nu C + A mu = 0"};
  for (int k = 0; k < 6; ++k) rep.add(names[k], a.quadratic[static_cast<size_t>(k)]);
  rep.add("block matrix squares to -Id", a.block_square);
  rep.add("block matrix is skew for the pairing", a.block_skew);
  rep.add("component and block verdicts agree", a.routes_agree());
}

void cmd_integrability(const InputDoc& in, const Options& opt, Report& rep) {
  if (!in.courant) throw InputError("integrability needs a 'courant' block");
  GacsComponents c = gacs_of(in);
  const CourantData& d = *in.courant;
  if (!check_algebraic(d, c).pass())
    throw PreconditionError("integrability: the algebraic equations fail");

  bool run18 = opt.suite == "18" || opt.suite == "all";
  bool run10 = opt.suite == "10" || opt.suite == "all";
  bool runor = opt.suite == "oracle" || opt.suite == "all";
  if (!run18 && !run10 && !runor) throw InputError("--suite must be 18, 10, oracle or all");

  std::optional<bool> v18, v10, vor;
  if (run18) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = integrability_18(d, c, opt.parallel);
    v18 = r.pass();
    for (auto& rel : r.relations)
      rep.add("relation " + std::to_string(rel.id), rel.zero, rel.summary, -1);
    rep.add("18-relation suite", *v18, "", ms_since(t0));
  }
  if (run10) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = integrability_10(d, c);
    v10 = r.pass();
    rep.add("10-relation suite (1-9, 12)", *v10, "", ms_since(t0));
  }
  if (runor) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = nijenhuis_frame_oracle(d, c);
    vor = r.integrable;
    rep.add("Dorfman-Nijenhuis frame oracle", r.integrable,
            r.integrable ? "zero" : r.first_failure, ms_since(t0));
  }
  if (opt.suite == "all") {
    bool agree = (*v18 == *v10) && (*v10 == *vor);
    rep.add("all verdicts agree", agree);
    Trivector p = poisson_residual(d, c);
    rep.add("Poisson residual equals the Schouten bracket",
            p == schouten_pb(d.chart(), c.B));
    if (*vor) rep.add("B is a Poisson bivector", p.is_zero());
  }
}

void cmd_nondeg(const InputDoc& in, const Options& opt, Report& rep) {
  if (!in.courant) throw InputError("nondeg needs a 'courant' block");
  NondegSeed s;
  if (in.seed) s = *in.seed;
  else if (in.gacs) s = seed_of_components(*in.courant, *in.gacs);
  else throw InputError("nondeg needs a 'seed' or 'gacs' block");

  auto sr = check_seed(*in.courant, s);
  rep.add("Atilde squares to -Id", sr.atilde_square);
  rep.add("Atilde is metric-skew", sr.atilde_skew);
  rep.add("B is skew", sr.b_skew);
  rep.add("JB - BJ* = nu* nu", sr.jb_relation);
  rep.add("B is invertible over the polynomial ring", sr.b_invertible);
  if (!sr.pass()) return;

  if (!opt.check_only) {
    GacsComponents c = nondeg_complete(*in.courant, s);
    rep.add("completion satisfies the algebraic equations",
            check_algebraic(*in.courant, c).pass());
  }
  if (!opt.complete_only) {
    auto r = nondeg_integrability(*in.courant, s);
    rep.add("B^{-1} is closed", r.symplectic,
            r.symplectic ? "zero" : r.first_failure);
    rep.add("Atilde is fiberwise integrable", r.fiber_integrable);
    rep.add("Atilde is parallel for the modified connection", r.parallel);
    rep.add("curvature equation", r.curvature_eq);
    rep.add("flux equation", r.flux_eq);
    if (r.pass()) {
      auto fc = flat_curvature_check(*in.courant, s);
      rep.add("modified connection is flat", fc.flat);
    }
  }
}

void cmd_ldata(const InputDoc& in, const Options& opt, Report& rep) {
  if (!in.courant) throw InputError("ldata needs a 'courant' block");
  GacsComponents c = gacs_of(in);
  std::vector<std::vector<Rational>> pts = in.points;
  if (!opt.point.empty()) pts.push_back(parse_point(opt.point, in.chart.dim()));
  if (pts.empty()) throw InputError("ldata needs --point or a 'points' array");
  for (auto& p : pts) {
    std::string tag = " at (";
    for (size_t i = 0; i < p.size(); ++i)
      tag += (i ? "," : "") + to_string(p[static_cast<size_t>(i)]);
    tag += ")";
    auto ld = pointwise_ldata(*in.courant, c, p);
    rep.add("W matches the anchor image of L" + tag, ld.w_matches_anchor_image);
    rep.add("D is a maximally isotropic complex subspace" + tag,
            ld.d_is_complex_subspace && ld.d_isotropic && ld.d_maximal);
    rep.add("epsilon is antisymmetric and matches the section oracle" + tag,
            ld.epsilon_antisym && ld.epsilon_matches_oracle);
    rep.add("L(W,D,sigma,epsilon) reconstructs the (1,0)-space" + tag, ld.reconstruction_ok);
    rep.add("L meets its conjugate trivially" + tag, ld.l_cap_conjugate_trivial);
    if (ld.nondegenerate) {
      rep.add("sigma = (Id + i Atilde) nu B^{-1} / 2" + tag, ld.sigma_matches_formula);
      rep.add("gauged sigma = nu B^{-1}" + tag, ld.gauged_sigma_is_nu_binv);
      rep.add("gauged epsilon = (B_J + i B^{-1}) / 2" + tag, ld.gauged_epsilon_matches);
    }
  }
}

void cmd_transport(const InputDoc& in, Report& rep) {
  if (!in.courant) throw InputError("transport needs a 'courant' block");
  if (!in.iso) throw InputError("transport needs an 'iso' block");
  const CourantData& d = *in.courant;
  auto ir = check_iso(d, *in.iso);
  rep.add("K has a polynomial inverse", ir.invertible);
  rep.add("K preserves the bracket", ir.bracket);
  rep.add("K preserves the metric", ir.metric);
  if (!ir.pass()) return;

  CourantData d2 = transform_data(d, *in.iso);
  rep.add("transformed data satisfies the defining conditions",
          check_defining_data(d2).pass());

  auto frames = frame_sections(d);
  bool intertwine = true;
  for (size_t a = 0; a < frames.size() && intertwine; ++a)
    for (size_t b = 0; b < frames.size() && intertwine; ++b) {
      Section lhs = apply_iso(d, *in.iso, dorfman(d, frames[a], frames[b]));
      Section rhs = dorfman(d2, apply_iso(d, *in.iso, frames[a]),
                            apply_iso(d, *in.iso, frames[b]));
      intertwine = (lhs - rhs).is_zero();
    }
  rep.add("brackets intertwine on frame pairs", intertwine);

  IsoData inv = invert_iso(*in.iso);
  Rng rng(5);
  bool roundtrip = true;
  for (int t = 0; t < 10; ++t) {
    Section u = Section::zero(d.chart(), d.fiber_dim());
    u.x = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
    u.xi = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
    u.r = rng.poly_vec(d.fiber_dim(), d.chart().dim(), 2, 2);
    roundtrip = roundtrip && (apply_iso(d, inv, apply_iso(d, *in.iso, u)) - u).is_zero();
  }
  rep.add("inverse round-trips on random sections", roundtrip);

  if (in.gacs || in.seed) {
    GacsComponents c = gacs_of(in);
    if (!check_algebraic(d, c).pass())
      throw PreconditionError("transport: the structure fails the algebraic equations");
    GacsComponents c1 = transform_gacs(d, c, *in.iso);
    CourantData d1 = transform_data(d, invert_iso(*in.iso));
    rep.add("B-component is unchanged", mat_is_zero<Scalar>(PolyMat(c1.B - c.B)));
    rep.add("transported structure stays algebraic", check_algebraic(d1, c1).pass());
    bool before = nijenhuis_frame_oracle(d, c).integrable;
    bool after = nijenhuis_frame_oracle(d1, c1).integrable;
    rep.add("integrability verdict is preserved", before == after);
  }
}

void cmd_normal_form(const InputDoc& in, Report& rep) {
  if (!in.courant) throw InputError("normal-form needs a 'courant' block");
  NondegSeed s;
  if (in.seed) s = *in.seed;
  else if (in.gacs) s = seed_of_components(*in.courant, *in.gacs);
  else throw InputError("normal-form needs a 'seed' or 'gacs' block");

  NormalFormResult res = normal_form(*in.courant, s);
  rep.add("reduced algebroid is untwisted",
          res.data.curv.is_zero() && res.data.torsion3.is_zero());
  rep.add("components are in normal form", mat_is_zero<Scalar>(res.comps.J) &&
                                                mat_is_zero<Scalar>(res.comps.mu) &&
                                                mat_is_zero<Scalar>(res.comps.nu));
  PolyMat binv = seed_b_inverse(s);
  rep.add("omega = -B^{-1} recovered", mat_is_zero<Scalar>(PolyMat(res.comps.C + binv)));
  bool parallel = true;
  for (int t = 0; t < s.chart.dim(); ++t) {
    PolyMat da(s.fiber_dim, s.fiber_dim);
    for (int a = 0; a < s.fiber_dim; ++a)
      for (int b = 0; b < s.fiber_dim; ++b) da(a, b) = res.comps.A(a, b).derivative(t);
    const PolyMat& om = res.data.bundle.omega[static_cast<size_t>(t)];
    parallel = parallel &&
               mat_is_zero<Scalar>(PolyMat(da + om * res.comps.A - res.comps.A * om));
  }
  rep.add("A is parallel", parallel);
}

int dispatch(const std::string& cmd, const Options& opt) {
  std::string hash = "none";
  Report rep(cmd, "none", opt.seed);

  if (cmd == "corpus-list") {
    for (auto& n : corpus_names()) std::cout << n << "\n";
    return 0;
  }
  if (cmd.rfind("corpus ", 0) == 0) {
    rep = run_corpus(cmd.substr(7), opt.seed, opt.trials);
  } else {
    InputDoc in = require_input(opt, &hash);
    rep = Report(cmd, hash, opt.seed);
    if (cmd == "check-lie") cmd_check_lie(in, rep);
    else if (cmd == "invariant-forms") cmd_invariant_forms(in, rep);
    else if (cmd == "signature") cmd_signature(in, rep);
    else if (cmd == "check-courant") cmd_check_courant(in, rep);
    else if (cmd == "check-gacs") cmd_check_gacs(in, rep);
    else if (cmd == "integrability") cmd_integrability(in, opt, rep);
    else if (cmd == "nondeg") cmd_nondeg(in, opt, rep);
    else if (cmd == "ldata") cmd_ldata(in, opt, rep);
    else if (cmd == "transport") cmd_transport(in, rep);
    else if (cmd == "normal-form") cmd_normal_form(in, rep);
    else throw InputError("unknown command: " + cmd);
  }

  std::cout << rep.text(opt.timings);
  if (!opt.json_out.empty()) {
    std::filesystem::path out = opt.json_out;
    if (out.is_relative()) {
      if (const char* dir = std::getenv("COURANT_KIT_OUT_DIR")) out = std::filesystem::path(dir) / out;
    }
    std::ofstream f(out);
    if (!f) throw InputError("cannot write report to " + out.string());
    f << rep.to_json(opt.timings).dump(2) << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of generalised complex structures on standard Courant algebroids"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--trials", opt.trials, "number of randomized trials");
  app.add_option("--json", opt.json_out, "write the JSON report to this file");
  app.add_flag("--timings", opt.timings, "include timings (breaks byte-reproducibility)");

  std::string corpus_name;
  auto add_input = [&](CLI::App* s) {
    s->fallthrough();
    s->add_option("--input", opt.input_path, "input JSON document");
    return s;
  };
  add_input(app.add_subcommand("check-lie", "Jacobi identity and metric invariance"));
  add_input(app.add_subcommand("invariant-forms", "ad-invariant symmetric forms"));
  add_input(app.add_subcommand("signature", "exact inertia of a symmetric form"));
  add_input(app.add_subcommand("check-courant", "defining data of a standard Courant algebroid"));
  add_input(app.add_subcommand("check-gacs", "algebraic component equations"));
  auto* integ = add_input(app.add_subcommand("integrability", "integrability suites"));
  integ->add_option("--suite", opt.suite, "18 | 10 | oracle | all");
  integ->add_flag("--parallel", opt.parallel, "scan the 18 relations across threads");
  auto* nondeg = add_input(app.add_subcommand("nondeg", "non-degenerate structures"));
  nondeg->add_flag("--complete", opt.complete_only, "only run the completion");
  nondeg->add_flag("--check", opt.check_only, "only run the five integrability conditions");
  auto* ldata = add_input(app.add_subcommand("ldata", "pointwise (W, D, sigma, epsilon) data"));
  ldata->add_option("--point", opt.point, "comma-separated rational coordinates");
  add_input(app.add_subcommand("transport", "apply an isomorphism and verify coherence"));
  add_input(app.add_subcommand("normal-form", "two-step reduction to J_omega + A"));
  auto* corpus = app.add_subcommand("corpus", "run a built-in example");
  corpus->fallthrough();
  corpus->add_option("name", corpus_name, "corpus entry (see corpus-list)")->required();
  app.add_subcommand("corpus-list", "list built-in examples")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::string cmd;
  for (auto* s : app.get_subcommands()) cmd = s->get_name();
  if (cmd == "corpus") cmd = "corpus " + corpus_name;

  try {
    return dispatch(cmd, opt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 1;
  }
}
