#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "regpet/cmtraces.hpp"
#include "regpet/cocycle.hpp"
#include "regpet/kloosterman.hpp"
#include "regpet/lseries.hpp"
#include "regpet/qseries.hpp"
#include "regpet/regprod.hpp"
#include "regpet/specfun.hpp"
#include "regpet/validation.hpp"
#include "regpet/weil.hpp"

using json = nlohmann::ordered_json;
using namespace regpet;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;
const double kPi = 3.14159265358979323846;

struct Common {
  int threads = 0;
  std::string output;
  bool deterministic = false;
  std::string precision = "standard";
};

Precision precision_of(const std::string& s) {
  if (s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw domain_error("precision must be standard or extended");
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

// f<m>, J, g1, E4E6/Delta, or any label understood by classical_form
QSeries resolve_form(const std::string& s, long order) {
  if (s.size() > 1 && s[0] == 'f' && std::isdigit(static_cast<unsigned char>(s[1])))
    return faber_basis(std::stol(s.substr(1)), order);
  if (s == "J") return faber_basis(1, order) - constant_series(24, order);
  if (s == "E4E6/Delta") return classical_form("E4", order) * classical_form("E6", order) / classical_form("Delta", order);
  return classical_form(s, order);
}

std::vector<CyclicFactor> parse_factors(const std::string& spec) {
  std::vector<CyclicFactor> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw domain_error("factor must look like n:p/q");
    out.push_back({std::stol(item.substr(0, colon)), mpq_class(item.substr(colon + 1))});
    out.back().q.canonicalize();
  }
  return out;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (auto& r : m) {
    json row = json::array();
    for (auto& x : r) row.push_back(cjson(x));
    rows.push_back(row);
  }
  return rows;
}

int emit(const Common& c, const std::string& command, json params, json results, bool pass) {
  json out;
  out["schema_version"] = kSchema;
  out["library_version"] = kVersion;
  out["command"] = command;
  params["threads"] = c.deterministic ? 1 : (c.threads > 0 ? c.threads : thread_count());
  params["precision"] = c.precision;
  out["parameters"] = params;
  out["results"] = results;
  out["pass"] = pass;
  std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!c.output.empty()) {
    std::ofstream f(c.output);
    if (!f) throw std::runtime_error("cannot write " + c.output);
    f << text;
  }
  return pass ? 0 : 1;
}

int effective_threads(const Common& c) { return c.deterministic ? 1 : c.threads; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized Petersson products, traces and cocycles"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads (default REGPET_THREADS or all cores)");
  app.add_option("-o,--output", common.output, "also write the JSON result to this file");
  app.add_flag("--deterministic", common.deterministic, "single-threaded, no timings in the output");
  app.add_option("--precision", common.precision, "standard or extended")->check(CLI::IsMember({"standard", "extended"}));

  std::function<int()> action;

  // basis
  auto* basis = app.add_subcommand("basis", "exact q-expansions");
  std::string family = "faber", label;
  long bm = 1, border = 16;
  int bk = 0;
  basis->add_option("--family", family)->check(CLI::IsMember({"faber", "wh", "classical"}));
  basis->add_option("--m", bm);
  basis->add_option("--k", bk);
  basis->add_option("--order", border);
  basis->add_option("--label", label, "label for --family classical");
  basis->callback([&] {
    action = [&] {
      QSeries f = family == "faber" ? faber_basis(bm, border)
                  : family == "wh"  ? wh_basis(bk, bm, border)
                                    : resolve_form(label, border);
      json params = {{"family", family}, {"m", bm}, {"k", bk}, {"order", border}, {"label", label}};
      return emit(common, "basis", params, {{"series", json::parse(f.to_json())}, {"display", f.to_string(12)}}, true);
    };
  });

  // specfun
  auto* spec = app.add_subcommand("specfun", "evaluate one special function");
  std::string fn = "expint";
  double sr = 1, sre = 1, sim = 0, sphi = kPi;
  spec->add_option("--function", fn)->check(CLI::IsMember({"expint", "gamma", "W", "F", "digamma", "M", "beta", "beta_c"}));
  spec->add_option("--r", sr, "order, or weight for W, or n for M");
  spec->add_option("--re", sre);
  spec->add_option("--im", sim);
  spec->add_option("--phi", sphi, "branch angle");
  spec->callback([&] {
    action = [&] {
      cplx z(sre, sim);
      Branch b = sphi == kPi ? Branch::Principal() : Branch::Angle(sphi);
      SpecValue v;
      if (fn == "expint") v = exp_integral(sr, z, b);
      else if (fn == "gamma") v = gamma_upper(sr, z, b);
      else if (fn == "W") v = W_k(sr, z);
      else if (fn == "F") v = bessel_F(sre);
      else if (fn == "digamma") v = digamma(z);
      else if (fn == "M") v = whittaker_Mn(std::lround(sr), sre);
      else if (fn == "beta") v = beta_half(sre, BetaVariant::beta);
      else v = beta_half(sre, BetaVariant::beta_c);
      json params = {{"function", fn}, {"r", sr}, {"z", cjson(z)}, {"phi", sphi}};
      return emit(common, "specfun", params, {{"value", cjson(v.value)}, {"abs_err", v.abs_err}}, true);
    };
  });

  // weil
  auto* weil = app.add_subcommand("weil", "Weil representation of a finite quadratic module");
  std::string factors = "2:1/4";
  bool wdual = false;
  weil->add_option("--factors", factors, "comma separated n:q for Z/n with Q(x) = q x^2");
  weil->add_flag("--dual", wdual);
  weil->callback([&] {
    action = [&] {
      auto A = fqm_create(parse_factors(factors));
      auto r = rho_matrices(A, wdual);
      auto I = identity_matrix(A.size());
      auto st = matmul(r.S, r.T);
      double unit = std::max(max_abs_diff(matmul(r.S, conj_transpose(r.S)), I),
                             max_abs_diff(matmul(r.T, conj_transpose(r.T)), I));
      double braid = max_abs_diff(matmul(matmul(st, st), st), matmul(r.S, r.S));
      CMatrix tn = I;
      for (long i = 0; i < A.level(); ++i) tn = matmul(tn, r.T);
      double tlev = max_abs_diff(tn, I);
      json res = {{"size", A.size()},         {"level", A.level()},   {"signature", A.signature()},
                  {"T", matrix_json(r.T)},    {"S", matrix_json(r.S)}, {"unitarity_defect", unit},
                  {"st_cubed_defect", braid}, {"t_level_defect", tlev}};
      bool pass = unit < 1e-12 && braid < 1e-12 && tlev < 1e-12;
      return emit(common, "weil", {{"factors", factors}, {"dual", wdual}}, res, pass);
    };
  });

  // kloosterman
  auto* kl = app.add_subcommand("kloosterman", "Kloosterman sums and the Bessel series");
  long km = 1, kn = 1, kc = 100000;
  kl->add_option("--m", km);
  kl->add_option("--n", kn);
  kl->add_option("--c-max", kc);
  kl->callback([&] {
    action = [&] {
      auto e = dit_coefficients({{km, kn}}, kc, effective_threads(common)).front();
      json first = json::array();
      for (long c = 1; c <= std::min(kc, 12L); ++c) first.push_back(kloosterman_sum(km, kn, c));
      json res = {{"kloosterman_first", first},
                  {"series_value", e.value},
                  {"tail_estimate", e.tail_estimate},
                  {"route_A", -4 * kPi * e.value}};
      return emit(common, "kloosterman", {{"m", km}, {"n", kn}, {"c_max", kc}}, res, true);
    };
  });

  // traces
  auto* tr = app.add_subcommand("traces", "CM traces (D < 0) or cycle-integral traces (d > 0)");
  std::vector<long> discs = {-3, -4, -7, -8};
  std::string tform = "J";
  tr->add_option("--disc", discs)->delimiter(',');
  tr->add_option("--form", tform);
  tr->callback([&] {
    action = [&] {
      auto f = resolve_form(tform, 64);
      json rows = json::array();
      for (long D : discs) {
        TraceValue t = D < 0 ? cm_trace(f, D, precision_of(common.precision)) : cycle_trace(f, D);
        rows.push_back({{"disc", D}, {"value", t.value}, {"est_err", t.est_err}, {"nearest", t.nearest},
                        {"residual", t.residual}, {"classes", D < 0 ? reduced_forms(D).size() : indefinite_classes(D).size()}});
      }
      return emit(common, "traces", {{"form", tform}, {"discs", discs}}, {{"traces", rows}}, true);
    };
  });

  // g1
  auto* g1 = app.add_subcommand("g1", "coefficients of the weight 3/2 form g1");
  long gn = 40;
  g1->add_option("--n-max", gn);
  g1->callback([&] {
    action = [&] {
      double res = 0;
      auto co = g1_coefficients(gn, precision_of(common.precision), &res);
      json c = json::object();
      for (auto& [n, v] : co) c[std::to_string(n)] = v;
      return emit(common, "g1", {{"n_max", gn}}, {{"coefficients", c}, {"max_residual", res}}, res < 1e-4);
    };
  });

  // inner-product
  auto* ip = app.add_subcommand("inner-product", "regularized inner product along several routes");
  std::string left = "f1", right = "f2", route = "all";
  long ip_c = 100000, ip_order = 64;
  double ip_phi = kPi;
  ip->add_option("--left", left);
  ip->add_option("--right", right);
  ip->add_option("--route", route)->check(CLI::IsMember({"A", "B", "C", "all"}));
  ip->add_option("--c-max", ip_c);
  ip->add_option("--order", ip_order);
  ip->add_option("--phi", ip_phi, "branch angle for the branch-value report");
  ip->callback([&] {
    action = [&] {
      json routes = json::object();
      bool want_a = route == "A" || route == "all", want_b = route == "B" || route == "all",
           want_c = route == "C" || route == "all";
      QuadratureOptions qo;
      qo.precision = precision_of(common.precision == "standard" ? "extended" : common.precision);
      auto faber_index = [](const std::string& s) -> long {
        return s.size() > 1 && s[0] == 'f' ? std::stol(s.substr(1)) : 0;
      };
      long m = faber_index(left), n = faber_index(right);
      if (left == "g1" || right == "g1") {
        if (left != right) throw domain_error("g1 pairs only with itself");
        auto A = fqm_create({{2, mpq_class(1, 4)}});
        auto G = g1_vector(A, g1_coefficients(120), 120);
        if (want_b) {
          auto p = product_route_B_vector(G, G, 1.5, qo);
          routes["B"] = {{"value", cjson(1.5 * p.value)}, {"err", 1.5 * p.routes.at("B").err}};
        }
        if (want_c) {
          auto h = horocycle_g1();
          std::map<size_t, std::map<long, cplx>> gp = {{1, {{1, h.scalar}}}};
          routes["C"] = {{"value", cjson(product_route_C(G, gp))}, {"err", h.err}, {"source", "horocycle"}};
        }
      } else {
        auto f = resolve_form(left, ip_order), g = resolve_form(right, ip_order);
        if (want_a && m > 0 && n > 0) {
          auto e = product_route_A({{m, n}}, ip_c, effective_threads(common)).front();
          routes["A"] = {{"value", cjson(e.value)}, {"err", e.tail_estimate}};
        }
        if (want_b) {
          auto p = product_route_B_scalar(f, g, f.weight(), qo);
          routes["B"] = {{"value", cjson(p.value)}, {"err", p.routes.at("B").err}};
          if (ip_phi != kPi) routes["B_phi"] = {{"value", cjson(branch_value(f, g, f.weight(), Branch::Angle(ip_phi), qo))}};
        }
        if (want_c && m > 0 && n > 0) {
          // holomorphic coefficient of the weight-2 preimage of f_n at q^m
          auto e = product_route_A({{m, n}}, ip_c, effective_threads(common)).front();
          routes["C"] = {{"value", cjson(product_route_C(f, {{m, e.value}}))},
                         {"err", e.tail_estimate}, {"source", "kloosterman"}};
        }
      }
      double dev = 0;
      std::vector<cplx> vals;
      for (auto& [k, v] : routes.items())
        if (k != "B_phi") vals.push_back({v["value"][0].get<double>(), v["value"][1].get<double>()});
      for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j) dev = std::max(dev, std::abs(vals[i] - vals[j]) / std::abs(vals[j]));
      json params = {{"left", left}, {"right", right}, {"route", route}, {"c_max", ip_c}, {"order", ip_order}};
      return emit(common, "inner-product", params, {{"routes", routes}, {"max_relative_deviation", dev}}, dev <= 1e-2);
    };
  });

  // lvalue
  auto* lv = app.add_subcommand("lvalue", "completed L-series L*(s)");
  std::string lform = "f1", lconv = "ik";
  double ls = 0, lt0 = 1;
  lv->add_option("--form", lform);
  lv->add_option("--s", ls);
  lv->add_option("--t0", lt0);
  lv->add_option("--convention", lconv)->check(CLI::IsMember({"ik", "is"}));
  lv->callback([&] {
    action = [&] {
      auto g = resolve_form(lform, 64);
      auto L = lstar(g, ls, lt0, lconv == "ik" ? LConvention::ik : LConvention::is, precision_of(common.precision));
      json params = {{"form", lform}, {"s", ls}, {"t0", lt0}, {"convention", lconv}};
      return emit(common, "lvalue", params, {{"value", cjson(L.value)}, {"err", L.err}}, true);
    };
  });

  // theorem13
  auto* th = app.add_subcommand("theorem13", "three evaluations of the g1 self-product");
  th->callback([&] {
    action = [&] {
      auto r = run_criterion("A5", criterion_A5, ValidationOptions{});
      json res = {{"horocycle", r.metrics["horocycle"]},
                  {"lvalue_route", r.metrics["lvalue_route"]},
                  {"quadrature_route", r.metrics["quadrature_route"]},
                  {"max_pairwise_dev", r.metrics["max_pairwise_dev"]}};
      return emit(common, "theorem13", json::object(), res, r.pass);
    };
  });

  // taylor-check
  auto* tc = app.add_subcommand("taylor-check", "Taylor coefficients of G_k at the cusp against L-values");
  std::string tform2 = "E4E6/Delta";
  std::vector<long> tn = {0, 1, 2};
  double th_h = 0.01, tT = 14;
  tc->add_option("--form", tform2);
  tc->add_option("--n", tn)->delimiter(',');
  tc->add_option("--step", th_h, "extrapolation step h");
  tc->add_option("--T", tT);
  tc->callback([&] {
    action = [&] {
      common.precision = "extended";
      auto f = resolve_form(tform2, 64);
      json rows = json::array();
      bool pass = true;
      for (long n : tn) {
        auto t = taylor_check(f, n, th_h, tT);
        bool ok = t.self_consistency < 1e-5 && t.rel_err < 1e-5;
        pass = pass && ok;
        rows.push_back({{"n", n}, {"lhs", cjson(t.lhs)}, {"lhs_coarse", cjson(t.lhs_coarse)},
                        {"self_consistency", t.self_consistency}, {"rhs", cjson(t.rhs)},
                        {"rhs_without_factorial", cjson(t.rhs_printed)}, {"rel_err", t.rel_err}, {"pass", ok}});
      }
      return emit(common, "taylor-check", {{"form", tform2}, {"h", th_h}, {"T", tT}}, {{"checks", rows}}, pass);
    };
  });

  // cocycle-check
  auto* cc = app.add_subcommand("cocycle-check", "period functions and Eichler cocycles");
  std::string cform = "f1";
  double cT = 10;
  cc->add_option("--form", cform);
  cc->add_option("--T", cT);
  cc->callback([&] {
    action = [&] {
      auto ev = make_evaluator(resolve_form(cform, 64), cT);
      const std::vector<cplx> pts = {{0.4, 0.9}, {-0.3, 1.5}, {0.25, 0.7}};
      json rows = json::array();
      double worst_fs = 0, worst_law = 0, worst_rel = 0;
      for (auto p : pts) {
        double a = fs_vs_gf(ev, p), b = cocycle_st_residual(ev, p), h = holomorphy_residual(ev, p);
        worst_fs = std::max(worst_fs, a);
        rows.push_back({{"tau", cjson(p)}, {"G_f", cjson(G_f_eval(ev, p))}, {"F_S", cjson(F_S_eval(ev, p))},
                        {"fs_vs_gf", a}, {"st_residual", b}, {"holomorphy", h}});
      }
      for (cplx p : {cplx(0.5, 1.2), cplx(0.3, 0.9), cplx(0.8, 1.5)})
        worst_rel = std::max(worst_rel, eichler_relation_check(ev, p).residual);
      for (cplx p : {cplx(0.3, 1.4), cplx(-0.2, 0.9), cplx(0.45, 1.1)})
        worst_law = std::max(worst_law, eichler_cocycle_law(ev, Mat2::S(), Mat2::T(), p, {0, 2}));
      auto pr = period_residuals(ev, pts);
      json res = {{"points", rows},
                  {"period_s_plus_i", pr.s_plus_i},
                  {"period_u_relation", pr.u_relation},
                  {"xi_residual", xi_residual(ev, {0.3, 1.1})},
                  {"eichler_relation", worst_rel},
                  {"cocycle_law", worst_law}};
      bool pass = worst_fs < 1e-7 && pr.s_plus_i < 1e-7 && pr.u_relation < 1e-7 && worst_rel < 1e-6 && worst_law < 1e-8;
      return emit(common, "cocycle-check", {{"form", cform}, {"T", cT}}, res, pass);
    };
  });

  // reproduce-all
  auto* ra = app.add_subcommand("reproduce-all", "run every acceptance criterion and write a scoreboard");
  std::string outdir = "results";
  long ra_c = 100000;
  ra->add_option("--out-dir", outdir);
  ra->add_option("--c-max", ra_c);
  ra->callback([&] {
    action = [&] {
      ValidationOptions vo;
      vo.c_max = ra_c;
      vo.c_max_coarse = ra_c / 10;
      vo.threads = effective_threads(common);
      std::filesystem::create_directories(outdir);
      std::ofstream md(outdir + "/scoreboard.md"), csv(outdir + "/scoreboard.csv");
      md << "| criterion | status | summary |\n|---|---|---|\n";
      csv << "criterion,status,summary\n";
      json all = json::array();
      bool pass = true;
      for (auto& [id, fn] : all_criteria()) {
        auto r = run_criterion(id, fn, vo);
        pass = pass && r.pass;
        md << "| " << id << " | " << (r.pass ? "PASS" : "FAIL") << " | " << r.summary << " |\n";
        csv << id << "," << (r.pass ? "PASS" : "FAIL") << ",\"" << r.summary << "\"\n";
        json entry = {{"id", id}, {"pass", r.pass}, {"summary", r.summary}, {"metrics", r.metrics}};
        if (!common.deterministic) entry["seconds"] = r.seconds;
        all.push_back(entry);
        std::cerr << id << (r.pass ? " PASS " : " FAIL ") << r.summary << "\n";
      }
      if (common.output.empty()) common.output = outdir + "/results.json";
      return emit(common, "reproduce-all", {{"c_max", ra_c}, {"out_dir", outdir}}, {{"criteria", all}}, pass);
    };
  });

  CLI11_PARSE(app, argc, argv);
  if (common.threads > 0) setenv("REGPET_THREADS", std::to_string(common.threads).c_str(), 1);
  if (common.deterministic) setenv("REGPET_THREADS", "1", 1);
  try {
    return action();
  } catch (const std::exception& e) {
    json err = {{"schema_version", kSchema}, {"library_version", kVersion}, {"error", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
}
