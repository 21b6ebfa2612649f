#include "regpet/cocycle.hpp"

#include <cmath>

#include "regpet/specfun.hpp"

namespace regpet {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I1(0, 1);

cplx ipow(cplx z, long e) {
  cplx r(1);
  bool neg = e < 0;
  if (neg) e = -e;
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return neg ? 1.0 / r : r;
}

double factorial(long n) {
  double r = 1;
  for (long i = 2; i <= n; ++i) r *= double(i);
  return r;
}

struct Series {
  NumSeries<double> full;
  NumSeries<double> tail;  // positive exponents only
  explicit Series(const CocycleEvaluator& ev) : full(ev.f) {
    QSeries t = ev.f;
    for (long n = ev.f.valuation(); n <= 0; ++n) t.set(n, 0);
    tail = NumSeries<double>(t);
  }
};

// integral of (f_o^c - c(0))(z) K(z) along z = z0 + i t, t in [0, T]
template <class K> cplx ray_integral(const CocycleEvaluator& ev, const NumSeries<double>& tail, cplx z0, K&& ker) {
  auto gl = gauss_legendre<double>(ev.nodes);
  int panels = std::max(4, int(std::ceil(ev.T * ev.panels_per_unit)));
  auto fn = [&](double t) {
    cplx z = z0 + I1 * t;
    return tail.eval(z) * ker(z) * I1;
  };
  return gl_integrate<double>(fn, 0.0, ev.T, panels, gl);
}

// straight segment integral of g(z) K(z) from a to b
template <class G, class K> cplx segment_integral(G&& g, cplx a, cplx b, K&& ker, int panels, int nodes) {
  auto gl = gauss_legendre<double>(nodes);
  cplx d = b - a;
  auto fn = [&](double s) {
    cplx z = a + d * s;
    return g(z) * ker(z) * d;
  };
  return gl_integrate<double>(fn, 0.0, 1.0, panels, gl);
}

void check_tau(cplx tau) {
  if (!(tau.imag() > 0)) throw domain_error("tau must lie in the upper half-plane");
}

cplx fc_eval(const NumSeries<double>& full, int k, cplx z) {
  // real coefficients, so f^c = f
  return eval_modular<double>(full, k, z);
}

}  // namespace

CocycleEvaluator make_evaluator(const QSeries& f, double T) {
  double kw = f.weight();
  long k = std::lround(kw);
  if (std::abs(kw - double(k)) > 1e-12 || k > 0 || k % 2) throw domain_error("weight must be even and <= 0");
  if (f.denom() != 1) throw domain_error("level-one integral exponents required");
  CocycleEvaluator ev;
  ev.f = f;
  ev.k = int(k);
  ev.m0 = std::max(0L, -f.valuation());
  for (long j = 1; j <= ev.m0; ++j) ev.principal.push_back(mpq_to<double>(f.coeff(-j)));
  ev.T = T;
  return ev;
}

cplx G_f_eval(const CocycleEvaluator& ev, cplx tau) {
  check_tau(tau);
  if (tau.imag() < 0.25) throw domain_error("G_f needs Im tau >= 1/4 for its q-expansions");
  Series s(ev);
  int k = ev.k;
  double v = tau.imag();
  cplx z0 = -std::conj(tau);
  cplx I = ray_integral(ev, s.tail, z0, [&](cplx z) { return ipow(z + tau, k - 2); });
  double c0 = s.full.coeff(0);
  // constant part in closed form
  I += -c0 * ipow(2.0 * I1 * v, k - 1) / double(k - 1);
  cplx out = -ipow(2.0 * I1, 1 - k) * I;
  cplx wsum = 0;
  for (long n = 1; n <= ev.m0; ++n) {
    double c = ev.principal[size_t(n - 1)];
    if (c == 0) continue;
    cplx W = W_real<double>(2 * (2 - k), 2 * kPi * double(n) * v);
    wsum += c * std::pow(double(n), double(1 - k)) * W * std::exp(2.0 * kPi * I1 * double(n) * tau);
  }
  out -= std::pow(-4 * kPi, double(1 - k)) * wsum;
  return out;
}

cplx F_S_eval(const CocycleEvaluator& ev, cplx tau) {
  check_tau(tau);
  Series s(ev);
  int k = ev.k;
  cplx inv = -1.0 / tau;  // so z - 1/tau = z + inv
  cplx tk = ipow(tau, k - 2);
  cplx I = ray_integral(ev, s.tail, I1, [&](cplx z) { return ipow(z + tau, k - 2) - ipow(z + inv, k - 2) * tk; });
  double c0 = s.full.coeff(0);
  I += -c0 * ipow(I1 + tau, k - 1) / double(k - 1);
  I -= -c0 * ipow(I1 + inv, k - 1) / double(k - 1) * tk;
  cplx out = -ipow(2.0 * I1, 1 - k) * I;
  cplx wsum = 0;
  for (long n = 1; n <= ev.m0; ++n) {
    double c = ev.principal[size_t(n - 1)];
    if (c == 0) continue;
    double dn = double(n);
    cplx a = std::exp(2.0 * kPi * I1 * dn * tau) * W_complex<double>(2 * (2 - k), -kPi * I1 * dn * (tau + I1));
    cplx b = tk * std::exp(-2.0 * kPi * I1 * dn / tau) *
             W_complex<double>(2 * (2 - k), -kPi * I1 * dn * (I1 - 1.0 / tau));
    wsum += c * std::pow(dn, double(1 - k)) * (a - b);
  }
  out -= std::pow(-4 * kPi, double(1 - k)) * wsum;
  return out;
}

cplx slash(const Evaluator& h, int weight, const Mat2& M, cplx tau) {
  if (M.det() != 1) throw domain_error("matrix must have determinant 1");
  cplx j = double(M.c) * tau + double(M.d);
  return ipow(j, -weight) * h(apply<double>(M, tau));
}

cplx slash(const Evaluator& h, int weight, const FormalSum& s, cplx tau) {
  cplx acc = 0;
  for (auto& [c, M] : s.terms) acc += c * slash(h, weight, M, tau);
  return acc;
}

PeriodResiduals period_residuals(const CocycleEvaluator& ev, const std::vector<cplx>& points) {
  Evaluator F = [&](cplx t) { return F_S_eval(ev, t); };
  int w = 2 - ev.k;
  Mat2 U = Mat2::T() * Mat2::S();
  FormalSum sI, uu;
  sI.add(1, Mat2::S()).add(1, Mat2::I());
  uu.add(1, U * U).add(1, U).add(1, Mat2::I());
  PeriodResiduals r;
  for (auto& p : points) {
    r.s_plus_i = std::max(r.s_plus_i, std::abs(slash(F, w, sI, p)));
    r.u_relation = std::max(r.u_relation, std::abs(slash(F, w, uu, p)));
  }
  return r;
}

double fs_vs_gf(const CocycleEvaluator& ev, cplx tau) {
  Evaluator G = [&](cplx t) { return G_f_eval(ev, t); };
  FormalSum d;
  d.add(1, Mat2::S()).add(-1, Mat2::I());
  return std::abs(F_S_eval(ev, tau) + slash(G, 2 - ev.k, d, tau));
}

double cocycle_st_residual(const CocycleEvaluator& ev, cplx tau) {
  Evaluator G = [&](cplx t) { return G_f_eval(ev, t); };
  Evaluator F = [&](cplx t) { return F_S_eval(ev, t); };
  FormalSum d;
  d.add(1, Mat2::S() * Mat2::T()).add(-1, Mat2::I());
  cplx lhs = -slash(G, 2 - ev.k, d, tau);
  cplx rhs = slash(F, 2 - ev.k, Mat2::T(), tau);
  return std::abs(lhs - rhs);
}

double xi_residual(const CocycleEvaluator& ev, cplx tau, double h) {
  auto G = [&](cplx t) { return G_f_eval(ev, t); };
  // fourth-order central differences
  auto d = [&](cplx dir) {
    return (-G(tau + 2.0 * h * dir) + 8.0 * G(tau + h * dir) - 8.0 * G(tau - h * dir) + G(tau - 2.0 * h * dir)) /
           (12 * h);
  };
  cplx dbar = 0.5 * (d(1.0) + I1 * d(I1));
  double v = tau.imag();
  cplx xi = 2.0 * I1 * std::pow(v, double(2 - ev.k)) * std::conj(dbar);
  NumSeries<double> ns(ev.f);
  return std::abs(xi - eval_modular<double>(ns, ev.k, tau));
}

double holomorphy_residual(const CocycleEvaluator& ev, cplx tau, double h) {
  auto F = [&](cplx t) { return F_S_eval(ev, t); };
  auto d = [&](cplx dir) {
    return (-F(tau + 2.0 * h * dir) + 8.0 * F(tau + h * dir) - 8.0 * F(tau - h * dir) + F(tau - 2.0 * h * dir)) /
           (12 * h);
  };
  return std::abs(0.5 * (d(1.0) + I1 * d(I1)));
}

EichlerRelation eichler_relation_check(const CocycleEvaluator& ev, cplx tau) {
  check_tau(tau);
  if (!(tau.real() > 0)) throw domain_error("the relation needs Re tau > 0");
  Series s(ev);
  int k = ev.k;
  double g2k = factorial(1 - k);
  EichlerRelation r;
  // left side
  cplx lhs = -ipow(2.0 * I1, k - 1) * G_f_eval(ev, tau);
  auto fc = [&](cplx z) { return s.full.eval(z); };
  lhs += segment_integral(fc, I1, -std::conj(tau), [&](cplx z) { return ipow(tau + z, k - 2); }, 16, ev.nodes);
  cplx e3 = ipow(I1, 3 * (k - 1));  // e^{3 pi i (k-1)/2}
  cplx qs = 0;
  for (long n = 1; n <= ev.m0; ++n) {
    double c = ev.principal[size_t(n - 1)];
    qs += c / ipow(cplx(-2 * kPi * double(n)), k - 1) * std::exp(2.0 * kPi * I1 * double(n) * tau);
  }
  lhs -= e3 * kPi * I1 / g2k * qs;
  // right side, with m = 1 - k and b = 1
  cplx rhs = ray_integral(ev, s.tail, I1, [&](cplx z) { return ipow(z + tau, k - 2); });
  rhs += -s.full.coeff(0) * ipow(I1 + tau, k - 1) / double(k - 1);
  long m = 1 - k;
  for (long n = 1; n <= ev.m0; ++n) {
    double c = ev.principal[size_t(n - 1)];
    if (c == 0) continue;
    cplx x = 2 * kPi * double(n) * (1.0 - I1 * tau);
    cplx poly = 0;
    for (long l = 0; l <= m - 1; ++l) poly += ipow(x, l) * factorial(-k - l);
    cplx E1 = expint<double>(2, -x, Branch::Principal());
    cplx br = std::exp(x) / g2k * poly + ipow(x, m) / g2k * E1;
    rhs += c * ipow(I1, k - 1) * std::exp(2.0 * kPi * I1 * double(n) * tau) * ipow(1.0 - I1 * tau, k - 1) * br;
  }
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  return r;
}

cplx eichler_cocycle(const CocycleEvaluator& ev, const Mat2& M, cplx tau, cplx tau0) {
  check_tau(tau);
  check_tau(tau0);
  if (M == Mat2::I()) return 0;
  NumSeries<double> ns(ev.f);
  int k = ev.k;
  cplx b = -std::conj(tau0);
  cplx a = -apply<double>(M.inverse(), std::conj(tau0));
  auto fc = [&](cplx z) { return fc_eval(ns, k, z); };
  int panels = 16 + int(8 * std::abs(b - a));
  cplx val = segment_integral(fc, a, b, [&](cplx z) { return ipow(z + tau, k - 2); }, panels, ev.nodes);
  return (((1 - k) % 2) ? -1.0 : 1.0) * val;
}

double eichler_cocycle_law(const CocycleEvaluator& ev, const Mat2& M1, const Mat2& M2, cplx tau, cplx tau0) {
  int w = 2 - ev.k;
  Evaluator e1 = [&](cplx t) { return eichler_cocycle(ev, M1, t, tau0); };
  cplx lhs = eichler_cocycle(ev, M1 * M2, tau, tau0);
  cplx rhs = slash(e1, w, M2, tau) + eichler_cocycle(ev, M2, tau, tau0);
  return std::abs(lhs - rhs);
}

double eichler_coboundary(const CocycleEvaluator& ev, const Mat2& M, cplx tau, cplx tau0, cplx tau1) {
  NumSeries<double> ns(ev.f);
  int k = ev.k;
  auto fc = [&](cplx z) { return fc_eval(ns, k, z); };
  double sign = ((1 - k) % 2) ? -1.0 : 1.0;
  Evaluator a = [&](cplx t) {
    return sign * segment_integral(fc, -std::conj(tau0), -std::conj(tau1), [&](cplx z) { return ipow(z + t, k - 2); },
                                   16, ev.nodes);
  };
  FormalSum d;
  d.add(1, M).add(-1, Mat2::I());
  cplx diff = eichler_cocycle(ev, M, tau, tau1) - eichler_cocycle(ev, M, tau, tau0);
  return std::abs(diff + slash(a, 2 - k, d, tau));
}

}  // namespace regpet
