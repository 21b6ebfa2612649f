#include "regpet/regprod.hpp"

#include <cmath>

namespace regpet {

namespace {

template <class R> struct Channel {
  NumSeries<R> f, g;
};

template <class R> struct Pieces {
  complex_t<R> interior;
  R interior_err = 0;
  complex_t<R> positive;
  complex_t<R> constant;
  complex_t<R> negative;  // full complex sum with E_{2-k,phi}
  R tail_err = 0;
  int u_panels = 0;
  long terms = 0;
};

// integral over u in [-1/2, 1/2], sqrt(1-u^2) <= v <= 1 of sum f conj(g) v^(k-2)
template <class R>
complex_t<R> interior_once(const std::vector<Channel<R>>& ch, R k, int u_panels, int v_panels,
                           const GaussLegendre<R>& gl) {
  using C = complex_t<R>;
  using std::pow;
  using std::sqrt;
  using std::conj;
  auto inner = [&](R u) {
    R lo = sqrt(R(1) - u * u);
    auto fv = [&](R v) {
      C tau(u, v);
      C s(0);
      for (auto& c : ch) s += c.f.eval(tau) * conj(c.g.eval(tau));
      return s * C(pow(v, k - 2));
    };
    return gl_integrate<R>(fv, lo, R(1), v_panels, gl);
  };
  return gl_integrate<R>(inner, R(-0.5), R(0.5), u_panels, gl);
}

template <class R>
Pieces<R> compute(const std::vector<Channel<R>>& ch, double kd, const QuadratureOptions& opt, const Branch& br) {
  using C = complex_t<R>;
  using std::abs;
  Pieces<R> P;
  R k = R(kd);
  int k2 = int(std::lround(2 * kd));
  if (std::abs(2 * kd - k2) > 1e-12) throw domain_error("weight must be a half-integer");
  auto gl = gauss_legendre<R>(opt.nodes);
  int up = std::max(1, opt.u_panels);
  C prev = interior_once<R>(ch, k, up, std::max(1, up / 8), gl);
  R diff = 0;
  bool ok = false;
  for (int it = 0; it < 6; ++it) {
    up *= 2;
    C cur = interior_once<R>(ch, k, up, std::max(1, up / 8), gl);
    diff = abs(cur - prev);
    prev = cur;
    if (diff < R(opt.tol)) {
      ok = true;
      break;
    }
  }
  if (!ok) throw domain_error("interior quadrature did not reach the requested tolerance");
  P.interior = prev;
  P.interior_err = diff;
  P.u_panels = up;

  R four_pi = 4 * pi_v<R>();
  for (auto& c : ch) {
    int N = c.f.denom();
    long top = std::min(c.f.order(), c.g.order());
    R last = 0;
    for (long n = 1; n < top; ++n) {
      R a = c.f.coeff(n) * c.g.coeff(n);
      if (a == 0) continue;
      R e;
      C val = expint<R>(4 - k2, C(four_pi * R(n) / R(N)), Branch::Principal(), &e);
      P.positive += C(a) * val;
      last = abs(a * val.real());
      ++P.terms;
    }
    P.tail_err += 4 * last;
    R c0 = c.f.coeff(0) * c.g.coeff(0);
    if (k2 != 2 && c0 != 0) P.constant += C(c0 / (R(1) - k));
    long bot = std::max(c.f.nmin(), c.g.nmin());
    for (long n = -1; n >= bot; --n) {
      R a = c.f.coeff(n) * c.g.coeff(n);
      if (a == 0) continue;
      C val = expint<R>(4 - k2, C(four_pi * R(n) / R(N)), br);
      P.negative += C(a) * val;
      ++P.terms;
    }
  }
  return P;
}

template <class R> std::vector<Channel<R>> scalar_channels(const QSeries& f, const QSeries& g) {
  if (f.denom() != g.denom()) throw domain_error("series live on different grids");
  return {Channel<R>{NumSeries<R>(f), NumSeries<R>(g)}};
}

template <class R> std::vector<Channel<R>> vector_channels(const VectorForm& F, const VectorForm& G) {
  if (F.module != G.module || !F.module) throw domain_error("vector forms on different modules");
  std::vector<Channel<R>> out;
  for (auto& [a, fa] : F.components) {
    auto it = G.components.find(a);
    if (it == G.components.end()) continue;
    if (fa.denom() != it->second.denom()) throw domain_error("components live on different grids");
    out.push_back({NumSeries<R>(fa), NumSeries<R>(it->second)});
  }
  return out;
}

template <class R> ProductReport report(const Pieces<R>& P, double k) {
  ProductReport r;
  auto re = [](const complex_t<R>& z) { return to_cplx(z); };
  cplx neg = re(P.negative);
  cplx total = re(P.interior) + re(P.positive) + re(P.constant) + cplx(neg.real(), 0);
  r.value = total;
  double err = to_double(P.interior_err + P.tail_err);
  r.routes["B"] = {total, err};
  r.parameters["weight"] = k;
  r.parameters["u_panels"] = P.u_panels;
  r.parameters["terms"] = double(P.terms);
  r.parameters["interior_real"] = re(P.interior).real();
  r.parameters["interior_err"] = to_double(P.interior_err);
  r.parameters["tail_err"] = to_double(P.tail_err);
  return r;
}

template <class F> auto dispatch(Precision p, F&& fn) {
  if (p == Precision::extended) return fn(quad(0));
  return fn(0.0);
}

}  // namespace

ProductReport product_route_B_scalar(const QSeries& f, const QSeries& g, double k, const QuadratureOptions& opt) {
  return dispatch(opt.precision, [&](auto tag) {
    using R = decltype(tag);
    return report<R>(compute<R>(scalar_channels<R>(f, g), k, opt, opt.branch), k);
  });
}

ProductReport product_route_B_vector(const VectorForm& F, const VectorForm& G, double k,
                                     const QuadratureOptions& opt) {
  return dispatch(opt.precision, [&](auto tag) {
    using R = decltype(tag);
    return report<R>(compute<R>(vector_channels<R>(F, G), k, opt, opt.branch), k);
  });
}

cplx branch_value(const QSeries& f, const QSeries& g, double k, Branch phi, const QuadratureOptions& opt) {
  return dispatch(opt.precision, [&](auto tag) {
    using R = decltype(tag);
    auto P = compute<R>(scalar_channels<R>(f, g), k, opt, phi);
    cplx neg = to_cplx(P.negative);
    cplx ct = to_cplx(P.interior) + to_cplx(P.positive) + to_cplx(P.constant) + neg;
    return ct - cplx(0, neg.imag());
  });
}

cplx product_route_C(const QSeries& f, const std::map<long, cplx>& G_plus) {
  cplx s = 0;
  for (auto& [n, c] : f.coeffs()) {
    auto it = G_plus.find(-n);
    if (it != G_plus.end()) s += mpq_to<double>(c) * it->second;
  }
  return s;
}

cplx product_route_C(const VectorForm& F, const std::map<size_t, std::map<long, cplx>>& G_plus) {
  cplx s = 0;
  for (auto& [a, fa] : F.components) {
    auto it = G_plus.find(a);
    if (it != G_plus.end()) s += product_route_C(fa, it->second);
  }
  return s;
}

double petersson_direct(const QSeries& f, const QSeries& g, double k, double v_max) {
  if (f.valuation() < 1 && g.valuation() < 1) throw domain_error("direct quadrature needs a cusp form");
  if (f.valuation() < 0 || g.valuation() < 0) throw domain_error("direct quadrature needs holomorphic inputs");
  NumSeries<double> nf(f), ng(g);
  auto gl = gauss_legendre<double>(24);
  auto integrand = [&](double u, double v) {
    cplx tau(u, v);
    return (nf.eval(tau) * std::conj(ng.eval(tau))).real() * std::pow(v, k - 2);
  };
  auto column = [&](double u) {
    double lo = std::sqrt(1 - u * u);
    double a = gl_integrate<double>([&](double v) { return integrand(u, v); }, lo, 1.0, 2, gl);
    double b = gl_integrate<double>([&](double v) { return integrand(u, v); }, 1.0, v_max,
                                    int(std::ceil(4 * v_max)), gl);
    return a + b;
  };
  return gl_integrate<double>(column, -0.5, 0.5, 16, gl);
}

}  // namespace regpet
