#include "regpet/lseries.hpp"

#include <cmath>

#include "regpet/specfun.hpp"

namespace regpet {

namespace {

template <class C> C ipow(C z, long e) {
  C r(1);
  bool neg = e < 0;
  if (neg) e = -e;
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return neg ? C(1) / r : r;
}

int weight_int(const QSeries& f) {
  double k = f.weight();
  long ki = std::lround(k);
  if (std::abs(k - double(ki)) > 1e-12) throw domain_error("integral weight required");
  return int(ki);
}

template <class R> LValue lstar_impl(const QSeries& g, double s, double t0, LConvention conv) {
  using C = complex_t<R>;
  using std::pow;
  using std::abs;
  int s2 = half_int_twice(s);
  int k = weight_int(g);
  if (!(t0 > 0)) throw domain_error("t0 must be positive");
  NumSeries<R> ns(g);
  R c0 = ns.coeff(0);
  bool vanish = conv == LConvention::ik && k == 0;
  if (c0 != 0 && !vanish && (s2 == 0 || s2 == 2 * k)) throw domain_error("L* is singular at s = 0 and s = k when c(0) != 0");
  const R two_pi = 2 * pi_v<R>();
  R T0 = R(t0);
  C ik = i_pow<R>(k);
  C acc(0);
  R err = 0, last = 0;
  for (long m = ns.nmin(); m < ns.order(); ++m) {
    if (m == 0) continue;
    R c = ns.coeff(m);
    if (c == 0) continue;
    C w(two_pi * R(m));
    R e1 = 0, e2 = 0;
    C a = gamma_upper_c<R>(s2, w * C(T0), Branch::Principal(), &e1) / pow_branch<R>(w, s2, Branch::Principal());
    C b = gamma_upper_c<R>(2 * k - s2, w / C(T0), Branch::Principal(), &e2) /
          pow_branch<R>(w, 2 * k - s2, Branch::Principal());
    C term = C(c) * (a + ik * b);
    acc += term;
    err += abs(c) * (e1 / abs(pow_branch<R>(w, s2, Branch::Principal())) +
                     e2 / abs(pow_branch<R>(w, 2 * k - s2, Branch::Principal())));
    if (m > 0) last = abs(term);
  }
  err += 4 * last;
  if (c0 != 0 && !vanish) {
    C lead = conv == LConvention::ik ? ik : pow_branch<R>(C(0, 1), s2, Branch::Principal());
    R S = R(s2) / 2;
    acc -= C(c0) * (lead * C(pow(T0, S - R(k)) / (R(k) - S)) + C(pow(T0, S) / S));
  }
  LValue out;
  out.s = s;
  out.t0 = t0;
  out.value = to_cplx(acc);
  out.err = to_double(err) + 16 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
  return out;
}

using Cq = complex_t<quad>;

struct GkParts {
  Cq value;
  quad err = 0;
};

// G_k(tau) in extended precision
GkParts gk_impl(const NumSeries<quad>& ns, int k, const Cq& tau, quad T) {
  const quad pi = pi_v<quad>();
  auto gl = gauss_legendre<quad>(30);
  // f-tilde(z) = sum_{n>0} conj c(n) e(n z); coefficients are real
  auto ft = [&](quad t) { return ns.eval_range(Cq(0, t), 1, ns.order()); };
  auto integrand = [&](quad t) {
    Cq z(0, t);
    Cq ker = ipow(z + tau, k - 2) - ipow(z * tau - Cq(1), k - 2);
    return ft(t) * ker * Cq(0, 1);
  };
  int panels = int(std::ceil(to_double(T - 1) * 3));
  Cq I1 = gl_integrate<quad>(integrand, quad(1), T, panels, gl);
  Cq I2 = gl_integrate<quad>(integrand, quad(1), T, 2 * panels, gl);
  GkParts out;
  out.err = abs(I2 - I1) + abs(ns.coeff(1)) * exp(-2 * pi * T);
  Cq pre = Cq(-1) / ipow(Cq(0, 2), k - 1);
  Cq v = pre * I2;
  Cq wsum(0);
  for (long j = 1; j <= -ns.nmin(); ++j) {
    quad c = ns.coeff(-j);
    if (c == 0) continue;
    Cq arg = Cq(0, -pi * quad(j)) * (tau + Cq(0, 1));
    wsum += Cq(c / pow(quad(j), quad(k - 1))) * exp(Cq(0, 2 * pi * quad(j)) * tau) * W_complex<quad>(2 * (2 - k), arg);
  }
  // e^{-pi i k} = 1 for even k
  v += wsum / ipow(Cq(4 * pi), k - 1);
  out.value = v;
  return out;
}

int check_gk_weight(const QSeries& f) {
  int k = weight_int(f);
  if (k > 0 || k % 2) throw domain_error("weight must lie in -2N_0");
  return k;
}

// n-th Taylor coefficient at 0 from samples along i*j*h, j = 1..M
Cq extrapolate(const NumSeries<quad>& ns, int k, long n, quad h, quad T, double* cond, quad* err) {
  long M = 2 * n + 6;
  std::vector<Cq> y(static_cast<size_t>(M));
  quad e = 0;
  for (long j = 1; j <= M; ++j) {
    auto g = gk_impl(ns, k, Cq(0, h * quad(j)), T);
    y[size_t(j - 1)] = g.value;
    e = std::max(e, g.err);
  }
  // Vandermonde in x = j: sum_m b_m j^m = y_j
  std::vector<std::vector<quad>> A(static_cast<size_t>(M), std::vector<quad>(static_cast<size_t>(M)));
  for (long j = 0; j < M; ++j) {
    quad p = 1;
    for (long m = 0; m < M; ++m) {
      A[size_t(j)][size_t(m)] = p;
      p *= quad(j + 1);
    }
  }
  // Gaussian elimination with partial pivoting
  std::vector<std::vector<quad>> Ainv(static_cast<size_t>(M), std::vector<quad>(static_cast<size_t>(M), quad(0)));
  for (long i = 0; i < M; ++i) Ainv[size_t(i)][size_t(i)] = 1;
  auto B = A;
  for (long c = 0; c < M; ++c) {
    long piv = c;
    for (long r = c + 1; r < M; ++r)
      if (abs(B[size_t(r)][size_t(c)]) > abs(B[size_t(piv)][size_t(c)])) piv = r;
    std::swap(B[size_t(c)], B[size_t(piv)]);
    std::swap(Ainv[size_t(c)], Ainv[size_t(piv)]);
    quad d = B[size_t(c)][size_t(c)];
    for (long m = 0; m < M; ++m) {
      B[size_t(c)][size_t(m)] /= d;
      Ainv[size_t(c)][size_t(m)] /= d;
    }
    for (long r = 0; r < M; ++r) {
      if (r == c) continue;
      quad f = B[size_t(r)][size_t(c)];
      if (f == 0) continue;
      for (long m = 0; m < M; ++m) {
        B[size_t(r)][size_t(m)] -= f * B[size_t(c)][size_t(m)];
        Ainv[size_t(r)][size_t(m)] -= f * Ainv[size_t(c)][size_t(m)];
      }
    }
  }
  quad na = 0, ni = 0;
  for (long r = 0; r < M; ++r) {
    quad ra = 0, ri = 0;
    for (long m = 0; m < M; ++m) {
      ra += abs(A[size_t(r)][size_t(m)]);
      ri += abs(Ainv[size_t(r)][size_t(m)]);
    }
    na = std::max(na, ra);
    ni = std::max(ni, ri);
  }
  if (cond) *cond = to_double(na * ni);
  Cq bn(0);
  quad rowabs = 0;
  for (long j = 0; j < M; ++j) {
    bn += Cq(Ainv[size_t(n)][size_t(j)]) * y[size_t(j)];
    rowabs += abs(Ainv[size_t(n)][size_t(j)]);
  }
  // a_n = b_n / (i h)^n
  Cq scale = ipow(Cq(0, h), n);
  if (err) *err = rowabs * e / pow(h, quad(n));
  return bn / scale;
}

}  // namespace

LValue lstar(const QSeries& g, double s, double t0, LConvention conv, Precision prec) {
  if (prec == Precision::extended) return lstar_impl<quad>(g, s, t0, conv);
  return lstar_impl<double>(g, s, t0, conv);
}

HorocycleValue horocycle_g1(int nodes) {
  QSeries J = faber_basis(1, 64) - constant_series(24, 64);
  NumSeries<double> ns(J);
  auto integrand = [&](double u) {
    cplx tau(u, 1.0);
    return ns.eval(tau) * digamma_c<double>(tau);
  };
  auto gl = gauss_legendre<double>(nodes);
  cplx a = gl_integrate<double>(integrand, 0.0, 1.0, 8, gl);
  cplx b = gl_integrate<double>(integrand, 0.0, 1.0, 16, gl);
  const double pi = pi_v<double>();
  HorocycleValue h;
  h.scalar = -3.0 / (2 * pi) * b.real();
  h.vector = h.scalar * 2.0 / 3.0;
  h.err = 3.0 / (2 * pi) * std::abs(b - a) + 1e-13 * std::abs(h.scalar);
  return h;
}

GkValue gk_eval(const QSeries& f, cplx tau, double T) {
  int k = check_gk_weight(f);
  if (!(tau.imag() > 0)) throw domain_error("tau must lie in the upper half-plane");
  NumSeries<quad> ns(f);
  auto g = gk_impl(ns, k, from_cplx<quad>(tau), quad(T));
  return {to_cplx(g.value), to_double(g.err)};
}

TaylorCheck taylor_check(const QSeries& f, long n, double h, double T) {
  int k = check_gk_weight(f);
  if (n < 0 || n > 4) throw domain_error("n must lie in 0..4");
  NumSeries<quad> ns(f);
  TaylorCheck out;
  out.n = n;
  double cond1 = 0, cond2 = 0;
  quad e1 = 0, e2 = 0;
  Cq l1 = extrapolate(ns, k, n, quad(h), quad(T), &cond1, &e1);
  Cq l2 = extrapolate(ns, k, n, quad(h) / 2, quad(T), &cond2, &e2);
  out.lhs = to_cplx(l2);
  out.lhs_coarse = to_cplx(l1);
  out.condition = std::max(cond1, cond2);
  out.self_consistency = to_double(abs(l1 - l2) / abs(l2));

  // right-hand side; f^c has the conjugate (here equal) coefficients
  const quad pi = pi_v<quad>();
  quad poch = 1;
  for (long i = 0; i < n; ++i) poch *= quad(k - n - 1 + i);
  quad nfact = 1;
  for (long i = 2; i <= n; ++i) nfact *= quad(i);
  // the bracket uses the i^s form of L* at t0 = 1
  LValue L = lstar_impl<quad>(f, double(n + 1), 1.0, LConvention::is);
  Cq Lv = from_cplx<quad>(L.value);
  quad c0 = ns.coeff(0);
  Cq bracket = Lv + Cq(c0) * (i_pow<quad>(n + 1) / Cq(quad(k - n - 1)) + Cq(quad(1) / quad(n + 1)));
  Cq lastsum(0);
  for (long j = 1; j <= -ns.nmin(); ++j) {
    quad c = ns.coeff(-j);
    if (c == 0) continue;
    Cq w(-2 * pi * quad(j));
    bracket -= Cq(c) * gamma_upper_int<quad>(n + 1, w) / ipow(w, n + 1);
    lastsum += Cq(c / pow(quad(j), quad(k - n - 1)));
  }
  Cq first = Cq(-poch) / (Cq(pow(quad(2), quad(k - 1))) * i_pow<quad>(n + k) * Cq(nfact)) * bracket;
  quad g2k = 1;  // Gamma(2 - k) = (1 - k)!
  for (long i = 2; i <= 1 - k; ++i) g2k *= quad(i);
  Cq second = Cq(pow(quad(2), quad(2 - 2 * k + n)) * pow(pi, quad(n - k + 2)) / g2k) * i_pow<quad>(n - 1) * lastsum;
  out.rhs = to_cplx(first + second / Cq(nfact));
  out.rhs_printed = to_cplx(first + second);
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

}  // namespace regpet
