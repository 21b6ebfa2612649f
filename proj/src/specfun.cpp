#include "regpet/specfun.hpp"

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace regpet {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <class R> complex_t<R> clean_zero(complex_t<R> z) {
  // -0.0 imaginary parts are treated as +0 so that Log(-x) = log x + i pi
  if (z.imag() == 0) return complex_t<R>(z.real(), R(0));
  return z;
}

template <class R> R cabs(const complex_t<R>& z) {
  using std::abs;
  return abs(z);
}

}  // namespace

Branch Branch::Angle(double phi) {
  if (!(phi > kPi / 2 && phi < 3 * kPi / 2) || phi == kPi)
    throw domain_error("branch angle must lie in (pi/2, 3pi/2) without pi");
  return Branch{phi};
}

int half_int_twice(double r) {
  double t = 2 * r;
  long n = std::lround(t);
  if (std::abs(t - double(n)) > 1e-12) throw domain_error("order must be an integer or half-integer");
  return int(n);
}

template <class R> complex_t<R> log_branch(complex_t<R> z, const Branch& b) {
  using C = complex_t<R>;
  using std::log;
  using std::atan2;
  z = clean_zero<R>(z);
  R re = z.real(), im = z.imag();
  if (re == 0 && im == 0) throw domain_error("log of zero");
  R a = atan2(im, re);  // (-pi, pi]
  const R pi = pi_v<R>();
  if (b.phi == 0) {
    if (a < 0) a += 2 * pi;
  } else if (!b.principal()) {
    R phi = R(b.phi);
    // phi is given in double; snap the principal range onto (phi-2pi, phi]
    if (a > phi) a -= 2 * pi;
    else if (a <= phi - 2 * pi) a += 2 * pi;
  }
  R mod = cabs<R>(z);
  return C(log(mod), a);
}

template <class R> complex_t<R> pow_branch(complex_t<R> z, int a2, const Branch& b) {
  using C = complex_t<R>;
  using std::exp;
  if (a2 % 2 == 0) {
    int n = a2 / 2;
    C r(1), base = n >= 0 ? z : C(1) / z;
    for (int i = 0; i < std::abs(n); ++i) r *= base;
    return r;
  }
  return exp(C(R(a2) / 2) * log_branch<R>(z, b));
}

template <class R> R gamma_half(int r2) {
  using std::sqrt;
  const R sqpi = sqrt(pi_v<R>());
  if (r2 % 2 == 0) {
    int n = r2 / 2;
    if (n <= 0) throw domain_error("Gamma pole");
    R g = 1;
    for (int i = 2; i < n; ++i) g *= R(i);
    return g;
  }
  // Gamma(1/2) = sqrt(pi), then recurrence
  R g = sqpi;
  int cur = 1;  // twice the current argument
  while (cur < r2) {
    g *= R(cur) / 2;
    cur += 2;
  }
  while (cur > r2) {
    cur -= 2;
    g /= R(cur) / 2;
  }
  return g;
}

template <class R> R rgamma_half(int r2) {
  if (r2 % 2 == 0 && r2 <= 0) return R(0);
  return R(1) / gamma_half<R>(r2);
}

template <class R> R digamma_int(long n) {
  if (n <= 0) throw domain_error("digamma pole");
  R s = -euler_gamma_v<R>();
  for (long k = 1; k < n; ++k) s += R(1) / R(k);
  return s;
}

template <class R> complex_t<R> gamma_upper_int(long n, complex_t<R> w) {
  using C = complex_t<R>;
  using std::exp;
  if (n < 1) throw domain_error("closed form needs n >= 1");
  C s(0), term(1);
  for (long j = 0; j < n; ++j) {
    if (j > 0) term *= w / C(R(j));
    s += term;
  }
  R fact = 1;
  for (long i = 2; i < n; ++i) fact *= R(i);
  return C(fact) * exp(-w) * s;
}

namespace {

// principal-branch continued fraction, valid off the negative axis
template <class R> complex_t<R> expint_cf(R r, complex_t<R> z, R* err) {
  using C = complex_t<R>;
  using std::exp;
  const R tiny = R(1e-300);
  const R eps = eps_v<R>();
  C b = z + C(r);
  C c = C(1) / C(tiny);
  C d = C(1) / b;
  C h = d;
  int i = 1;
  for (; i < 20000; ++i) {
    C an(-R(i) * (r + R(i) - 1));
    b += C(2);
    d = C(1) / (an * d + b);
    c = b + an / c;
    C del = c * d;
    h *= del;
    if (cabs<R>(del - C(1)) < eps) break;
  }
  if (i >= 20000) throw domain_error("continued fraction did not converge");
  C v = h * exp(-z);
  if (err) *err = 8 * eps * cabs<R>(v) * R(1 + i / 50);
  return v;
}

// series forms on the selected branch
template <class R> complex_t<R> expint_series(int r2, complex_t<R> z, const Branch& br, R* err) {
  using C = complex_t<R>;
  using std::abs;
  const R eps = eps_v<R>();
  R scale = 0;
  if (r2 % 2 == 0) {
    long n = r2 / 2;  // n >= 1
    C s(0), term(1);  // term = (-z)^k / k!
    C lead(0);
    for (long k = 0; k < 4000; ++k) {
      if (k > 0) term *= -z / C(R(k));
      if (k == n - 1) {
        lead = term * (C(digamma_int<R>(n)) - log_branch<R>(z, br));
        continue;
      }
      C t = term / C(R(k - n + 1));
      s -= t;
      R at = cabs<R>(t);
      scale = std::max(scale, at);
      if (k > n + 5 && k > 2 * cabs<R>(z) && at < eps * cabs<R>(s) * R(1e-2)) break;
      if (k == 3999) throw domain_error("exponential integral series did not converge");
    }
    C v = lead + s;
    if (err) *err = 16 * eps * (scale + cabs<R>(v) + cabs<R>(lead));
    return v;
  }
  // half-integer r, a = 1 - r non-integer
  R r = R(r2) / 2;
  R a = 1 - r;
  C s(0), term(1);
  for (long k = 0; k < 4000; ++k) {
    if (k > 0) term *= -z / C(R(k));
    C t = term / C(a + R(k));
    s -= t;
    R at = cabs<R>(t);
    scale = std::max(scale, at);
    if (k > 5 && k > 2 * cabs<R>(z) && at < eps * cabs<R>(s) * R(1e-2)) break;
    if (k == 3999) throw domain_error("exponential integral series did not converge");
  }
  C lead = C(gamma_half<R>(2 - r2)) * pow_branch<R>(z, r2 - 2, br);
  C v = lead + s;
  if (err) *err = 16 * eps * (scale + cabs<R>(v) + cabs<R>(lead));
  return v;
}

template <class R> bool use_cf(complex_t<R> z) {
  using std::atan2;
  using std::abs;
  R az = cabs<R>(z);
  R ang = abs(atan2(z.imag(), z.real()));
  if (z.real() >= 0 && az >= R(1.5)) return true;
  return az > 8 && ang < R(0.85) * pi_v<R>();
}

}  // namespace

template <class R> complex_t<R> expint(int r2, complex_t<R> z, const Branch& b, R* err) {
  using C = complex_t<R>;
  using std::exp;
  z = clean_zero<R>(z);
  bool zero = z.real() == 0 && z.imag() == 0;
  R tmp = 0;
  if (!err) err = &tmp;
  if (r2 % 2 == 0 && r2 <= 0) {
    long m = -r2 / 2;
    if (zero) throw domain_error("E_r(0) diverges for r <= 1");
    // e^{-z} sum_{j=0}^m m!/j! z^{-(m-j+1)}
    C s(0), zi = C(1) / z;
    R coef = 1;  // m!/j! for j = m
    C zp = zi;   // z^{-(m-j+1)} for j = m
    for (long j = m; j >= 0; --j) {
      s += C(coef) * zp;
      coef *= R(j);
      zp *= zi;
    }
    C v = exp(-z) * s;
    *err = 8 * eps_v<R>() * cabs<R>(v) * R(m + 1);
    return v;
  }
  if (zero) {
    if (r2 <= 2) throw domain_error("E_r(0) diverges for r <= 1");
    R v = R(2) / R(r2 - 2);
    *err = 0;
    return C(v);
  }
  if (!use_cf<R>(z)) return expint_series<R>(r2, z, b, err);
  C v = expint_cf<R>(R(r2) / 2, z, err);
  if (b.principal()) return v;
  // branch correction relative to the principal value
  C lp = log_branch<R>(z, Branch::Principal()), lb = log_branch<R>(z, b);
  if (lp.imag() == lb.imag()) return v;
  if (r2 % 2 == 0) {
    long n = r2 / 2;
    C t(1);
    for (long k = 1; k <= n - 1; ++k) t *= -z / C(R(k));
    return v - t * (lb - lp);
  }
  C g(gamma_half<R>(2 - r2));
  C e(R(r2 - 2) / 2);
  return v + g * (exp(e * lb) - exp(e * lp));
}

template <class R> complex_t<R> gamma_upper_c(int r2, complex_t<R> z, const Branch& b, R* err) {
  using C = complex_t<R>;
  if (r2 % 2 == 0 && r2 >= 2) {
    C v = gamma_upper_int<R>(r2 / 2, z);
    if (err) *err = 8 * eps_v<R>() * cabs<R>(v) * R(r2);
    return v;
  }
  if (z.real() == 0 && z.imag() == 0) {
    if (r2 <= 0) throw domain_error("Gamma(r, 0) diverges for r <= 0");
    if (err) *err = 0;
    return C(gamma_half<R>(r2));
  }
  R e = 0;
  C v = pow_branch<R>(z, r2, b) * expint<R>(2 - r2, z, b, &e);
  if (err) *err = e * cabs<R>(pow_branch<R>(z, r2, b));
  return v;
}

template <class R> complex_t<R> W_real(int k2, R x) {
  using C = complex_t<R>;
  if (x == 0) throw domain_error("W_k needs a nonzero argument");
  C w(-2 * x, R(0));
  C e = expint<R>(k2, w, Branch::Principal());
  return pow_branch<R>(w, 2 - k2, Branch::Principal()) * C(e.real());
}

template <class R> complex_t<R> W_complex(int k2, complex_t<R> z) {
  using C = complex_t<R>;
  z = clean_zero<R>(z);
  if (z.imag() == 0 && z.real() <= 0) throw domain_error("W_k argument on the excluded ray");
  C w = C(-2) * z;
  C g = gamma_upper_c<R>(2 - k2, w, Branch::PositiveCut());
  // (-1)^{1-k} pi i / Gamma(k), principal power
  C sign = pow_branch<R>(C(-1), 2 - k2, Branch::Principal());
  return g + sign * C(R(0), pi_v<R>()) * C(rgamma_half<R>(k2));
}

template <class R> complex_t<R> digamma_c(complex_t<R> z) {
  using C = complex_t<R>;
  using std::log;
  using std::tan;
  using std::abs;
  using std::sin;
  using std::cos;
  const R pi = pi_v<R>();
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(to_double(z.real())))
    throw domain_error("digamma pole");
  if (z.real() < R(0.5)) {
    // psi(1-z) - pi cot(pi z)
    C pz = C(pi) * z;
    return digamma_c<R>(C(1) - z) - C(pi) * cos(pz) / sin(pz);
  }
  C acc(0);
  while (cabs<R>(z) < 20 || z.real() < 20) {
    acc -= C(1) / z;
    z += C(1);
  }
  static const double bern[][2] = {{1, 6},          {-1, 30},     {1, 42},          {-1, 30},
                                   {5, 66},         {-691, 2730}, {7, 6},           {-3617, 510},
                                   {43867, 798},    {-174611, 330}, {854513, 138},  {-236364091, 2730},
                                   {8553103, 6},    {-23749461029.0, 870}, {8615841276005.0, 14322}};
  C z2 = C(1) / (z * z), zp = z2;
  C s = log(z) - C(1) / (C(2) * z);
  for (int k = 1; k <= 15; ++k) {
    R b = R(bern[k - 1][0]) / R(bern[k - 1][1]);
    s -= C(b / R(2 * k)) * zp;
    zp *= z2;
  }
  return s + acc;
}

template complex_t<double> log_branch<double>(complex_t<double>, const Branch&);
template complex_t<quad> log_branch<quad>(complex_t<quad>, const Branch&);
template complex_t<double> pow_branch<double>(complex_t<double>, int, const Branch&);
template complex_t<quad> pow_branch<quad>(complex_t<quad>, int, const Branch&);
template complex_t<double> expint<double>(int, complex_t<double>, const Branch&, double*);
template complex_t<quad> expint<quad>(int, complex_t<quad>, const Branch&, quad*);
template complex_t<double> gamma_upper_c<double>(int, complex_t<double>, const Branch&, double*);
template complex_t<quad> gamma_upper_c<quad>(int, complex_t<quad>, const Branch&, quad*);
template double gamma_half<double>(int);
template quad gamma_half<quad>(int);
template double rgamma_half<double>(int);
template quad rgamma_half<quad>(int);
template complex_t<double> W_real<double>(int, double);
template complex_t<quad> W_real<quad>(int, quad);
template complex_t<double> W_complex<double>(int, complex_t<double>);
template complex_t<quad> W_complex<quad>(int, complex_t<quad>);
template complex_t<double> digamma_c<double>(complex_t<double>);
template complex_t<quad> digamma_c<quad>(complex_t<quad>);
template double digamma_int<double>(long);
template quad digamma_int<quad>(long);
template complex_t<double> gamma_upper_int<double>(long, complex_t<double>);
template complex_t<quad> gamma_upper_int<quad>(long, complex_t<quad>);

SpecValue exp_integral(double r, cplx z, Branch b) {
  double e = 0;
  cplx v = expint<double>(half_int_twice(r), z, b, &e);
  return {v, e};
}

SpecValue gamma_upper(double r, cplx z, Branch b) {
  double e = 0;
  cplx v = gamma_upper_c<double>(half_int_twice(r), z, b, &e);
  return {v, e};
}

SpecValue W_k(double k, cplx arg) {
  int k2 = half_int_twice(k);
  if (!(k2 <= 0 || k2 == 4)) throw domain_error("W_k supports k <= 0 in half-integers and k = 2");
  // the cross-check value from the other path bounds the error where both apply
  if (arg.imag() == 0) {
    cplx v = W_real<double>(k2, arg.real());
    return {v, 1e-14 * (1 + std::abs(v))};
  }
  cplx v = W_complex<double>(k2, arg);
  return {v, 1e-14 * (1 + std::abs(v))};
}

SpecValue digamma(cplx z) {
  cplx v = digamma_c<double>(z);
  return {v, 4e-15 * (1 + std::abs(v))};
}

SpecValue bessel_F(double x) {
  if (!(x > 0)) throw domain_error("bessel_F needs x > 0");
  if (x > 2) {
    double y1 = boost::math::cyl_neumann(1, x);
    double j0 = boost::math::cyl_bessel_j(0, x);
    double v = kPi * y1 + 2 * j0 / x;
    return {v, 4e-16 * (kPi * std::abs(y1) + std::abs(2 * j0 / x))};
  }
  // combined series with the 2/x poles cancelled
  double h = x / 2, h2 = h * h;
  double j1 = 0, t = h;  // (x/2)^{2k+1}/(k!(k+1)!)
  double psi_sum = 0;
  double tail = 0;
  double pk1 = -0.57721566490153286061, pk2 = 1 - 0.57721566490153286061;  // psi(k+1), psi(k+2)
  double u = h2;  // (x/2)^{2k}/(k!)^2 for k >= 1
  for (int k = 0; k < 60; ++k) {
    double sgn = (k % 2) ? -1.0 : 1.0;
    j1 += sgn * t;
    psi_sum += sgn * (pk1 + pk2) * t;
    if (k >= 1) {
      tail += sgn * u;
      u *= h2 / double((k + 1) * (k + 1));
    }
    t *= h2 / double((k + 1) * (k + 2));
    pk1 += 1.0 / (k + 1);
    pk2 += 1.0 / (k + 2);
    if (t < 1e-18 * std::abs(j1) && k > 3) break;
  }
  double v = 2 * j1 * std::log(h) - psi_sum + (2 / x) * tail;
  return {v, 1e-15 * (std::abs(2 * j1 * std::log(h)) + std::abs(psi_sum) + std::abs(2 / x * tail))};
}

SpecValue whittaker_Mn(long n, double v) {
  if (n < 1 || !(v > 0)) throw domain_error("whittaker_Mn needs n >= 1 and v > 0");
  double a = 4 * kPi * double(n) * v;
  auto ddt = [a](double t) { return (1 - a * t) * std::exp(-a * t); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  double e1 = 0, e2 = 0;
  double i1 = ts.integrate([&](double t, double tc) {
    // tc = 1 - t near the right endpoint
    double one_minus = t > 0.5 ? tc : 1 - t;
    return std::log(one_minus) * ddt(t);
  }, 0.0, 1.0, 1e-15, &e1);
  double i2 = es.integrate([&](double s) { return std::log(s) * ddt(1 + s); }, 1e-15, &e2);
  double pref = double(n) * std::exp(2 * kPi * double(n) * v);
  double val = pref * (i1 + i2);
  return {cplx(val, 0), pref * (e1 + e2) + 1e-15 * std::abs(val)};
}

SpecValue whittaker_Wn(long n, double v) {
  if (n >= 0 || !(v > 0)) throw domain_error("whittaker_Wn needs n < 0 and v > 0");
  double x = 2 * kPi * double(n) * v;
  cplx w = W_real<double>(4, x);
  cplx val = std::exp(-x) * w;
  return {val, 1e-14 * std::abs(val)};
}

SpecValue beta_half(double x, BetaVariant variant) {
  if (!(x > 0)) throw domain_error("beta_half needs x > 0");
  if (variant == BetaVariant::beta) {
    cplx v = expint<double>(1, cplx(x, 0));
    return {v, 1e-15 * std::abs(v)};
  }
  cplx w = W_real<double>(1, x);
  cplx v = -pow_branch<double>(cplx(-2 * x, 0), -1, Branch::Principal()) * w;
  return {v, 1e-14 * std::abs(v)};
}

double beta_half_quadrature(double x) {
  // t = 1 + s^2 removes nothing singular here; exp_sinh on [1, inf)
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([x](double s) { return std::exp(-x * (1 + s)) / std::sqrt(1 + s); }, 1e-15);
}

double beta_c_half_quadrature(double x) {
  // substitute t = s^2 to remove the endpoint singularity
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([x](double s) { return 2 * std::exp(2 * x * s * s); }, 0.0, 1.0, 1e-15);
}

}  // namespace regpet
