#include "regpet/cmtraces.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "regpet/modular.hpp"

namespace regpet {

namespace {

constexpr double kPi = 3.14159265358979323846;

long isqrt(long n) {
  long r = long(std::sqrt(double(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(long n) {
  if (n < 0) return false;
  long r = isqrt(n);
  return r * r == n;
}

void check_disc(long D) {
  long r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw domain_error("discriminant must be 0 or 1 mod 4");
}

}  // namespace

std::vector<QuadForm> reduced_forms(long D) {
  if (D >= 0) throw domain_error("reduced_forms needs D < 0");
  check_disc(D);
  std::vector<QuadForm> out;
  long amax = isqrt(-D / 3);
  for (long a = 1; a <= amax; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

int stabilizer_weight(const QuadForm& Q) {
  if (Q.a == Q.b && Q.b == Q.c) return 3;
  if (Q.b == 0 && Q.a == Q.c) return 2;
  return 1;
}

long class_count_bruteforce(long D) {
  // reduce every form with |b| <= a <= c by explicit SL2(Z) moves and count distinct results
  check_disc(D);
  std::set<std::tuple<long, long, long>> seen;
  long lim = isqrt(-D) + 2;
  for (long a = 1; a <= lim; ++a)
    for (long b = -2 * a; b <= 2 * a; ++b) {
      long num = b * b - D;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      long A = a, B = b, Cc = c;
      for (int it = 0; it < 1000; ++it) {
        if (B > A || B <= -A) {
          // translate: b -> b - 2 a k
          long k = (long)std::floor((double(B) + double(A)) / (2.0 * double(A)));
          if (B - 2 * A * k <= -A) --k;
          long nb = B - 2 * A * k;
          Cc = A * k * k - B * k + Cc;
          B = nb;
          continue;
        }
        if (A > Cc) {
          std::swap(A, Cc);
          B = -B;
          continue;
        }
        if (A == Cc && B < 0) B = -B;
        break;
      }
      seen.insert({A, B, Cc});
    }
  return long(seen.size());
}

TraceValue cm_trace(const QSeries& f, long D, Precision prec) {
  auto run = [&](auto tag) {
    using R = decltype(tag);
    using C = complex_t<R>;
    NumSeries<R> ns(f);
    using std::sqrt;
    using std::abs;
    R sq = sqrt(R(-D));
    C acc(0);
    R err = 0;
    for (auto& Q : reduced_forms(D)) {
      C tau(R(-Q.b) / R(2 * Q.a), sq / R(2 * Q.a));
      C v = ns.eval(tau);
      R w = R(stabilizer_weight(Q));
      acc += v / C(w);
      err += (ns.tail_bound(tau) + 64 * eps_v<R>() * abs(v)) / w;
    }
    TraceValue t;
    t.disc = D;
    t.kind = TraceKind::cm;
    t.value = to_double(acc.real());
    t.est_err = to_double(err);
    using std::round;
    R re = acc.real();
    R rr = round(re);
    t.nearest = static_cast<long>(rr);
    t.residual = to_double(abs(re - rr));
    return t;
  };
  if (prec == Precision::extended) return run(quad(0));
  return run(0.0);
}

QuadForm act(const QuadForm& Q, long a, long b, long c, long d) {
  // (Q o M)(x, y) = Q(a x + b y, c x + d y)
  QuadForm r;
  r.a = Q.a * a * a + Q.b * a * c + Q.c * c * c;
  r.b = 2 * Q.a * a * b + Q.b * (a * d + b * c) + 2 * Q.c * c * d;
  r.c = Q.a * b * b + Q.b * b * d + Q.c * d * d;
  return r;
}

QuadForm rho_step(const QuadForm& Q) {
  long d = Q.disc();
  long c = Q.c;
  long ac = std::labs(c);
  // b' = -b mod 2|c| with sqrt(d) - 2|c| < b' < sqrt(d)
  long m = 2 * ac;
  long target = -Q.b;
  // largest b' < sqrt(d) in the class
  long s = isqrt(d);  // floor(sqrt d), d nonsquare so b' <= s
  long bp = target + m * ((s - target) >= 0 ? (s - target) / m : -((target - s + m - 1) / m));
  while (bp > s) bp -= m;
  while (bp + m <= s) bp += m;
  QuadForm r{c, bp, (bp * bp - d) / (4 * c)};
  return r;
}

std::vector<QuadForm> indefinite_classes(long d) {
  if (d <= 0) throw domain_error("indefinite_classes needs d > 0");
  check_disc(d);
  if (is_square(d)) throw domain_error("square discriminants are unsupported");
  long s = isqrt(d);
  std::vector<QuadForm> reduced;
  for (long b = 1; b <= s; ++b) {
    if (((b - d) % 2) != 0) continue;
    long N = (d - b * b);
    if (N % 4) continue;
    N /= 4;
    for (long a0 = 1; a0 <= N; ++a0) {
      if (N % a0) continue;
      for (long a : {a0, -a0}) {
        long aa = 2 * a0;
        // sqrt(d) - b < 2|a| < sqrt(d) + b
        bool lower = (aa + b) * (aa + b) > d;
        bool upper = (aa - b) <= 0 || (aa - b) * (aa - b) < d;
        if (lower && upper) reduced.push_back({a, b, -N / a});
      }
    }
  }
  std::vector<QuadForm> reps;
  std::vector<char> used(reduced.size(), 0);
  for (size_t i = 0; i < reduced.size(); ++i) {
    if (used[i]) continue;
    reps.push_back(reduced[i]);
    QuadForm q = reduced[i];
    for (size_t guard = 0; guard <= reduced.size() + 1; ++guard) {
      for (size_t j = 0; j < reduced.size(); ++j)
        if (reduced[j] == q) used[j] = 1;
      q = rho_step(q);
      if (q == reduced[i]) break;
    }
  }
  return reps;
}

std::pair<long, long> pell_fundamental(long d) {
  if (d <= 0 || is_square(d)) throw domain_error("Pell equation needs a positive nonsquare");
  for (long u = 1; u < 100000000; ++u) {
    __int128 v = (__int128)d * u * u + 4;
    long t = long(std::sqrt(double(v)));
    for (long tt = std::max(0L, t - 2); tt <= t + 2; ++tt)
      if ((__int128)tt * tt == v) return {tt, u};
  }
  throw domain_error("Pell search exhausted");
}

double log_epsilon(const QuadForm& Q) {
  long g = std::gcd(std::gcd(std::labs(Q.a), std::labs(Q.b)), std::labs(Q.c));
  long d = Q.disc() / (g * g);
  auto [t, u] = pell_fundamental(d);
  return std::log((double(t) + double(u) * std::sqrt(double(d))) / 2);
}

CycleIntegral cycle_integral(const QSeries& f, const QuadForm& Q, double s0) {
  long d = Q.disc();
  if (d <= 0 || is_square(d)) throw domain_error("cycle integral needs a positive nonsquare discriminant");
  NumSeries<double> ns(f);
  double sd = std::sqrt(double(d));
  double x0 = -double(Q.b) / (2.0 * double(Q.a));
  double r = sd / (2.0 * std::labs(Q.a));
  double L = 2 * log_epsilon(Q);
  auto integrand = [&](double s) {
    cplx tau(x0 + r * std::tanh(s), r / std::cosh(s));
    return eval_modular<double>(ns, 0, tau) / sd;
  };
  auto gl = gauss_legendre<double>(20);
  int panels = std::max(4, int(std::ceil(L * (2 + 2 * r))));
  cplx prev = gl_integrate<double>(integrand, s0, s0 + L, panels, gl);
  auto absint = [&](double s) { return std::abs(integrand(s)); };
  double scale = gl_integrate<double>(absint, s0, s0 + L, panels, gl);
  for (int it = 0; it < 8; ++it) {
    panels *= 2;
    cplx cur = gl_integrate<double>(integrand, s0, s0 + L, panels, gl);
    double diff = std::abs(cur - prev);
    prev = cur;
    if (diff < 1e-13 * (1 + scale)) return {cur.real(), diff + 1e-15 * scale * std::sqrt(double(panels))};
  }
  throw domain_error("cycle integral quadrature did not converge");
}

TraceValue cycle_trace(const QSeries& f, long d) {
  TraceValue t;
  t.disc = d;
  t.kind = TraceKind::cycle;
  for (auto& Q : indefinite_classes(d)) {
    auto ci = cycle_integral(f, Q);
    t.value += ci.value / (2 * kPi);
    t.est_err += ci.err / (2 * kPi);
  }
  return t;
}

std::map<long, long> g1_coefficients(long n_max, Precision prec, double* max_residual) {
  if (n_max < 0) throw domain_error("n_max must be nonnegative");
  QSeries J = faber_basis(1, 64) - constant_series(24, 64);
  std::map<long, long> out;
  out[-1] = 1;
  double worst = 0;
  for (long n = 0; n <= n_max; ++n) {
    long r = n % 4;
    if (n == 0) {
      out[0] = kB1Zero;
      continue;
    }
    if (r == 1 || r == 2) {
      out[n] = 0;
      continue;
    }
    TraceValue t = cm_trace(J, -n, prec);
    worst = std::max(worst, t.residual);
    if (t.residual >= 1e-4) throw domain_error("rounding residual too large for B_1(" + std::to_string(n) + ")");
    out[n] = -t.nearest;
  }
  if (max_residual) *max_residual = worst;
  return out;
}

VectorForm g1_vector(const FiniteQuadraticModule& A, const std::map<long, long>& coeffs, long n_max) {
  if (A.size() != 2 || A.level() != 4) throw domain_error("g1_vector expects Z/2 with level 4");
  VectorForm F;
  F.module = &A;
  F.weight = 1.5;
  F.dual = true;
  QSeries e0(4, n_max + 1, 1.5, "g1_e0"), e1(4, n_max + 1, 1.5, "g1_e1");
  for (auto& [n, c] : coeffs) {
    if (n > n_max) continue;
    long r = ((n % 4) + 4) % 4;
    if (r == 0) e0.set(n, c);
    else if (r == 3) e1.set(n, c);
    else if (c != 0) throw domain_error("coefficient outside the plus-space support");
  }
  F.components.emplace(0, e0);
  F.components.emplace(1, e1);
  return F;
}

std::map<long, double> G1_plus_coefficients(long d_max) {
  QSeries f1 = faber_basis(1, 64);
  std::map<long, double> out;
  for (long d = 1; d <= d_max; ++d) {
    long r = d % 4;
    if (r != 0 && r != 1) continue;
    if (is_square(d)) continue;
    out[d] = cycle_trace(f1, d).value;
  }
  return out;
}

}  // namespace regpet
