#include "doctest.h"
#include "regpet/qseries.hpp"

using namespace regpet;

namespace {

// sigma_r(n) by trial division
mpz_class sigma_naive(long r, long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), d, r);
      s += p;
    }
  return s;
}

// Eisenstein series straight from divisor sums
QSeries eis_naive(int k, long order) {
  QSeries e(1, order, k);
  e.set(0, 1);
  mpq_class c = k == 4 ? 240 : -504;
  for (long n = 1; n < order; ++n) e.set(n, c * mpq_class(sigma_naive(k - 1, n)));
  return e;
}

// q prod (1 - q^n)^24 by repeated multiplication with plain integers
std::vector<mpz_class> delta_product(long order) {
  std::vector<mpz_class> p(static_cast<size_t>(order), 0);
  p[0] = 1;
  for (long n = 1; n < order; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (long i = order - 1; i >= n; --i) p[size_t(i)] -= p[size_t(i - n)];
  std::vector<mpz_class> out(static_cast<size_t>(order), 0);
  for (long i = 1; i < order; ++i) out[size_t(i)] = p[size_t(i - 1)];
  return out;
}

}  // namespace

TEST_CASE("monomial arithmetic and exact division") {
  auto a = monomial(-1, 1, 10), b = monomial(1, 1, 10);
  auto p = a * b;
  CHECK(p.coeff(0) == 1);
  for (long n = 1; n < p.order(); ++n) CHECK(p.coeff(n) == 0);
  auto d = classical_form("Delta", 20);
  auto one = d / d;
  CHECK(one.coeff(0) == 1);
  for (long n = 1; n < one.order(); ++n) CHECK(one.coeff(n) == 0);
}

TEST_CASE("Eisenstein series against divisor sums") {
  auto e4 = classical_form("E4", 30), e6 = classical_form("E6", 30);
  auto o4 = eis_naive(4, 30), o6 = eis_naive(6, 30);
  for (long n = 0; n < 30; ++n) {
    CHECK(e4.coeff(n) == o4.coeff(n));
    CHECK(e6.coeff(n) == o6.coeff(n));
  }
  CHECK(e4.coeff(1) == 240);
  CHECK(e4.coeff(2) == 2160);
  for (long n = 1; n < 40; ++n) CHECK(sigma(3, n) == sigma_naive(3, n));
}

TEST_CASE("discriminant function identities") {
  const long N = 40;
  auto e4 = eis_naive(4, N), e6 = eis_naive(6, N);
  auto lhs = e4 * e4 * e4 - e6 * e6;
  auto d = classical_form("Delta", N);
  auto prod = delta_product(N);
  for (long n = 0; n < N; ++n) {
    CHECK(lhs.coeff(n) == 1728 * d.coeff(n));
    CHECK(d.coeff(n) == mpq_class(prod[size_t(n)]));
  }
  CHECK(d.coeff(1) == 1);
  CHECK(d.coeff(2) == -24);
  auto j = classical_form("j", N);
  auto jd = j * d;
  auto e43 = e4 * e4 * e4;
  for (long n = 0; n < jd.order(); ++n) CHECK(jd.coeff(n) == e43.coeff(n));
  CHECK(j.coeff(-1) == 1);
  CHECK(j.coeff(0) == 744);
  CHECK(j.coeff(1) == 196884);
}

TEST_CASE("Faber basis") {
  auto f1 = faber_basis(1, 10);
  CHECK(f1.coeff(-1) == 1);
  CHECK(f1.coeff(0) == 24);
  CHECK(f1.coeff(1) == 196884);
  auto f2 = faber_basis(2, 10);
  CHECK(f2.coeff(-2) == 1);
  CHECK(f2.coeff(-1) == 0);
  CHECK(f2.coeff(0) == 72);
  for (long m = 1; m <= 6; ++m) {
    auto f = faber_basis(m, 12);
    CHECK(f.coeff(0) == 24 * mpq_class(sigma_naive(1, m)));
    auto p = f.principal_part();
    CHECK(p.coeff(-m) == 1);
    for (long n = -m + 1; n < 0; ++n) CHECK(p.coeff(n) == 0);
  }
  // f_1 = j - 720
  auto j = classical_form("j", 10);
  auto diff = f1 - j;
  CHECK(diff.coeff(0) == -720);
  for (long n = 1; n < 10; ++n) CHECK(diff.coeff(n) == 0);
}

TEST_CASE("weakly holomorphic bases") {
  auto inv = wh_basis(-12, 1, 8);
  auto d = classical_form("Delta", 10);
  auto r = inverse(d);
  for (long n = -1; n < 7; ++n) CHECK(inv.coeff(n) == r.coeff(n));
  CHECK(inv.coeff(0) == 24);
  CHECK(inv.coeff(1) == 324);
  auto w0 = wh_basis(0, 3, 10);
  auto f3 = faber_basis(3, 10) - constant_series(24 * 4, 10);
  for (long n = -3; n < 9; ++n) CHECK(w0.coeff(n) == f3.coeff(n));
  auto w2 = wh_basis(2, 1, 10);
  CHECK(w2.coeff(-1) == 1);
  CHECK(w2.coeff(0) == 0);
  CHECK(w2.coeff(1) == -196884);
  CHECK_THROWS_AS(wh_basis(-12, 0, 8), domain_error);
}

TEST_CASE("Zagier duality pairings vanish exactly") {
  int count = 0;
  for (int k : {0, -2, -6, -10})
    for (long m = wh_min_pole(k); m < wh_min_pole(k) + 3; ++m)
      for (long mp = wh_min_pole(2 - k); mp < wh_min_pole(2 - k) + 3; ++mp) {
        auto f = wh_basis(k, m, 12), g = wh_basis(2 - k, mp, 12);
        CHECK(pairing(f, g) == 0);
        ++count;
      }
  CHECK(count >= 6);
  // weight -12 pairs with weight 14
  auto e4 = classical_form("E4", 12), e6 = classical_form("E6", 12);
  CHECK(pairing(wh_basis(-12, 1, 12), e4 * e4 * e6) == 0);
  CHECK(pairing(wh_basis(-12, 1, 12), e4 * e4 * e4) == 744);
}

TEST_CASE("pairing basics") {
  auto f = monomial(-1, 1, 6) + constant_series(24, 6);
  auto g = monomial(1, 1, 6);
  CHECK(pairing(f, g) == 1);
  auto h = monomial(1, 3, 6);
  CHECK(pairing(f, g + h) == pairing(f, g) + pairing(f, h));
  CHECK(pairing(f * mpq_class(2, 3), g) == mpq_class(2, 3) * pairing(f, g));
}

TEST_CASE("labels and serialization") {
  auto l = parse_label("faber(3)");
  CHECK(l.family == Family::faber);
  CHECK(l.m == 3);
  auto w = parse_label("wh_basis(-2,1)");
  CHECK(w.k == -2);
  CHECK_THROWS_AS(parse_label("nonsense"), domain_error);
  auto js = classical_form("E4", 3).to_json();
  CHECK(js.find("\"denom\"") != std::string::npos);
  CHECK(js.find("2160") != std::string::npos);
}

TEST_CASE("grid mismatch and zero division are errors") {
  auto a = monomial(0, 1, 8, 1), b = monomial(0, 1, 8, 4);
  CHECK_THROWS_AS(a + b, domain_error);
  QSeries z(1, 8);
  CHECK_THROWS_AS(inverse(z), domain_error);
}
