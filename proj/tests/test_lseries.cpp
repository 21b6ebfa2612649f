#include "doctest.h"
#include "regpet/cmtraces.hpp"
#include "regpet/lseries.hpp"
#include "regpet/regprod.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

using namespace regpet;

namespace {

const double pi = 3.14159265358979323846;

QSeries weight_minus_two(long order = 64) {
  return classical_form("E4", order) * classical_form("E6", order) / classical_form("Delta", order);
}

double eval_on_axis(const QSeries& g, double t) {
  double s = 0;
  for (auto& [n, c] : g.coeffs()) s += mpq_to<double>(c) * std::exp(-2 * pi * double(n) * t);
  return s;
}

}  // namespace

TEST_CASE("single exponential against incomplete gamma") {
  QSeries g(1, 4, 12, "q");
  g.set(1, 1);
  for (double s : {1.0, 2.5, 6.0})
    for (double t0 : {0.8, 1.0, 1.5}) {
      double w = 2 * pi;
      double oracle = boost::math::tgamma(s, w * t0) / std::pow(w, s) +
                      boost::math::tgamma(12 - s, w / t0) / std::pow(w, 12 - s);
      auto L = lstar(g, s, t0);
      CHECK(std::abs(L.value.real() - oracle) < 1e-13 * oracle);
      CHECK(std::abs(L.value.imag()) < 1e-15 * oracle);
    }
}

TEST_CASE("cusp form L-values against the Mellin integral") {
  auto delta = classical_form("Delta", 30);
  boost::math::quadrature::exp_sinh<double> es;
  for (double s : {1.0, 4.0, 6.0, 7.5}) {
    double oracle = es.integrate([&](double u) {
      double t = 1 + u;
      if (t > 40) return 0.0;
      return eval_on_axis(delta, t) * (std::pow(t, s - 1) + std::pow(t, 11 - s));
    });
    auto L = lstar(delta, s);
    CHECK(std::abs(L.value.real() - oracle) < 1e-12 * std::abs(oracle));
    // functional equation s -> 12 - s
    CHECK(std::abs(lstar(delta, 12 - s).value - L.value) < 1e-13 * std::abs(oracle));
  }
}

TEST_CASE("L* does not depend on the splitting point") {
  std::vector<std::pair<QSeries, std::vector<double>>> cases = {
      {faber_basis(1, 64), {0.0, 1.0, 2.0, 0.5}},
      {weight_minus_two(), {1.0, 2.0, -1.0}},
      {classical_form("Delta", 40), {3.0, 6.0}},
  };
  for (auto& [g, ss] : cases)
    for (double s : ss) {
      auto base = lstar(g, s, 1.0, LConvention::ik, Precision::extended);
      for (double t0 : {0.7, 1.3}) {
        auto L = lstar(g, s, t0, LConvention::ik, Precision::extended);
        CHECK(std::abs(L.value - base.value) < 1e-10 * (1 + std::abs(base.value)));
      }
    }
  // with a constant term the L-series is singular at s = 0 and s = k
  CHECK_THROWS_AS(lstar(weight_minus_two(), 0.0), domain_error);
  CHECK_THROWS_AS(lstar(weight_minus_two(), -2.0), domain_error);
  CHECK_THROWS_AS(lstar(faber_basis(1, 10), 0.3), domain_error);
}

TEST_CASE("horocycle integral is stable") {
  auto a = horocycle_g1(24);
  auto b = horocycle_g1(40);
  CHECK(std::abs(a.scalar - b.scalar) < 1e-11);
  CHECK(a.err < 1e-9);
  CHECK(std::abs(a.vector - 2.0 / 3.0 * a.scalar) < 1e-14 * std::abs(a.scalar));
}

TEST_CASE("three evaluations of the g1 self-product agree") {
  auto h = horocycle_g1();
  auto L = lstar(faber_basis(1, 64) - constant_series(24, 64), 0.0, 1.0, LConvention::ik, Precision::extended);
  double from_l = 3.0 / (4 * pi) * L.value.real();
  CHECK(std::abs(h.scalar - from_l) < 1e-9 * std::abs(h.scalar));
  auto Lf1 = lstar(faber_basis(1, 64), 0.0);
  CHECK(std::abs(Lf1.value.real() - L.value.real()) < 1e-10 * std::abs(L.value));

  auto A = fqm_create({{2, mpq_class(1, 4)}});
  auto G = g1_vector(A, g1_coefficients(120), 120);
  auto p = product_route_B_vector(G, G, 1.5);
  CHECK(std::abs(1.5 * p.value.real() - h.scalar) < 1e-8 * std::abs(h.scalar));
}

TEST_CASE("G_k converges in the cutoff") {
  auto f = weight_minus_two();
  for (cplx tau : {cplx(0, 0.2), cplx(0.3, 1.1), cplx(-0.4, 0.6)}) {
    auto a = gk_eval(f, tau, 10);
    auto b = gk_eval(f, tau, 14);
    CHECK(std::abs(a.value - b.value) < 1e-10 * (1 + std::abs(b.value)));
  }
  CHECK_THROWS_AS(gk_eval(classical_form("E4", 20), {0, 1}), domain_error);
  CHECK_THROWS_AS(gk_eval(f, {0.2, -1}), domain_error);
}

TEST_CASE("Taylor coefficients at the cusp") {
  auto f = weight_minus_two();
  for (long n = 0; n <= 2; ++n) {
    auto t = taylor_check(f, n);
    CHECK(t.self_consistency < 1e-5);
    CHECK(t.rel_err < 1e-6);
    CHECK(std::abs(t.lhs - t.rhs) <= 1e-6 * std::abs(t.rhs));
  }
  // without 1/n! on the last sum the identity fails from n = 2 on
  auto t2 = taylor_check(f, 2);
  CHECK(std::abs(t2.lhs - t2.rhs_printed) > 1e-3 * std::abs(t2.rhs));
}
