#include "doctest.h"
#include "regpet/regprod.hpp"

#include <cmath>

using namespace regpet;

namespace {

const double pi = 3.14159265358979323846;
// Petersson norm of Delta over the standard fundamental domain
const double kDeltaNorm = 1.035362056804320922e-6;

QSeries f(long m) { return faber_basis(m, 40); }

}  // namespace

TEST_CASE("weakly holomorphic products are hermitian and branch free") {
  QuadratureOptions opt;
  auto p11 = product_route_B_scalar(f(1), f(1), 0, opt);
  auto p12 = product_route_B_scalar(f(1), f(2), 0, opt);
  auto p21 = product_route_B_scalar(f(2), f(1), 0, opt);
  CHECK(std::abs(p11.value.imag()) < 1e-12);
  CHECK(std::abs(p12.value - std::conj(p21.value)) < 1e-9);
  CHECK(p11.routes.count("B") == 1);
  CHECK(p11.routes.at("B").err < 1e-8);

  QuadratureOptions o1 = opt, o2 = opt;
  o1.branch = Branch::Angle(3 * pi / 4);
  o2.branch = Branch::Angle(5 * pi / 4);
  auto a = product_route_B_scalar(f(1), f(2), 0, o1);
  auto b = product_route_B_scalar(f(1), f(2), 0, o2);
  CHECK(std::abs(a.value - p12.value) < 1e-9);
  CHECK(std::abs(b.value - p12.value) < 1e-9);
  cplx ba = branch_value(f(1), f(2), 0, o1.branch, opt);
  cplx bb = branch_value(f(1), f(2), 0, o2.branch, opt);
  CHECK(std::abs(ba - bb) < 1e-9);
  CHECK(std::abs(ba.real() - p12.value.real()) < 1e-9);
}

TEST_CASE("sesquilinearity and the zero form") {
  QuadratureOptions opt;
  auto h = f(1) * mpq_class(2) + f(2) * mpq_class(-1, 3);
  auto lhs = product_route_B_scalar(h, f(1), 0, opt).value;
  auto rhs = 2.0 * product_route_B_scalar(f(1), f(1), 0, opt).value -
             product_route_B_scalar(f(2), f(1), 0, opt).value / 3.0;
  CHECK(std::abs(lhs - rhs) < 1e-8 * (1 + std::abs(rhs)));
  QSeries zero(1, 40, 0, "0");
  CHECK(std::abs(product_route_B_scalar(zero, f(1), 0, opt).value) == 0);
}

TEST_CASE("holomorphic cusp forms reduce to the classical product") {
  QuadratureOptions opt;
  auto delta = classical_form("Delta", 40);
  auto e4 = classical_form("E4", 40);
  auto p = product_route_B_scalar(delta, delta, 12, opt).value;
  CHECK(std::abs(p.real() - kDeltaNorm) < 1e-12 * 1e3 * kDeltaNorm);
  CHECK(std::abs(p.imag()) < 1e-18);
  double direct = petersson_direct(delta, delta, 12);
  CHECK(std::abs(direct - kDeltaNorm) < 1e-9 * kDeltaNorm);
  // E4^3 = E12 + (432000/691) Delta and E12 is orthogonal to cusp forms
  double c = 432000.0 / 691.0;
  double d = petersson_direct(e4 * e4 * e4, delta, 12);
  CHECK(std::abs(d - c * kDeltaNorm) < 1e-8 * c * kDeltaNorm);
  auto q = product_route_B_scalar(e4 * e4 * e4, delta, 12, opt).value;
  CHECK(std::abs(q.real() - c * kDeltaNorm) < 1e-8 * c * kDeltaNorm);
  CHECK_THROWS_AS(petersson_direct(e4, e4, 4), domain_error);
  CHECK_THROWS_AS(petersson_direct(f(1), delta, 12), domain_error);
}

TEST_CASE("route C pairs principal parts against coefficients") {
  auto g = f(2);
  std::map<long, cplx> G = {{-2, 3.5}, {-1, -1.0}, {0, 0.25}, {2, 100.0}};
  // sum over n of c_g(n) G(-n), with c_g(-2) = 1 and c_g(-1) = 0
  cplx oracle = mpq_to<double>(g.coeff(2)) * 3.5 - mpq_to<double>(g.coeff(1)) + mpq_to<double>(g.coeff(0)) * 0.25 + 100.0;
  CHECK(std::abs(product_route_C(g, G) - oracle) < 1e-9 * std::abs(oracle));
}

TEST_CASE("grid and weight validation") {
  QuadratureOptions opt;
  QSeries a(1, 10, 0, "a"), b(2, 10, 0, "b");
  CHECK_THROWS_AS(product_route_B_scalar(a, b, 0, opt), domain_error);
  CHECK_THROWS_AS(product_route_B_scalar(a, a, 0.3, opt), domain_error);
}
