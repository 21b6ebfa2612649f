#pragma once

#include <map>
#include <string>

#include "regpet/common.hpp"
#include "regpet/qseries.hpp"
#include "regpet/specfun.hpp"
#include "regpet/weil.hpp"

namespace regpet {

struct RouteValue {
  cplx value;
  double err = 0;
};

struct ProductReport {
  cplx value;
  std::map<std::string, RouteValue> routes;
  std::map<std::string, double> parameters;
};

struct QuadratureOptions {
  int u_panels = 8;
  int nodes = 24;
  double tol = 1e-10;
  Precision precision = Precision::extended;
  Branch branch = Branch::Principal();
};

ProductReport product_route_B_scalar(const QSeries& f, const QSeries& g, double k,
                                     const QuadratureOptions& opt = {});
ProductReport product_route_B_vector(const VectorForm& F, const VectorForm& G, double k,
                                     const QuadratureOptions& opt = {});
// full complex constant term minus i sum Im E_{2-k,phi}(-4 pi n)
cplx branch_value(const QSeries& f, const QSeries& g, double k, Branch phi, const QuadratureOptions& opt = {});

// sum_n c_f(n) c_G(-n)
cplx product_route_C(const QSeries& f, const std::map<long, cplx>& G_plus);
cplx product_route_C(const VectorForm& F, const std::map<size_t, std::map<long, cplx>>& G_plus);

// direct quadrature of f conj(g) v^k dmu over the fundamental domain cut at height v_max;
// one argument must be a cusp form and neither may have a principal part
double petersson_direct(const QSeries& f, const QSeries& g, double k, double v_max = 8.0);

}  // namespace regpet
