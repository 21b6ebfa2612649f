#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regpet/cmtraces.hpp"
#include "regpet/cocycle.hpp"
#include "regpet/kloosterman.hpp"
#include "regpet/lseries.hpp"
#include "regpet/qseries.hpp"
#include "regpet/regprod.hpp"
#include "regpet/specfun.hpp"
#include "regpet/validation.hpp"
#include "regpet/weil.hpp"

namespace py = pybind11;
using namespace regpet;

namespace {

py::object to_fraction(const mpq_class& q) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(q.get_str());
}

py::dict coeff_dict(const QSeries& f) {
  py::dict d;
  for (auto& [n, c] : f.coeffs()) d[py::int_(n)] = to_fraction(c);
  return d;
}

QSeries from_coeffs(const std::map<long, std::string>& coeffs, long order, int denom, double weight) {
  QSeries f(denom, order, weight);
  for (auto& [n, c] : coeffs) {
    mpq_class q(c);
    q.canonicalize();
    f.set(n, q);
  }
  return f;
}

}  // namespace

PYBIND11_MODULE(_regpet, m) {
  m.doc() = "Regularized Petersson products, traces of singular moduli and Eichler cocycles";
  m.attr("__version__") = "0.1.0";

  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);

  py::class_<QSeries>(m, "QSeries")
      .def_property_readonly("denom", &QSeries::denom)
      .def_property_readonly("order", &QSeries::order)
      .def_property_readonly("weight", &QSeries::weight)
      .def_property_readonly("label", &QSeries::label)
      .def("coeff", [](const QSeries& f, long n) { return to_fraction(f.coeff(n)); })
      .def("coeffs", &coeff_dict)
      .def("valuation", &QSeries::valuation)
      .def("to_json", &QSeries::to_json)
      .def("__repr__", [](const QSeries& f) { return "QSeries(" + f.to_string(8) + " + ...)"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def("__truediv__", [](const QSeries& a, const QSeries& b) { return a / b; })
      .def("scale", [](const QSeries& a, const std::string& s) {
        mpq_class q(s);
        q.canonicalize();
        return a * q;
      });

  m.def("from_coeffs", &from_coeffs, py::arg("coeffs"), py::arg("order"), py::arg("denom") = 1,
        py::arg("weight") = 0.0, "build a series from {exponent: 'p/q'}");
  m.def("classical_form", py::overload_cast<const std::string&, long>(&classical_form), py::arg("label"),
        py::arg("order") = 64);
  m.def("faber_basis", &faber_basis, py::arg("m"), py::arg("order") = 64);
  m.def("wh_basis", &wh_basis, py::arg("k"), py::arg("m"), py::arg("order") = 64);
  m.def("wh_min_pole", &wh_min_pole);
  m.def("pairing", [](const QSeries& f, const QSeries& g) { return to_fraction(pairing(f, g)); });

  m.def("exp_integral", [](double r, cplx z, double phi) {
    Branch b = phi == Branch{}.phi ? Branch::Principal() : Branch::Angle(phi);
    auto v = exp_integral(r, z, b);
    return py::make_tuple(v.value, v.abs_err);
  }, py::arg("r"), py::arg("z"), py::arg("phi") = Branch{}.phi);
  m.def("gamma_upper", [](double r, cplx z) {
    auto v = gamma_upper(r, z);
    return py::make_tuple(v.value, v.abs_err);
  });
  m.def("W_k", [](double k, cplx z) { return W_k(k, z).value; });
  m.def("bessel_F", [](double x) { return bessel_F(x).value.real(); });
  m.def("digamma", [](cplx z) { return digamma(z).value; });

  m.def("kloosterman_sum", &kloosterman_sum);
  m.def("product_route_A", [](long a, long b, long c_max) {
    auto e = product_route_A(a, b, c_max);
    return py::make_tuple(e.value, e.tail_estimate);
  });

  m.def("cm_trace", [](const QSeries& f, long D) {
    auto t = cm_trace(f, D);
    return py::make_tuple(t.value, t.nearest, t.residual);
  });
  m.def("class_number", [](long D) { return reduced_forms(D).size(); });
  m.def("cycle_trace", [](const QSeries& f, long d) { return cycle_trace(f, d).value; });
  m.def("g1_coefficients", [](long n_max) { return g1_coefficients(n_max); }, py::arg("n_max") = 40);

  m.def("weil_matrices", [](std::vector<std::pair<long, std::string>> factors, bool dual) {
    std::vector<CyclicFactor> fs;
    for (auto& [n, q] : factors) {
      mpq_class r(q);
      r.canonicalize();
      fs.push_back({n, r});
    }
    auto A = fqm_create(fs);
    auto r = rho_matrices(A, dual);
    return py::make_tuple(r.T, r.S, A.signature(), A.level());
  }, py::arg("factors"), py::arg("dual") = false);

  m.def("inner_product", [](const QSeries& f, const QSeries& g, double k) {
    auto p = product_route_B_scalar(f, g, k);
    return py::make_tuple(p.value, p.routes.at("B").err);
  });
  m.def("petersson_direct", &petersson_direct, py::arg("f"), py::arg("g"), py::arg("k"), py::arg("v_max") = 8.0);

  m.def("lstar", [](const QSeries& g, double s, double t0, bool extended) {
    auto L = lstar(g, s, t0, LConvention::ik, extended ? Precision::extended : Precision::standard);
    return L.value;
  }, py::arg("g"), py::arg("s"), py::arg("t0") = 1.0, py::arg("extended") = false);
  m.def("horocycle_value", [] { return horocycle_g1().scalar; });
  m.def("taylor_check", [](const QSeries& f, long n, double h) {
    auto t = taylor_check(f, n, h);
    py::dict d;
    d["lhs"] = t.lhs;
    d["rhs"] = t.rhs;
    d["rel_err"] = t.rel_err;
    d["self_consistency"] = t.self_consistency;
    return d;
  }, py::arg("f"), py::arg("n"), py::arg("h") = 0.01);

  m.def("cocycle_residuals", [](const QSeries& f, cplx tau) {
    auto ev = make_evaluator(f);
    py::dict d;
    d["fs_vs_gf"] = fs_vs_gf(ev, tau);
    d["st"] = cocycle_st_residual(ev, tau);
    d["holomorphy"] = holomorphy_residual(ev, tau);
    return d;
  });

  m.def("run_criterion", [](const std::string& id) {
    for (auto& [name, fn] : all_criteria())
      if (name == id) {
        auto r = run_criterion(id, fn, ValidationOptions{});
        return py::make_tuple(r.pass, r.summary, r.metrics);
      }
    throw domain_error("unknown criterion " + id);
  });
}
