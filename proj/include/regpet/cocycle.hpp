#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "regpet/common.hpp"
#include "regpet/modular.hpp"
#include "regpet/qseries.hpp"

namespace regpet {

struct CocycleEvaluator {
  QSeries f;
  int k = 0;
  long m0 = 0;
  std::vector<double> principal;  // c_f(-j), j = 1..m0
  double T = 10.0;
  int panels_per_unit = 4;
  int nodes = 20;
};

// f of even weight k <= 0, level one, trivial multiplier
CocycleEvaluator make_evaluator(const QSeries& f, double T = 10.0);

cplx G_f_eval(const CocycleEvaluator& ev, cplx tau);
cplx F_S_eval(const CocycleEvaluator& ev, cplx tau);

using Evaluator = std::function<cplx(cplx)>;

struct FormalSum {
  std::vector<std::pair<cplx, Mat2>> terms;
  FormalSum& add(cplx c, const Mat2& M) {
    terms.push_back({c, M});
    return *this;
  }
};

// (h|_w M)(tau) = (c tau + d)^(-w) h(M tau)
cplx slash(const Evaluator& h, int weight, const Mat2& M, cplx tau);
cplx slash(const Evaluator& h, int weight, const FormalSum& s, cplx tau);

struct PeriodResiduals {
  double s_plus_i = 0;
  double u_relation = 0;
};
PeriodResiduals period_residuals(const CocycleEvaluator& ev, const std::vector<cplx>& points);

// |F_S(tau) + (G_f|(S - I))(tau)|
double fs_vs_gf(const CocycleEvaluator& ev, cplx tau);
// |(-G_f|(ST - I))(tau) - (F_S|T)(tau)|
double cocycle_st_residual(const CocycleEvaluator& ev, cplx tau);
// 2i v^(2-k) conj(d G_f / d tau-bar) - f(tau)
double xi_residual(const CocycleEvaluator& ev, cplx tau, double h = 1e-3);
// |d F_S / d tau-bar|
double holomorphy_residual(const CocycleEvaluator& ev, cplx tau, double h = 1e-3);

struct EichlerRelation {
  cplx lhs, rhs;
  double residual = 0;
};
EichlerRelation eichler_relation_check(const CocycleEvaluator& ev, cplx tau);

// (-1)^(1-k) times the integral of f^c(z) (z + tau)^(k-2) from -M^{-1} conj(tau0) to -conj(tau0)
cplx eichler_cocycle(const CocycleEvaluator& ev, const Mat2& M, cplx tau, cplx tau0);
double eichler_cocycle_law(const CocycleEvaluator& ev, const Mat2& M1, const Mat2& M2, cplx tau, cplx tau0);
// E_{tau1}(M) - E_{tau0}(M) + a|(M - I) with a the connecting integral
double eichler_coboundary(const CocycleEvaluator& ev, const Mat2& M, cplx tau, cplx tau0, cplx tau1);

}  // namespace regpet
