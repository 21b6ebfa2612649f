#pragma once

#include "regpet/common.hpp"
#include "regpet/qseries.hpp"

namespace regpet {

struct LValue {
  double s = 0;
  double t0 = 1;
  cplx value;
  double err = 0;
};

enum class LConvention {
  ik,  // i^k in front of the constant-term piece (t0-independent)
  is   // i^s variant
};

// s must be a half-integer; s = 0 and s = k are excluded when c_g(0) != 0
LValue lstar(const QSeries& g, double s, double t0 = 1.0, LConvention conv = LConvention::ik,
             Precision prec = Precision::standard);

struct HorocycleValue {
  double scalar = 0;  // -(3/2pi) Re int_i^{i+1} J psi
  double vector = 0;  // 2/3 of the scalar value
  double err = 0;
};
HorocycleValue horocycle_g1(int nodes = 24);

struct GkValue {
  cplx value;
  double err = 0;
};
// weight k in -2N, tau in H
GkValue gk_eval(const QSeries& f, cplx tau, double T = 14.0);

struct TaylorCheck {
  long n = 0;
  cplx lhs;          // extrapolated at h/2
  cplx lhs_coarse;   // extrapolated at h
  double self_consistency = 0;
  double condition = 0;
  cplx rhs;          // with the 1/n! on the final sum
  cplx rhs_printed;  // final sum without 1/n!
  double rel_err = 0;
};
TaylorCheck taylor_check(const QSeries& f, long n, double h = 0.01, double T = 14.0);

}  // namespace regpet
