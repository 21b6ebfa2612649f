#pragma once

#include "regpet/common.hpp"

namespace regpet {

// Branch of log: arg in (phi-2pi, phi] for phi in (pi/2, 3pi/2]; phi = pi is the principal branch.
// phi = 0 places the cut on the positive axis with arg in [0, 2pi).
struct Branch {
  double phi = 3.14159265358979323846;
  bool principal() const { return phi == 3.14159265358979323846; }
  static Branch Principal() { return {}; }
  static Branch PositiveCut() { return Branch{0.0}; }
  static Branch Angle(double phi);
};

struct SpecValue {
  cplx value;
  double abs_err;
};

template <class R> complex_t<R> log_branch(complex_t<R> z, const Branch& b);
// z^a with a = a2/2
template <class R> complex_t<R> pow_branch(complex_t<R> z, int a2, const Branch& b);

// E_r(z) for r = r2/2
template <class R> complex_t<R> expint(int r2, complex_t<R> z, const Branch& b = Branch::Principal(),
                                       R* err = nullptr);
// Gamma(r, z) for r = r2/2
template <class R> complex_t<R> gamma_upper_c(int r2, complex_t<R> z, const Branch& b = Branch::Principal(),
                                              R* err = nullptr);
// Gamma(r) for r = r2/2, with 1/Gamma at poles handled by rgamma
template <class R> R gamma_half(int r2);
template <class R> R rgamma_half(int r2);

// W_k for k = k2/2: real argument path and complex argument path
template <class R> complex_t<R> W_real(int k2, R x);
template <class R> complex_t<R> W_complex(int k2, complex_t<R> z);

template <class R> complex_t<R> digamma_c(complex_t<R> z);
template <class R> R digamma_int(long n);

// Finite closed form of Gamma(n, w) for integer n >= 1
template <class R> complex_t<R> gamma_upper_int(long n, complex_t<R> w);

// Public double-precision API
SpecValue gamma_upper(double r, cplx z, Branch b = Branch::Principal());
SpecValue exp_integral(double r, cplx z, Branch b = Branch::Principal());
SpecValue W_k(double k, cplx arg);
SpecValue bessel_F(double x);
SpecValue digamma(cplx z);
SpecValue whittaker_Mn(long n, double v);
SpecValue whittaker_Wn(long n, double v);
enum class BetaVariant { beta, beta_c };
SpecValue beta_half(double x, BetaVariant variant);
// direct quadratures used as independent checks
double beta_half_quadrature(double x);
double beta_c_half_quadrature(double x);

int half_int_twice(double r);

}  // namespace regpet
