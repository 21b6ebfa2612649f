#pragma once

#include <cmath>

#include "regpet/common.hpp"
#include "regpet/qseries.hpp"

namespace regpet {

struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;
  long det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inverse() const { return {d, -b, -c, a}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  static Mat2 I() { return {}; }
  static Mat2 S() { return {0, -1, 1, 0}; }
  static Mat2 T(long n = 1) { return {1, n, 0, 1}; }
};

template <class R> complex_t<R> apply(const Mat2& M, const complex_t<R>& tau) {
  using C = complex_t<R>;
  return (C(R(M.a)) * tau + C(R(M.b))) / (C(R(M.c)) * tau + C(R(M.d)));
}

template <class R> complex_t<R> jfactor(const Mat2& M, const complex_t<R>& tau) {
  using C = complex_t<R>;
  return C(R(M.c)) * tau + C(R(M.d));
}

// Map tau into the standard fundamental domain; returns tau' = M tau.
template <class R> complex_t<R> reduce_to_fd(complex_t<R> tau, Mat2* M = nullptr) {
  using C = complex_t<R>;
  Mat2 acc;
  for (int it = 0; it < 10000; ++it) {
    long n = std::lround(to_double(tau.real()));
    if (n != 0) {
      tau -= C(R(n));
      acc = Mat2::T(-n) * acc;
    }
    R n2 = tau.real() * tau.real() + tau.imag() * tau.imag();
    if (n2 < R(1) - R(64) * eps_v<R>()) {
      tau = C(R(-1)) / tau;
      acc = Mat2::S() * acc;
    } else {
      break;
    }
  }
  if (M) *M = acc;
  return tau;
}

// f(tau) for f of integral weight k through reduction into the fundamental domain
template <class R> complex_t<R> eval_modular(const NumSeries<R>& f, int k, const complex_t<R>& tau) {
  using C = complex_t<R>;
  Mat2 M;
  C t = reduce_to_fd<R>(tau, &M);
  C v = f.eval(t);
  if (k == 0) return v;
  C j = jfactor<R>(M, tau);
  C p(1);
  for (int i = 0; i < std::abs(k); ++i) p *= j;
  return k > 0 ? v / p : v * p;
}

}  // namespace regpet
