#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace regpet {

using quad = boost::multiprecision::float128;
using cquad = boost::multiprecision::complex128;
using cplx = std::complex<double>;

template <class R> struct complex_of { using type = std::complex<R>; };
template <> struct complex_of<quad> { using type = cquad; };
template <class R> using complex_t = typename complex_of<R>::type;

enum class Precision { standard, extended };

class domain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class R> inline R pi_v() {
  if constexpr (std::is_same_v<R, quad>)
    return quad("3.14159265358979323846264338327950288");
  else
    return static_cast<R>(3.14159265358979323846264338327950288L);
}

template <class R> inline R euler_gamma_v() {
  if constexpr (std::is_same_v<R, quad>)
    return quad("0.577215664901532860606512090082402431");
  else
    return static_cast<R>(0.577215664901532860606512090082402431L);
}

template <class R> inline R eps_v() { return std::numeric_limits<R>::epsilon(); }

template <class R> inline complex_t<R> make_c(R re, R im = R(0)) { return complex_t<R>(re, im); }

inline double to_double(double x) { return x; }
inline double to_double(const quad& x) { return static_cast<double>(x); }
inline cplx to_cplx(const cplx& z) { return z; }
inline cplx to_cplx(const cquad& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R> inline complex_t<R> from_cplx(const cplx& z) {
  return complex_t<R>(R(z.real()), R(z.imag()));
}

// i^n for integer n
template <class R> inline complex_t<R> i_pow(long n) {
  long r = ((n % 4) + 4) % 4;
  switch (r) {
    case 0: return make_c<R>(1, 0);
    case 1: return make_c<R>(0, 1);
    case 2: return make_c<R>(-1, 0);
    default: return make_c<R>(0, -1);
  }
}

// Gauss-Legendre nodes and weights on [-1,1].
template <class R> struct GaussLegendre {
  std::vector<R> x, w;
};

template <class R> GaussLegendre<R> gauss_legendre(int n);

// Integrate a callable over [a,b] with `panels` Gauss-Legendre panels of `n` nodes.
template <class R, class F>
auto gl_integrate(F&& f, R a, R b, int panels, const GaussLegendre<R>& gl) {
  using V = decltype(f(a));
  V acc{};
  R h = (b - a) / R(panels);
  for (int p = 0; p < panels; ++p) {
    R lo = a + h * R(p);
    R mid = lo + h / 2, half = h / 2;
    V part{};
    for (size_t j = 0; j < gl.x.size(); ++j) part += f(mid + half * gl.x[j]) * (half * gl.w[j]);
    acc += part;
  }
  return acc;
}

int thread_count();

}  // namespace regpet
