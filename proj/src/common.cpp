#include "regpet/common.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace regpet {

template <class R> GaussLegendre<R> gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre<R>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre<R> gl;
  gl.x.resize(size_t(n));
  gl.w.resize(size_t(n));
  const R pi = pi_v<R>();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    using std::cos;
    using std::abs;
    R x = cos(pi * (R(i) + R(0.75)) / (R(n) + R(0.5)));
    R dp = 0;
    for (int it2 = 0; it2 < 100; ++it2) {
      R p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = ((2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
        p0 = p1;
        p1 = p2;
      }
      dp = R(n) * (x * p1 - p0) / (x * x - 1);
      R dx = p1 / dp;
      x -= dx;
      if (abs(dx) < 4 * eps_v<R>()) {
        if (it2 > 0) break;
      }
    }
    // recompute derivative at the converged node
    R p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      R p2 = ((2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
      p0 = p1;
      p1 = p2;
    }
    dp = R(n) * (x * p1 - p0) / (x * x - 1);
    R w = 2 / ((1 - x * x) * dp * dp);
    gl.x[size_t(i)] = -x;
    gl.x[size_t(n - 1 - i)] = x;
    gl.w[size_t(i)] = w;
    gl.w[size_t(n - 1 - i)] = w;
  }
  if (n % 2 == 1) gl.x[size_t(n / 2)] = 0;
  cache.emplace(n, gl);
  return gl;
}

template GaussLegendre<double> gauss_legendre<double>(int);
template GaussLegendre<quad> gauss_legendre<quad>(int);

int thread_count() {
  if (const char* s = std::getenv("REGPET_THREADS")) {
    int t = std::atoi(s);
    if (t >= 1) return t;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : int(h);
}

}  // namespace regpet
