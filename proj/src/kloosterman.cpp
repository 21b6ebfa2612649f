#include "regpet/kloosterman.hpp"

#include <cmath>
#include <numeric>
#include <thread>

#include "regpet/specfun.hpp"

namespace regpet {

namespace {

constexpr double kPi = 3.14159265358979323846;

long inv_mod(long a, long c) {
  long r = a % c;
  if (r < 0) r += c;
  long old_r = c, old_s = 0, s = 1;
  while (r != 0) {
    long q = old_r / r;
    long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw domain_error("not a unit");
  long v = old_s % c;
  return v < 0 ? v + c : v;
}

std::vector<int> smallest_prime_factors(long n) {
  std::vector<int> spf(size_t(n + 1), 0);
  for (long i = 2; i <= n; ++i) {
    if (spf[size_t(i)]) continue;
    for (long j = i; j <= n; j += i)
      if (!spf[size_t(j)]) spf[size_t(j)] = int(i);
  }
  return spf;
}

struct Workspace {
  std::vector<char> unit;
  std::vector<long> d, prefix, inv;
  std::vector<double> cosv;
};

// K(m_i, n_i; c) for a single c > 2 using the symmetry d <-> c - d
void one_c(long c, const std::vector<int>& spf, const std::vector<std::pair<long, long>>& pairs, Workspace& w,
           std::vector<double>& out) {
  long half = (c - 1) / 2;
  w.unit.assign(size_t(half + 1), 1);
  long t = c;
  while (t > 1) {
    long p = spf[size_t(t)];
    for (long j = p; j <= half; j += p) w.unit[size_t(j)] = 0;
    while (t % p == 0) t /= p;
  }
  w.d.clear();
  for (long j = 1; j <= half; ++j)
    if (w.unit[size_t(j)]) w.d.push_back(j);
  size_t k = w.d.size();
  // batch inversion
  w.prefix.resize(k);
  w.inv.resize(k);
  long acc = 1;
  for (size_t i = 0; i < k; ++i) {
    acc = acc * w.d[i] % c;
    w.prefix[i] = acc;
  }
  long ia = inv_mod(acc, c);
  for (size_t i = k; i-- > 0;) {
    long before = i ? w.prefix[i - 1] : 1;
    w.inv[i] = ia * before % c;
    ia = ia * w.d[i] % c;
  }
  // cos(2 pi j / c) by rotation, reseeded every 256 steps
  w.cosv.resize(size_t(c));
  {
    cplx step = std::polar(1.0, 2 * kPi / double(c));
    cplx z = 1;
    for (long j = 0; j < c; ++j) {
      if ((j & 255) == 0) z = std::polar(1.0, 2 * kPi * double(j) / double(c));
      w.cosv[size_t(j)] = z.real();
      z *= step;
    }
  }
  for (size_t p = 0; p < pairs.size(); ++p) {
    long m = ((pairs[p].first % c) + c) % c, n = ((pairs[p].second % c) + c) % c;
    double s = 0;
    for (size_t i = 0; i < k; ++i) {
      long idx = (m * w.d[i] + n * w.inv[i]) % c;
      s += w.cosv[size_t(idx)];
    }
    out[p] = 2 * s;
  }
}

}  // namespace

double kloosterman_sum(long m, long n, long c) {
  if (c < 1) throw domain_error("c must be positive");
  double s = 0;
  for (long d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long di = c == 1 ? 0 : inv_mod(d, c);
    long idx = ((m % c) * d + (n % c) * di) % c;
    if (idx < 0) idx += c;
    s += std::cos(2 * kPi * double(idx) / double(c));
  }
  double r = std::round(s);
  return std::abs(s - r) < 1e-9 ? r : s;
}

std::vector<std::vector<double>> kloosterman_table(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                                   int threads) {
  if (c_max < 1) throw domain_error("c_max must be positive");
  if (threads <= 0) threads = thread_count();
  auto spf = smallest_prime_factors(c_max);
  std::vector<std::vector<double>> table(pairs.size(), std::vector<double>(size_t(c_max), 0));
  auto work = [&](int tid) {
    Workspace w;
    std::vector<double> out(pairs.size());
    // interleaved assignment balances the O(c) cost per c
    for (long c = 1 + tid; c <= c_max; c += threads) {
      if (c <= 2) {
        for (size_t p = 0; p < pairs.size(); ++p)
          table[p][size_t(c - 1)] = kloosterman_sum(pairs[p].first, pairs[p].second, c);
        continue;
      }
      one_c(c, spf, pairs, w, out);
      for (size_t p = 0; p < pairs.size(); ++p) table[p][size_t(c - 1)] = out[p];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return table;
}

SeriesEstimate smooth_series(const std::vector<double>& terms) {
  SeriesEstimate e;
  long n = long(terms.size());
  e.c_max = n;
  long block = std::max(1L, long(std::sqrt(double(n))));
  double s = 0;
  for (long c = 1; c <= n; ++c) {
    s += terms[size_t(c - 1)];
    if (c % block == 0) e.partial_sums.push_back(s);
  }
  size_t cnt = std::min<size_t>(10, e.partial_sums.size());
  if (cnt == 0) {
    e.value = s;
    e.tail_estimate = std::abs(s);
    return e;
  }
  double mean = 0;
  for (size_t i = e.partial_sums.size() - cnt; i < e.partial_sums.size(); ++i) mean += e.partial_sums[i];
  mean /= double(cnt);
  double var = 0;
  for (size_t i = e.partial_sums.size() - cnt; i < e.partial_sums.size(); ++i)
    var += (e.partial_sums[i] - mean) * (e.partial_sums[i] - mean);
  e.value = mean;
  e.tail_estimate = cnt > 1 ? std::sqrt(var / double(cnt - 1)) : std::abs(mean);
  return e;
}

std::vector<SeriesEstimate> dit_coefficients(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                             int threads) {
  for (auto& p : pairs)
    if (p.first < 1 || p.second < 1) throw domain_error("m and n must be positive");
  auto table = kloosterman_table(pairs, c_max, threads);
  std::vector<SeriesEstimate> out;
  for (size_t p = 0; p < pairs.size(); ++p) {
    double r = std::sqrt(double(pairs[p].first) * double(pairs[p].second));
    std::vector<double> terms(static_cast<size_t>(c_max));
    for (long c = 1; c <= c_max; ++c) {
      double K = table[p][size_t(c - 1)];
      terms[size_t(c - 1)] = K == 0 ? 0.0 : 2 * kPi * r * K / double(c) * bessel_F(4 * kPi * r / double(c)).value.real();
    }
    out.push_back(smooth_series(terms));
  }
  return out;
}

SeriesEstimate dit_coefficient(long m, long n, long c_max) { return dit_coefficients({{m, n}}, c_max).front(); }

std::vector<SeriesEstimate> product_route_A(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                            int threads) {
  auto v = dit_coefficients(pairs, c_max, threads);
  for (auto& e : v) {
    e.value *= -4 * kPi;
    e.tail_estimate *= 4 * kPi;
    for (auto& s : e.partial_sums) s *= -4 * kPi;
  }
  return v;
}

SeriesEstimate product_route_A(long m, long n, long c_max) { return product_route_A({{m, n}}, c_max).front(); }

}  // namespace regpet
