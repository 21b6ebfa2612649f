#include "regpet/weil.hpp"

#include <cmath>
#include <numeric>

namespace regpet {

namespace {

constexpr double kPi = 3.14159265358979323846;

mpq_class frac(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class r = x - fl;
  r.canonicalize();
  return r;
}

cplx e_of(const mpq_class& x) {
  double t = frac(x).get_d();
  return std::polar(1.0, 2 * kPi * t);
}

}  // namespace

FiniteQuadraticModule::FiniteQuadraticModule(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
  for (auto& f : factors_) {
    if (f.n < 1) throw domain_error("cyclic factor order must be positive");
    // Q well defined on Z/n needs n^2 q and 2 n q integral
    mpq_class a = f.q * f.n * f.n, b = f.q * 2 * f.n;
    a.canonicalize();
    b.canonicalize();
    if (a.get_den() != 1 || b.get_den() != 1) throw domain_error("Q is not well defined on the cyclic factor");
  }
  elements_.push_back({});
  for (auto& f : factors_) {
    std::vector<std::vector<long>> next;
    for (auto& e : elements_)
      for (long x = 0; x < f.n; ++x) {
        auto e2 = e;
        e2.push_back(x);
        next.push_back(e2);
      }
    elements_.swap(next);
  }
  for (auto& e : elements_) {
    mpq_class s = 0;
    for (size_t i = 0; i < factors_.size(); ++i) s += factors_[i].q * e[i] * e[i];
    Qvals_.push_back(frac(s));
  }
  // nondegeneracy
  for (size_t i = 1; i < elements_.size(); ++i) {
    bool all_zero = true;
    for (size_t j = 0; j < elements_.size() && all_zero; ++j)
      if (frac(bilinear(i, j)) != 0) all_zero = false;
    if (all_zero) throw domain_error("degenerate quadratic form");
  }
  // Milgram: |A|^{-1/2} sum e(Q(a)) = e(sig/8)
  cplx g = 0;
  for (auto& q : Qvals_) g += e_of(q);
  g /= std::sqrt(double(elements_.size()));
  double ang = std::arg(g) / (2 * kPi) * 8;
  long s = std::lround(ang);
  if (std::abs(std::abs(g) - 1) > 1e-9 || std::abs(ang - double(s)) > 1e-9 * 8)
    throw domain_error("Gauss sum is not an eighth root of unity");
  signature_ = int(((s % 8) + 8) % 8);
  // level: minimal N with N Q(x) integral
  level_ = 1;
  for (auto& q : Qvals_) {
    long d = q.get_den().get_si();
    level_ = std::lcm(level_, d);
  }
}

mpq_class FiniteQuadraticModule::bilinear(size_t i, size_t j) const {
  std::vector<long> s(factors_.size());
  for (size_t t = 0; t < s.size(); ++t) s[t] = (elements_[i][t] + elements_[j][t]) % factors_[t].n;
  return frac(Qvals_[index_of(s)] - Qvals_[i] - Qvals_[j]);
}

size_t FiniteQuadraticModule::index_of(const std::vector<long>& x) const {
  size_t idx = 0;
  for (size_t t = 0; t < factors_.size(); ++t) {
    long n = factors_[t].n;
    idx = idx * size_t(n) + size_t(((x[t] % n) + n) % n);
  }
  return idx;
}

size_t FiniteQuadraticModule::negation(size_t i) const {
  std::vector<long> x = elements_[i];
  for (size_t t = 0; t < x.size(); ++t) x[t] = -x[t];
  return index_of(x);
}

FiniteQuadraticModule fqm_create(const std::vector<CyclicFactor>& factors) { return FiniteQuadraticModule(factors); }

RhoMatrices rho_matrices(const FiniteQuadraticModule& A, bool dual) {
  size_t n = A.size();
  RhoMatrices r;
  r.T.assign(n, std::vector<cplx>(n, 0));
  r.S.assign(n, std::vector<cplx>(n, 0));
  // column a holds the image of e_a
  for (size_t a = 0; a < n; ++a) r.T[a][a] = e_of(A.Q(a));
  cplx pref = std::polar(1.0 / std::sqrt(double(n)), -2 * kPi * A.signature() / 8.0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) r.S[b][a] = pref * e_of(-A.bilinear(a, b));
  if (dual) {
    for (auto* M : {&r.T, &r.S})
      for (auto& row : *M)
        for (auto& x : row) x = std::conj(x);
  }
  return r;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  CMatrix c(n, std::vector<cplx>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

CMatrix conj_transpose(const CMatrix& a) {
  CMatrix c(a[0].size(), std::vector<cplx>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) c[j][i] = std::conj(a[i][j]);
  return c;
}

CMatrix identity_matrix(size_t n) {
  CMatrix c(n, std::vector<cplx>(n, 0));
  for (size_t i = 0; i < n; ++i) c[i][i] = 1;
  return c;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

bool VectorForm::support_ok() const {
  if (!module) return false;
  long N = module->level();
  for (auto& [a, s] : components) {
    if (s.denom() != N) return false;
    mpq_class target = dual ? frac(-module->Q(a)) : module->Q(a);
    for (auto& [n, c] : s.coeffs()) {
      (void)c;
      if (frac(mpq_class(n, N)) != target) return false;
    }
  }
  return true;
}

QSeries scalarize(const VectorForm& F) {
  if (!F.module) throw domain_error("vector form without module");
  long N = F.module->level();
  long order = -1;
  for (auto& [a, s] : F.components) {
    if (s.denom() != N) throw domain_error("component grid does not match the module level");
    order = order < 0 ? s.order() : std::min(order, s.order());
  }
  if (order < 0) order = 1;
  QSeries out(1, order, F.weight, "scalarized");
  for (auto& [a, s] : F.components)
    for (auto& [n, c] : s.coeffs())
      if (n < order) out.set(n, out.coeff(n) + c);
  return out;
}

}  // namespace regpet
