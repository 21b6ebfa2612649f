#include "doctest.h"
#include "regpet/weil.hpp"

using namespace regpet;

namespace {

const double pi = 3.14159265358979323846;

cplx e(double x) { return std::polar(1.0, 2 * pi * x); }

CMatrix power(const CMatrix& a, int n) {
  CMatrix r = identity_matrix(a.size());
  for (int i = 0; i < n; ++i) r = matmul(r, a);
  return r;
}

// S^2 e_a = e(-sig/4) e_{-a}
CMatrix s_squared_oracle(const FiniteQuadraticModule& A) {
  size_t n = A.size();
  CMatrix m(n, std::vector<cplx>(n, 0));
  for (size_t a = 0; a < n; ++a) m[A.negation(a)][a] = e(-A.signature() / 4.0);
  return m;
}

void check_representation(const FiniteQuadraticModule& A, bool dual) {
  auto r = rho_matrices(A, dual);
  size_t n = A.size();
  auto I = identity_matrix(n);
  CHECK(max_abs_diff(matmul(r.S, conj_transpose(r.S)), I) < 1e-12);
  CHECK(max_abs_diff(matmul(r.T, conj_transpose(r.T)), I) < 1e-12);
  auto st = matmul(r.S, r.T);
  auto s2 = matmul(r.S, r.S);
  CHECK(max_abs_diff(power(st, 3), s2) < 1e-12);
  CHECK(max_abs_diff(power(r.T, int(A.level())), I) < 1e-12);
  auto oracle = s_squared_oracle(A);
  if (dual)
    for (auto& row : oracle)
      for (auto& x : row) x = std::conj(x);
  CHECK(max_abs_diff(s2, oracle) < 1e-12);
  // S^4 = e(-sig/2) on the metaplectic cover
  CHECK(max_abs_diff(power(s2, 2), matmul(oracle, oracle)) < 1e-12);
  cplx z = e((dual ? 1 : -1) * A.signature() / 2.0);
  CHECK(std::abs(power(s2, 2)[0][0] - z) < 1e-12);
}

}  // namespace

TEST_CASE("Z/2 with x^2/4") {
  auto A = fqm_create({{2, mpq_class(1, 4)}});
  CHECK(A.size() == 2);
  CHECK(A.signature() == 1);
  CHECK(A.level() == 4);
  CHECK(A.Q(1) == mpq_class(1, 4));
  CHECK(A.bilinear(1, 1) == mpq_class(1, 2));
  auto r = rho_matrices(A, false);
  CHECK(std::abs(r.T[0][0] - 1.0) < 1e-15);
  CHECK(std::abs(r.T[1][1] - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(r.T[0][1]) == 0);
  cplx pref = e(-1.0 / 8) / std::sqrt(2.0);
  CHECK(std::abs(r.S[0][0] - pref) < 1e-15);
  CHECK(std::abs(r.S[0][1] - pref) < 1e-15);
  CHECK(std::abs(r.S[1][0] - pref) < 1e-15);
  CHECK(std::abs(r.S[1][1] + pref) < 1e-15);
  check_representation(A, false);
  check_representation(A, true);
}

TEST_CASE("negative form flips the signature") {
  auto A = fqm_create({{2, mpq_class(-1, 4)}});
  CHECK(A.signature() == 7);
  CHECK(A.Q(1) == mpq_class(3, 4));
  check_representation(A, false);
}

TEST_CASE("signature matches the Gauss sum") {
  std::vector<std::vector<CyclicFactor>> cases = {
      {{2, mpq_class(1, 4)}},
      {{3, mpq_class(1, 3)}},
      {{5, mpq_class(2, 5)}},
      {{4, mpq_class(1, 8)}},
      {{2, mpq_class(1, 4)}, {3, mpq_class(1, 3)}},
      {{2, mpq_class(1, 4)}, {2, mpq_class(1, 4)}, {2, mpq_class(-1, 4)}},
  };
  for (auto& f : cases) {
    auto A = fqm_create(f);
    cplx g = 0;
    for (size_t a = 0; a < A.size(); ++a) g += e(A.Q(a).get_d());
    g /= std::sqrt(double(A.size()));
    CHECK(std::abs(g - e(A.signature() / 8.0)) < 1e-12);
    check_representation(A, false);
    check_representation(A, true);
  }
}

TEST_CASE("module bookkeeping") {
  auto A = fqm_create({{2, mpq_class(1, 4)}, {3, mpq_class(1, 3)}});
  CHECK(A.size() == 6);
  CHECK(A.level() == 12);
  for (size_t a = 0; a < A.size(); ++a) {
    CHECK(A.negation(A.negation(a)) == a);
    CHECK(A.Q(A.negation(a)) == A.Q(a));
    CHECK(A.index_of(A.elements()[a]) == a);
  }
  CHECK_THROWS(fqm_create({{2, mpq_class(1, 3)}}));
}

TEST_CASE("vector forms and scalarization") {
  auto A = fqm_create({{2, mpq_class(1, 4)}});
  VectorForm F;
  F.module = &A;
  F.weight = 0.5;
  QSeries c0(4, 12, 0.5, "c0"), c1(4, 12, 0.5, "c1");
  c0.set(-4, 1);
  c0.set(0, 3);
  c0.set(4, 5);
  c1.set(1, 2);
  c1.set(5, 7);
  F.components = {{0, c0}, {1, c1}};
  CHECK(F.support_ok());
  auto s = scalarize(F);
  CHECK(s.coeff(-4) == 1);
  CHECK(s.coeff(1) == 2);
  CHECK(s.coeff(5) == 7);
  CHECK(s.coeff(2) == 0);
  F.dual = true;
  CHECK_FALSE(F.support_ok());
  QSeries bad(4, 12, 0.5, "bad");
  bad.set(2, 1);
  F.dual = false;
  F.components[1] = bad;
  CHECK_FALSE(F.support_ok());
}
