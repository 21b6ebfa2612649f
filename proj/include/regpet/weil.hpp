#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "regpet/common.hpp"
#include "regpet/qseries.hpp"

namespace regpet {

// One cyclic factor Z/n with Q(x) = q x^2 mod 1.
struct CyclicFactor {
  long n;
  mpq_class q;
};

using CMatrix = std::vector<std::vector<cplx>>;

class FiniteQuadraticModule {
public:
  explicit FiniteQuadraticModule(std::vector<CyclicFactor> factors);

  size_t size() const { return elements_.size(); }
  const std::vector<std::vector<long>>& elements() const { return elements_; }
  // Q(x) reduced into [0, 1)
  mpq_class Q(size_t i) const { return Qvals_[i]; }
  mpq_class bilinear(size_t i, size_t j) const;
  int signature() const { return signature_; }
  long level() const { return level_; }
  size_t index_of(const std::vector<long>& x) const;
  size_t negation(size_t i) const;
  const std::vector<CyclicFactor>& factors() const { return factors_; }

private:
  std::vector<CyclicFactor> factors_;
  std::vector<std::vector<long>> elements_;
  std::vector<mpq_class> Qvals_;
  int signature_ = 0;
  long level_ = 1;
};

FiniteQuadraticModule fqm_create(const std::vector<CyclicFactor>& factors);

struct RhoMatrices {
  CMatrix T, S;
};

RhoMatrices rho_matrices(const FiniteQuadraticModule& A, bool dual);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix conj_transpose(const CMatrix& a);
CMatrix identity_matrix(size_t n);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

struct VectorForm {
  const FiniteQuadraticModule* module = nullptr;
  std::map<size_t, QSeries> components;  // element index -> series on grid 1/level
  double weight = 0;
  bool dual = false;

  // exponent support law n/N = +-Q(a) mod 1
  bool support_ok() const;
};

QSeries scalarize(const VectorForm& F);

}  // namespace regpet
