#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "regpet/common.hpp"

namespace regpet {

// Truncated Laurent series sum c(n) q^(n/denom) with exact rational coefficients.
// Coefficients are known for every exponent index n < order.
class QSeries {
public:
  QSeries() = default;
  QSeries(int denom, long order, double weight = 0, std::string label = {});

  int denom() const { return denom_; }
  long order() const { return order_; }
  double weight() const { return weight_; }
  const std::string& label() const { return label_; }
  void set_weight(double k) { weight_ = k; }
  void set_label(std::string s) { label_ = std::move(s); }

  mpq_class coeff(long n) const;
  void set(long n, const mpq_class& c);
  const std::map<long, mpq_class>& coeffs() const { return coeffs_; }

  // Lowest exponent index with a nonzero coefficient, or order() for the zero series.
  long valuation() const;
  bool is_zero() const;
  QSeries truncated(long new_order) const;
  QSeries principal_part() const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const mpq_class& s);

  std::string to_json() const;
  std::string to_string(int max_terms = 8) const;

private:
  int denom_ = 1;
  long order_ = 0;
  double weight_ = 0;
  std::string label_;
  std::map<long, mpq_class> coeffs_;
  friend QSeries operator*(const QSeries&, const QSeries&);
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(QSeries a, const mpq_class& s);
QSeries inverse(const QSeries& b);
QSeries operator/(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, long e);

// q^n/denom with a single coefficient.
QSeries monomial(long n, const mpq_class& c, long order, int denom = 1);
QSeries constant_series(const mpq_class& c, long order, int denom = 1);

enum class Family { E4, E6, Delta, j, eta24, faber, wh_basis, weight2_basis };

struct FormLabel {
  Family family;
  int k = 0;
  long m = 0;
};

FormLabel parse_label(const std::string& s);

// Divisor sum sigma_r(n).
mpz_class sigma(long r, long n);

QSeries classical_form(const FormLabel& label, long order);
QSeries classical_form(const std::string& label, long order);
QSeries eisenstein(int k, long order);
QSeries faber_basis(long m, long order);
long wh_min_pole(int k);
QSeries wh_basis(int k, long m, long order);

// sum_n c_f(n) c_g(-n)
mpq_class pairing(const QSeries& f, const QSeries& g);

// Numeric view of a QSeries for fast evaluation.
template <class R> class NumSeries {
public:
  using C = complex_t<R>;
  NumSeries() = default;
  explicit NumSeries(const QSeries& s);

  int denom() const { return denom_; }
  long nmin() const { return nmin_; }
  long order() const { return nmin_ + long(c_.size()); }
  R coeff(long n) const {
    return (n < nmin_ || n >= order()) ? R(0) : c_[size_t(n - nmin_)];
  }
  // sum c(n) e(n tau / denom) over all stored n
  C eval(const C& tau) const;
  // sum over n in [lo, hi)
  C eval_range(const C& tau, long lo, long hi) const;
  // estimate of the truncation error at tau
  R tail_bound(const C& tau) const;

private:
  int denom_ = 1;
  long nmin_ = 0;
  std::vector<R> c_;
};

template <class R> R mpq_to(const mpq_class& q);

extern template class NumSeries<double>;
extern template class NumSeries<quad>;

}  // namespace regpet
