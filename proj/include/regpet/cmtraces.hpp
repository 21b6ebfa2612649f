#pragma once

#include <map>
#include <string>
#include <vector>

#include "regpet/common.hpp"
#include "regpet/qseries.hpp"
#include "regpet/weil.hpp"

namespace regpet {

struct QuadForm {
  long a = 0, b = 0, c = 0;
  long disc() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

enum class TraceKind { cm, cycle };

struct TraceValue {
  long disc = 0;
  double value = 0;
  TraceKind kind = TraceKind::cm;
  double est_err = 0;
  // nearest integer and distance to it, computed in working precision
  long nearest = 0;
  double residual = 0;
};

std::vector<QuadForm> reduced_forms(long D);
int stabilizer_weight(const QuadForm& Q);
TraceValue cm_trace(const QSeries& f, long D, Precision prec = Precision::extended);
// brute-force class count for negative discriminants (independent enumeration)
long class_count_bruteforce(long D);

// Indefinite forms: one Gauss-reduced representative per proper class.
std::vector<QuadForm> indefinite_classes(long d);
QuadForm rho_step(const QuadForm& Q);
// smallest t, u > 0 with t^2 - d u^2 = 4
std::pair<long, long> pell_fundamental(long d);
double log_epsilon(const QuadForm& Q);
QuadForm act(const QuadForm& Q, long a, long b, long c, long d);

struct CycleIntegral {
  double value = 0;
  double err = 0;
};
// integral of f over one period of C_Q against dtau/Q(tau,1)
CycleIntegral cycle_integral(const QSeries& f, const QuadForm& Q, double s0 = 0.0);
TraceValue cycle_trace(const QSeries& f, long d);

// B_1(n) for 0 <= n <= n_max, and the principal coefficient at n = -1
std::map<long, long> g1_coefficients(long n_max, Precision prec = Precision::extended,
                                     double* max_residual = nullptr);
constexpr long kB1Zero = -2;
// vector-valued g_1 for rho-bar on Z/2 with Q = x^2/4; components on the grid 1/4
VectorForm g1_vector(const FiniteQuadraticModule& A, const std::map<long, long>& coeffs, long n_max);
std::map<long, double> G1_plus_coefficients(long d_max);

}  // namespace regpet
