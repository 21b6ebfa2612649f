#pragma once

#include <utility>
#include <vector>

#include "regpet/common.hpp"

namespace regpet {

struct SeriesEstimate {
  double value = 0;
  long c_max = 0;
  double tail_estimate = 0;
  std::vector<double> partial_sums;  // block-end partial sums
};

// K(m, n; c), computed directly from the units mod c
double kloosterman_sum(long m, long n, long c);

// K(m_i, n_i; c) for c = 1..c_max and every requested pair; entry [i][c-1].
std::vector<std::vector<double>> kloosterman_table(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                                   int threads = 0);

// 2 pi sqrt(mn) sum_c K(m,n;c)/c F(4 pi sqrt(mn)/c), block-smoothed
SeriesEstimate dit_coefficient(long m, long n, long c_max);
std::vector<SeriesEstimate> dit_coefficients(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                             int threads = 0);
SeriesEstimate smooth_series(const std::vector<double>& terms);

// -4 pi times dit_coefficient
SeriesEstimate product_route_A(long m, long n, long c_max);
std::vector<SeriesEstimate> product_route_A(const std::vector<std::pair<long, long>>& pairs, long c_max,
                                            int threads = 0);

}  // namespace regpet
