//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace molftp::stats {

double signed_score(double direction, double p) {
  if (direction == 0.0 || std::isnan(direction))
    return 0.0;
  const double magnitude = -std::log10(std::max(p, kPFloor));
  if (magnitude == 0.0)
    return 0.0;
  return direction > 0.0 ? magnitude : -magnitude;
}

double normal_two_sided(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

double chi2_survival_df1(double x) {
  if (x <= 0.0)
    return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

double chi2_survival_df2(double x) {
  if (x <= 0.0)
    return 1.0;
  return std::exp(-x / 2.0);
}

double binomial_upper_tail_half(std::int64_t successes, std::int64_t trials) {
  if (trials < 0 || successes < 0)
    throw std::invalid_argument("binomial tail needs non-negative counts");
  if (successes == 0)
    return 1.0;
  if (successes > trials)
    return 0.0;
  // P(X >= k) = I_{1/2}(k, n - k + 1)
  return boost::math::ibeta(static_cast<double>(successes),
                            static_cast<double>(trials - successes + 1), 0.5);
}

}  // namespace molftp::stats
