//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>

namespace molftp::stats {

inline constexpr double kPFloor = 1e-300;
inline constexpr double kScoreCap = 300.0;  // -log10(kPFloor)

/// sgn(direction) * -log10(max(p, 1e-300)); exactly +0.0 when direction is 0.
double signed_score(double direction, double p);

/// P(|Z| >= z) for standard normal Z, i.e. erfc(z / sqrt(2)).
double normal_two_sided(double z);

double chi2_survival_df1(double x);
double chi2_survival_df2(double x);

/// P(X >= successes) for X ~ Binomial(trials, 1/2).
double binomial_upper_tail_half(std::int64_t successes, std::int64_t trials);

}  // namespace molftp::stats
