//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace molftp {

/// Dense row-major design matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) { }

  double &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct LogisticOptions {
  double l2 = 1.0;
  double tol = 1e-8;
  int max_iter = 1000;
};

struct LinearModel {
  std::vector<double> weights;  // in standardized feature space
  double bias = 0.0;
  double l2 = 0.0;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> mean;   // train-fold standardization
  std::vector<double> scale;  // 0 marks a constant column
  bool constant = false;      // single-class training data
  std::string warning;

  double predict(std::span<const double> x) const;
};

/// L2-penalized logistic regression fitted by damped Newton steps.
/// Loss: sum of log-losses + l2/2 |w|^2, bias unpenalized. Features are
/// standardized with training statistics. A single-class training set gives
/// a constant predictor and sets `warning`. Throws DataError on non-finite
/// input or a label outside {0,1}.
LinearModel fit_logistic(const FeatureMatrix &x, std::span<const int> y,
                         const LogisticOptions &opts);

std::vector<double> predict(const LinearModel &m, const FeatureMatrix &x);

std::vector<double> fit_predict(const FeatureMatrix &train_x,
                                std::span<const int> train_y,
                                const FeatureMatrix &test_x,
                                const LogisticOptions &opts,
                                LinearModel *model = nullptr);

}  // namespace molftp
