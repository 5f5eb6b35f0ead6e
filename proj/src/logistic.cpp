//
// molftp - Copyright 2026 The molftp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molftp/logistic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "molftp/error.hpp"

namespace molftp {

namespace {

double sigmoid(double t) {
  if (t >= 0.0)
    return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
double softplus(double t) {
  if (t > 0.0)
    return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

struct Objective {
  const Eigen::MatrixXd &x;  // standardized, last column is the intercept
  const Eigen::VectorXd &y;
  double l2;

  double loss(const Eigen::VectorXd &beta) const {
    const Eigen::VectorXd eta = x * beta;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
      sum += softplus(eta[i]) - y[i] * eta[i];
    const Eigen::Index p = beta.size() - 1;
    return sum + 0.5 * l2 * beta.head(p).squaredNorm();
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd &beta) const {
    Eigen::VectorXd r = x * beta;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      r[i] = sigmoid(r[i]) - y[i];
    Eigen::VectorXd g = x.transpose() * r;
    const Eigen::Index p = beta.size() - 1;
    g.head(p) += l2 * beta.head(p);
    return g;
  }
};

}  // namespace

double LinearModel::predict(std::span<const double> x) const {
  if (constant)
    return sigmoid(bias);
  double eta = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (scale[j] == 0.0)
      continue;
    eta += weights[j] * (x[j] - mean[j]) / scale[j];
  }
  return sigmoid(eta);
}

LinearModel fit_logistic(const FeatureMatrix &fm, std::span<const int> y,
                         const LogisticOptions &opts) {
  if (y.size() != fm.rows)
    throw DataError("feature rows and labels differ in length");
  if (fm.rows == 0)
    throw DataError("cannot fit on an empty training set");
  if (!(opts.l2 >= 0.0) || !std::isfinite(opts.l2))
    throw ConfigError("l2", "must be a finite non-negative number");
  for (double v : fm.data) {
    if (!std::isfinite(v))
      throw DataError("non-finite feature value");
  }
  std::size_t positives = 0;
  for (int v : y) {
    if (v != 0 && v != 1)
      throw DataError("label outside {0,1}");
    positives += static_cast<std::size_t>(v);
  }

  const std::size_t n = fm.rows;
  const std::size_t p = fm.cols;
  LinearModel m;
  m.l2 = opts.l2;
  m.weights.assign(p, 0.0);
  m.mean.assign(p, 0.0);
  m.scale.assign(p, 0.0);

  if (positives == 0 || positives == n) {
    // Prior clipped away from 0/1 so downstream log-losses stay finite.
    const double prior = (static_cast<double>(positives) + 0.5) /
                         (static_cast<double>(n) + 1.0);
    m.constant = true;
    m.converged = true;
    m.bias = std::log(prior / (1.0 - prior));
    m.warning = "single-class training fold; predicting the class prior";
    return m;
  }

  for (std::size_t j = 0; j < p; ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      mu += fm(i, j);
    mu /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      ss += (fm(i, j) - mu) * (fm(i, j) - mu);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    m.mean[j] = mu;
    m.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(mu)) ? sd : 0.0;
  }

  const auto cols = static_cast<Eigen::Index>(p + 1);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), cols);
  Eigen::VectorXd yy(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < p; ++j) {
      const auto c = static_cast<Eigen::Index>(j);
      x(r, c) = m.scale[j] == 0.0 ? 0.0 : (fm(i, j) - m.mean[j]) / m.scale[j];
    }
    x(r, cols - 1) = 1.0;
    yy[r] = y[i];
  }

  const Objective obj{ x, yy, opts.l2 };
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(cols);
  const double prior = static_cast<double>(positives) / static_cast<double>(n);
  beta[cols - 1] = std::log(prior / (1.0 - prior));
  double f = obj.loss(beta);

  Eigen::VectorXd prob(static_cast<Eigen::Index>(n));
  for (int it = 0; it < opts.max_iter; ++it) {
    const Eigen::VectorXd eta = x * beta;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
      prob[i] = sigmoid(eta[i]);
    const Eigen::VectorXd grad = obj.gradient(beta);
    m.grad_norm = grad.norm();
    m.iterations = it;
    if (m.grad_norm <= opts.tol) {
      m.converged = true;
      break;
    }

    const Eigen::VectorXd wdiag = prob.array() * (1.0 - prob.array());
    Eigen::MatrixXd h = x.transpose() * wdiag.asDiagonal() * x;
    for (Eigen::Index j = 0; j + 1 < cols; ++j)
      h(j, j) += opts.l2;
    h.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = h.ldlt().solve(grad);

    Eigen::VectorXd next = beta - step;
    double fn = obj.loss(next);
    if (grad.dot(step) > 1e-10 * (1.0 + std::abs(f))) {
      double t = 1.0;
      while (!(fn <= f) && t > 1e-12) {
        t *= 0.5;
        next = beta - t * step;
        fn = obj.loss(next);
      }
      if (!(fn <= f))
        break;
    }
    // Otherwise the expected decrease is below the resolution of the loss
    // and the full Newton step is taken as is.
    const bool stalled = (next - beta).norm() == 0.0;
    beta = next;
    f = fn;
    if (stalled)
      break;
  }
  if (!m.converged) {
    m.grad_norm = obj.gradient(beta).norm();
    m.converged = m.grad_norm <= opts.tol;
  }

  for (std::size_t j = 0; j < p; ++j)
    m.weights[j] = beta[static_cast<Eigen::Index>(j)];
  m.bias = beta[cols - 1];
  return m;
}

std::vector<double> predict(const LinearModel &m, const FeatureMatrix &x) {
  if (x.cols != m.weights.size())
    throw DataError("feature width differs from the fitted model");
  std::vector<double> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    out[i] = m.predict(std::span<const double>(x.data.data() + i * x.cols, x.cols));
  return out;
}

std::vector<double> fit_predict(const FeatureMatrix &train_x,
                                std::span<const int> train_y,
                                const FeatureMatrix &test_x,
                                const LogisticOptions &opts,
                                LinearModel *model) {
  for (double v : test_x.data) {
    if (!std::isfinite(v))
      throw DataError("non-finite feature value");
  }
  LinearModel m = fit_logistic(train_x, train_y, opts);
  auto out = predict(m, test_x);
  if (model != nullptr)
    *model = std::move(m);
  return out;
}

}  // namespace molftp
