// Copyright 2026 The driftbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "driftbench/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftbench/error.hpp"

namespace driftbench {

PcaModel fit_pca(const Matrix& reference, double retained_fraction) {
  if (reference.rows() < 2) throw InsufficientDataError("PCA needs at least two reference rows");
  if (reference.cols() == 0) throw DimensionError("PCA needs at least one feature");
  if (!(retained_fraction > 0.0 && retained_fraction <= 1.0))
    throw ParameterError("retained variance fraction must lie in (0, 1]");

  const auto n = static_cast<Eigen::Index>(reference.rows());
  const auto d = static_cast<Eigen::Index>(reference.cols());
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      reference.data().data(), n, d);

  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DegenerateInputError("covariance eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  std::vector<double> values(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) values[static_cast<std::size_t>(k)] = std::max(0.0, solver.eigenvalues()(d - 1 - k));
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(total > 0.0) || values.front() <= 1e-300)
    throw DegenerateInputError("reference data has zero covariance");

  const double floor = values.front() * 1e-12;
  std::size_t keep = 0;
  double cumulative = 0.0;
  while (keep < values.size() && values[keep] > floor) {
    cumulative += values[keep];
    ++keep;
    if (cumulative >= retained_fraction * total * (1.0 - 1e-12)) break;
  }

  PcaModel model;
  model.retained_fraction = retained_fraction;
  model.mean.assign(mean.data(), mean.data() + d);
  model.all_variances = values;
  model.explained_variance.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(keep));
  model.components = Matrix(static_cast<std::size_t>(d), keep);
  for (std::size_t c = 0; c < keep; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - static_cast<Eigen::Index>(c));
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    for (Eigen::Index r = 0; r < d; ++r) model.components(static_cast<std::size_t>(r), c) = v(r);
  }
  return model;
}

Matrix PcaModel::project(const Matrix& data) const {
  if (data.cols() != input_dimensions()) throw DimensionError("PCA input dimensionality mismatch");
  const std::size_t k = output_dimensions();
  Matrix out(data.rows(), k);
  std::vector<double> centered(data.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    auto row = data.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) centered[j] = row[j] - mean[j];
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < centered.size(); ++j) s += centered[j] * components(j, c);
      out(r, c) = s;
    }
  }
  return out;
}

}  // namespace driftbench
