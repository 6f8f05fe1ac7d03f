// Copyright 2026 The shapreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shapreg/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>

#include "shapreg/error.h"

namespace shapreg {
namespace {

Eigen::VectorXd ApplyConstraint(const Eigen::VectorXd& inv_b,
                                const Eigen::VectorXd& inv_ones, double total) {
  const double lambda = (inv_b.sum() - total) / inv_ones.sum();
  return inv_b - lambda * inv_ones;
}

void CheckSymmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::kDomain, "moment matrix must be square and nonempty");
  }
  if (!a.allFinite()) {
    throw DegenerateSystemError("moment matrix has non-finite entries",
                                std::numeric_limits<double>::infinity());
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorKind::kDomain, "moment matrix is not symmetric");
  }
}

Eigen::LLT<Eigen::MatrixXd> Factor(const Eigen::MatrixXd& a) {
  CheckSymmetric(a);
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (llt.info() != Eigen::Success || !(rcond * kMaxConditionNumber >= 1.0)) {
    const double condition =
        rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    std::ostringstream msg;
    msg << "moment matrix is singular or ill-conditioned (condition estimate "
        << condition << ")";
    throw DegenerateSystemError(msg.str(), condition);
  }
  return llt;
}

}  // namespace

Eigen::VectorXd SolveConstrained(const MomentMatrix& a, const Eigen::VectorXd& b,
                                 double total) {
  if (b.size() != a.players) {
    throw Error(ErrorKind::kDomain, "b does not match the moment matrix size");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.players);
  return ApplyConstraint(a.ApplyInverse(b), a.ApplyInverse(ones), total);
}

Eigen::VectorXd SolveConstrained(const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b, double total) {
  if (b.size() != a.rows()) {
    throw Error(ErrorKind::kDomain, "b does not match the moment matrix size");
  }
  const auto llt = Factor(a);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows());
  return ApplyConstraint(llt.solve(b), llt.solve(ones), total);
}

Eigen::MatrixXd ExactC::Dense() const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(players, players, shift);
  c.diagonal().array() += scale;
  return c;
}

Eigen::VectorXd ExactC::SandwichDiagonal(const Eigen::MatrixXd& s) const {
  // (C S C^T)_ii = scale^2 S_ii + scale shift ((S 1)_i + (S^T 1)_i)
  //              + shift^2 1^T S 1.
  const Eigen::VectorXd row_sums = s.rowwise().sum();
  const Eigen::VectorXd col_sums = s.colwise().sum().transpose();
  const double total = row_sums.sum();
  return (scale * scale) * s.diagonal() + (scale * shift) * (row_sums + col_sums) +
         Eigen::VectorXd::Constant(players, shift * shift * total);
}

Eigen::MatrixXd ExactC::Sandwich(const Eigen::MatrixXd& s) const {
  const Eigen::MatrixXd c = Dense();
  return c * s * c.transpose();
}

ExactC ComputeC(const MomentMatrix& a) {
  // A^{-1} = alpha I - gamma 11^T and A^{-1} 1 = (alpha - d gamma) 1, so
  // C = alpha I - (gamma + (alpha - d gamma) / d) 11^T.
  const double alpha = a.inverse_scale();
  const double gamma = a.inverse_shift();
  const double row = alpha - a.players * gamma;
  ExactC c;
  c.players = a.players;
  c.scale = alpha;
  c.shift = -(gamma + row / a.players);
  return c;
}

Eigen::MatrixXd ComputeC(const Eigen::MatrixXd& a) {
  const auto llt = Factor(a);
  const Eigen::MatrixXd inv =
      llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  const Eigen::VectorXd inv_ones = inv.rowwise().sum();
  Eigen::MatrixXd c = inv - inv_ones * inv_ones.transpose() / inv_ones.sum();
  return 0.5 * (c + c.transpose());
}

Eigen::VectorXd SolveEmpirical(std::span<const std::pair<Coalition, double>> samples,
                               double v0, double v1) {
  if (samples.empty()) {
    throw Error(ErrorKind::kInsufficientSamples, "no samples to fit");
  }
  const int d = samples.front().first.players();
  if (d == 1) return Eigen::VectorXd::Constant(1, v1 - v0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  for (const auto& [z, value] : samples) {
    if (z.players() != d) {
      throw Error(ErrorKind::kDomain, "samples disagree on the player count");
    }
    const Eigen::VectorXd v = z.AsVector();
    a.noalias() += v * v.transpose();
    b += v * (value - v0);
  }
  const double n = static_cast<double>(samples.size());
  a /= n;
  b /= n;
  try {
    return SolveConstrained(a, b, v1 - v0);
  } catch (const DegenerateSystemError& e) {
    throw Error(ErrorKind::kInsufficientSamples,
                std::string("sampled moment matrix is not invertible: ") + e.what());
  }
}

}  // namespace shapreg
