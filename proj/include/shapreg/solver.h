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

#ifndef SHAPREG_SOLVER_H_
#define SHAPREG_SOLVER_H_

#include <span>
#include <utility>

#include <Eigen/Core>

#include "shapreg/coalition.h"
#include "shapreg/kernel.h"

namespace shapreg {

// Empirical systems whose condition estimate exceeds this are rejected.
inline constexpr double kMaxConditionNumber = 1e10;

// Minimizes beta^T A beta - 2 beta^T b subject to 1^T beta = total:
//
//   beta = A^{-1} (b - 1 (1^T A^{-1} b - total) / (1^T A^{-1} 1)).
//
// The structured overload inverts A analytically; the dense overload uses a
// Cholesky factorization and throws DegenerateSystemError when A is not
// symmetric positive definite or its condition estimate exceeds
// kMaxConditionNumber.
Eigen::VectorXd SolveConstrained(const MomentMatrix& a, const Eigen::VectorXd& b,
                                 double total);
Eigen::VectorXd SolveConstrained(const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b, double total);

// C = A^{-1} - A^{-1} 11^T A^{-1} / (1^T A^{-1} 1). For the exact moment
// matrix C = scale I + shift 11^T.
struct ExactC {
  int players = 0;
  double scale = 0.0;
  double shift = 0.0;

  Eigen::MatrixXd Dense() const;
  // diag(C S C^T) in O(d^2).
  Eigen::VectorXd SandwichDiagonal(const Eigen::MatrixXd& s) const;
  // C S C^T.
  Eigen::MatrixXd Sandwich(const Eigen::MatrixXd& s) const;
};

ExactC ComputeC(const MomentMatrix& a);
Eigen::MatrixXd ComputeC(const Eigen::MatrixXd& a);

// KernelSHAP on a fixed sample: builds A_n = mean z z^T and
// b_n = mean z (v(z) - v0), then solves with total = v1 - v0. A singular
// A_n raises an insufficient-samples error.
Eigen::VectorXd SolveEmpirical(std::span<const std::pair<Coalition, double>> samples,
                               double v0, double v1);

}  // namespace shapreg

#endif  // SHAPREG_SOLVER_H_
