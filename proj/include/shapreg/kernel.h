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

#ifndef SHAPREG_KERNEL_H_
#define SHAPREG_KERNEL_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "shapreg/coalition.h"
#include "shapreg/rng.h"

namespace shapreg {

// Shapley kernel weight (d - 1) / (C(d, s) s (d - s)) of a coalition of size
// s. Returns +infinity for s = 0 and s = d, whose values enter the regression
// as constraints rather than as weighted terms.
double ShapleyKernelWeight(int players, int size);

// Natural log of the binomial coefficient C(n, k).
double LogBinomial(int n, int k);

// The distribution p(z) proportional to the Shapley kernel over coalitions
// with 0 < |z| < d. It factors into a size marginal proportional to
// 1 / (k (d - k)) and a uniform choice among the C(d, k) subsets of that size.
class SubsetDistribution {
 public:
  explicit SubsetDistribution(int players);

  int players() const { return players_; }

  // Probability of drawing a coalition of size k in 1..d-1 (zero otherwise).
  double SizeProbability(int size) const;
  std::span<const double> size_weights() const { return size_weights_; }

  // Q = sum of kernel weights over 0 < |z| < d = (d - 1) sum_k 1/(k (d - k)).
  double normalizer() const { return normalizer_; }

  // p(z); zero for the empty and full coalitions.
  double Probability(const Coalition& z) const;

  Coalition Sample(Rng& rng) const;
  // Allocation-free variant for hot loops. `out` must have d players.
  void Sample(Rng& rng, Coalition& out, std::vector<int>& scratch) const;

 private:
  int players_;
  std::vector<double> size_weights_;  // index k - 1
  std::vector<double> size_cdf_;
  double normalizer_;
};

// A = E[Z Z^T] under p(Z). It has constant diagonal 1/2 and a constant
// off-diagonal value, i.e. A = (diag - offdiag) I + offdiag 11^T.
struct MomentMatrix {
  int players = 0;
  double diag = 0.5;
  double offdiag = 0.0;

  Eigen::MatrixXd Dense() const;

  // A^{-1} = inverse_scale I - inverse_shift 11^T.
  double inverse_scale() const { return 1.0 / (diag - offdiag); }
  double inverse_shift() const;
  Eigen::VectorXd ApplyInverse(const Eigen::VectorXd& b) const;
};

// Closed form in O(d). Throws a domain error for d < 2.
MomentMatrix ExactA(int players);

// (1/n) sum_i z_i z_i^T.
Eigen::MatrixXd EmpiricalA(std::span<const Coalition> samples);

}  // namespace shapreg

#endif  // SHAPREG_KERNEL_H_
