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

#include "shapreg/kernel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shapreg/error.h"

namespace shapreg {

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

// Exact in double for the small d where tests enumerate; log-space beyond.
double Binomial(int n, int k) {
  if (n <= 50) {
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return std::round(c);
  }
  return std::exp(LogBinomial(n, k));
}

}  // namespace

double ShapleyKernelWeight(int players, int size) {
  if (players < 1 || size < 0 || size > players) {
    throw Error(ErrorKind::kDomain, "coalition size outside 0..d");
  }
  if (size == 0 || size == players) {
    return std::numeric_limits<double>::infinity();
  }
  const double d = players;
  const double s = size;
  if (players <= 50) return (d - 1.0) / (Binomial(players, size) * s * (d - s));
  return std::exp(std::log(d - 1.0) - LogBinomial(players, size) -
                  std::log(s) - std::log(d - s));
}

SubsetDistribution::SubsetDistribution(int players) : players_(players) {
  if (players < 2) {
    throw Error(ErrorKind::kDomain,
                "the Shapley kernel distribution needs at least 2 players");
  }
  size_weights_.resize(players - 1);
  double total = 0.0;
  for (int k = 1; k < players; ++k) {
    size_weights_[k - 1] = 1.0 / (static_cast<double>(k) * (players - k));
    total += size_weights_[k - 1];
  }
  normalizer_ = (players - 1.0) * total;
  for (auto& w : size_weights_) w /= total;
  // Symmetrize so that weight(k) == weight(d - k) bit for bit.
  for (int k = 1; k < players - k; ++k) {
    const double mean = 0.5 * (size_weights_[k - 1] + size_weights_[players - k - 1]);
    size_weights_[k - 1] = size_weights_[players - k - 1] = mean;
  }
  size_cdf_.resize(size_weights_.size());
  std::partial_sum(size_weights_.begin(), size_weights_.end(), size_cdf_.begin());
}

double SubsetDistribution::SizeProbability(int size) const {
  if (size < 1 || size >= players_) return 0.0;
  return size_weights_[size - 1];
}

double SubsetDistribution::Probability(const Coalition& z) const {
  const int k = z.size();
  if (k == 0 || k == players_) return 0.0;
  if (players_ <= 50) return size_weights_[k - 1] / Binomial(players_, k);
  return std::exp(std::log(size_weights_[k - 1]) - LogBinomial(players_, k));
}

Coalition SubsetDistribution::Sample(Rng& rng) const {
  Coalition z(players_);
  std::vector<int> scratch;
  Sample(rng, z, scratch);
  return z;
}

void SubsetDistribution::Sample(Rng& rng, Coalition& out,
                                std::vector<int>& scratch) const {
  const double u = rng.Uniform() * size_cdf_.back();
  auto it = std::upper_bound(size_cdf_.begin(), size_cdf_.end(), u);
  if (it == size_cdf_.end()) --it;
  const int size = static_cast<int>(it - size_cdf_.begin()) + 1;

  // Partial Fisher-Yates over the smaller of the subset and its complement.
  const bool pick_members = size <= players_ - size;
  const int picks = pick_members ? size : players_ - size;
  scratch.resize(players_);
  std::iota(scratch.begin(), scratch.end(), 0);
  for (int i = 0; i < players_; ++i) out.set(i, !pick_members);
  for (int i = 0; i < picks; ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(players_ - i));
    std::swap(scratch[i], scratch[j]);
    out.set(scratch[i], pick_members);
  }
}

Eigen::MatrixXd MomentMatrix::Dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(players, players, offdiag);
  a.diagonal().setConstant(diag);
  return a;
}

double MomentMatrix::inverse_shift() const {
  const double a = diag - offdiag;
  return offdiag / (a * (a + players * offdiag));
}

Eigen::VectorXd MomentMatrix::ApplyInverse(const Eigen::VectorXd& b) const {
  return inverse_scale() * b -
         Eigen::VectorXd::Constant(players, inverse_shift() * b.sum());
}

MomentMatrix ExactA(int players) {
  if (players < 2) {
    throw Error(ErrorKind::kDomain, "exact A needs at least 2 players");
  }
  const double d = players;
  double pair_sum = 0.0;
  for (int k = 2; k < players; ++k) pair_sum += (k - 1.0) / (d - k);
  double size_sum = 0.0;
  for (int k = 1; k < players; ++k) size_sum += 1.0 / (k * (d - k));
  MomentMatrix a;
  a.players = players;
  a.diag = 0.5;
  a.offdiag = pair_sum / (d * (d - 1.0) * size_sum);
  return a;
}

Eigen::MatrixXd EmpiricalA(std::span<const Coalition> samples) {
  if (samples.empty()) {
    throw Error(ErrorKind::kDomain, "empirical A needs at least one sample");
  }
  const int d = samples.front().players();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (const auto& z : samples) {
    if (z.players() != d) {
      throw Error(ErrorKind::kDomain, "samples disagree on the player count");
    }
    const Eigen::VectorXd v = z.AsVector();
    a.noalias() += v * v.transpose();
  }
  return a / static_cast<double>(samples.size());
}

}  // namespace shapreg
