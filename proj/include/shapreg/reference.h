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

#ifndef SHAPREG_REFERENCE_H_
#define SHAPREG_REFERENCE_H_

#include <vector>

#include <Eigen/Core>

#include "shapreg/estimators.h"
#include "shapreg/game.h"

// Single-threaded reference implementations of the parallel kernels. Kept for
// tests and benchmarks; every function here must agree with its parallel
// counterpart bit for bit or within the documented tolerance.
namespace shapreg::reference {

inline constexpr int kMaxPermutationPlayers = 9;

// Average marginal contribution over all d! orderings.
Eigen::VectorXd PermutationShapley(const DeterministicGame& game);

std::vector<double> ValueTable(const DeterministicGame& game);
Eigen::VectorXd ShapleyFromTable(int players, const std::vector<double>& table);
Eigen::VectorXd ShapleyExact(const DeterministicGame& game);

// sum_z p(z) z z^T over non-trivial coalitions.
Eigen::MatrixXd EnumeratedA(int players);

std::vector<Estimate> RunMany(const DeterministicGame& game,
                              const EstimatorConfig& base, int runs);

}  // namespace shapreg::reference

#endif  // SHAPREG_REFERENCE_H_
