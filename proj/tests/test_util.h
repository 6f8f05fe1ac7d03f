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

#ifndef SHAPREG_TESTS_TEST_UTIL_H_
#define SHAPREG_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <Eigen/Core>

namespace shapreg::testing {

inline ::testing::AssertionResult VectorNear(const Eigen::VectorXd& actual,
                                             const Eigen::VectorXd& expected,
                                             double tolerance) {
  if (actual.size() != expected.size()) {
    return ::testing::AssertionFailure()
           << "size " << actual.size() << " vs " << expected.size();
  }
  for (Eigen::Index i = 0; i < actual.size(); ++i) {
    if (!(std::abs(actual[i] - expected[i]) <= tolerance)) {
      return ::testing::AssertionFailure()
             << "index " << i << ": " << actual[i] << " vs " << expected[i]
             << " (tolerance " << tolerance << ")";
    }
  }
  return ::testing::AssertionSuccess();
}

inline ::testing::AssertionResult MatrixNear(const Eigen::MatrixXd& actual,
                                             const Eigen::MatrixXd& expected,
                                             double tolerance) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  const double diff = (actual - expected).cwiseAbs().maxCoeff();
  if (diff <= tolerance) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max abs difference " << diff;
}

inline Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) v[i++] = x;
  return v;
}

}  // namespace shapreg::testing

#endif  // SHAPREG_TESTS_TEST_UTIL_H_
