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

#ifndef SHAPREG_ERROR_H_
#define SHAPREG_ERROR_H_

#include <stdexcept>
#include <string>

namespace shapreg {

enum class ErrorKind {
  kConfiguration,        // bad user input: dimensions, labels, spec strings
  kDomain,               // argument outside the mathematical domain
  kDegenerateSystem,     // singular or ill-conditioned linear system
  kInsufficientSamples,  // sampled moment matrix not yet invertible
  kTooLarge,             // enumeration over 2^d coalitions refused
  kIo,                   // file missing or unreadable
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the reciprocal-condition estimate of the rejected system.
class DegenerateSystemError : public Error {
 public:
  DegenerateSystemError(const std::string& message, double condition_estimate)
      : Error(ErrorKind::kDegenerateSystem, message),
        condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

}  // namespace shapreg

#endif  // SHAPREG_ERROR_H_
