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

#include "shapreg/error.h"

namespace shapreg {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfiguration:
      return "configuration error";
    case ErrorKind::kDomain:
      return "domain error";
    case ErrorKind::kDegenerateSystem:
      return "degenerate system";
    case ErrorKind::kInsufficientSamples:
      return "insufficient samples";
    case ErrorKind::kTooLarge:
      return "problem too large";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

}  // namespace shapreg
