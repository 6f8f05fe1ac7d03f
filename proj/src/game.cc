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

#include "shapreg/game.h"

#include <utility>

#include "shapreg/error.h"

namespace shapreg {

double StochasticGame::ExpectedValue(const Coalition& z) const {
  const std::size_t count = exogenous_count();
  double sum = 0.0;
  for (std::size_t u = 0; u < count; ++u) sum += Value(z, u);
  return sum / static_cast<double>(count);
}

void StochasticGame::InitializeMeans() {
  if (exogenous_count() == 0) {
    throw Error(ErrorKind::kConfiguration,
                "stochastic game needs at least one exogenous sample");
  }
  grand_mean_ = ExpectedValue(Coalition::Full(players()));
  empty_mean_ = ExpectedValue(Coalition::Empty(players()));
}

FunctionGame::FunctionGame(int players, Fn fn)
    : players_(players), fn_(std::move(fn)) {
  if (players < 1) throw Error(ErrorKind::kDomain, "game needs a player");
}

FunctionStochasticGame::FunctionStochasticGame(int players,
                                               std::size_t exogenous_count,
                                               Fn fn)
    : players_(players), count_(exogenous_count), fn_(std::move(fn)) {
  if (players < 1) throw Error(ErrorKind::kDomain, "game needs a player");
  InitializeMeans();
}

}  // namespace shapreg
