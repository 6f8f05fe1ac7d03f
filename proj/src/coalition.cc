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

#include "shapreg/coalition.h"

#include "shapreg/error.h"

namespace shapreg {

Coalition::Coalition(int players) {
  if (players < 1) {
    throw Error(ErrorKind::kDomain, "coalition needs at least one player");
  }
  bits_.assign(static_cast<std::size_t>(players), 0);
}

Coalition Coalition::Full(int players) {
  Coalition z(players);
  for (auto& bit : z.bits_) bit = 1;
  return z;
}

Coalition Coalition::FromMask(int players, std::uint64_t mask) {
  if (players > 64) {
    throw Error(ErrorKind::kDomain, "bitmask coalitions support at most 64 players");
  }
  Coalition z(players);
  for (int i = 0; i < players; ++i) z.bits_[i] = (mask >> i) & 1u;
  return z;
}

Coalition Coalition::FromMembers(int players, std::initializer_list<int> members) {
  Coalition z(players);
  for (int i : members) {
    if (i < 0 || i >= players) {
      throw Error(ErrorKind::kDomain, "coalition member out of range");
    }
    z.bits_[i] = 1;
  }
  return z;
}

int Coalition::size() const {
  int count = 0;
  for (auto bit : bits_) count += bit;
  return count;
}

Coalition Coalition::Complement() const {
  Coalition z = *this;
  for (auto& bit : z.bits_) bit = 1 - bit;
  return z;
}

std::uint64_t Coalition::mask() const {
  if (players() > 64) {
    throw Error(ErrorKind::kDomain, "bitmask coalitions support at most 64 players");
  }
  std::uint64_t m = 0;
  for (int i = 0; i < players(); ++i) {
    if (bits_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

Eigen::VectorXd Coalition::AsVector() const {
  Eigen::VectorXd v(players());
  for (int i = 0; i < players(); ++i) v[i] = bits_[i];
  return v;
}

std::vector<std::uint64_t> Coalition::Words() const {
  std::vector<std::uint64_t> words((bits_.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return words;
}

std::string Coalition::ToString() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto bit : bits_) s.push_back(bit ? '1' : '0');
  return s;
}

}  // namespace shapreg
