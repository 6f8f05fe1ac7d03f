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

#ifndef SHAPREG_COALITION_H_
#define SHAPREG_COALITION_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace shapreg {

// A subset of the players {0, ..., d-1} stored as a binary indicator vector.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(int players);

  static Coalition Empty(int players) { return Coalition(players); }
  static Coalition Full(int players);
  // Bit i of `mask` is player i. Requires players <= 64.
  static Coalition FromMask(int players, std::uint64_t mask);
  static Coalition FromMembers(int players, std::initializer_list<int> members);

  int players() const { return static_cast<int>(bits_.size()); }
  bool contains(int player) const { return bits_[player] != 0; }
  void set(int player, bool member) { bits_[player] = member ? 1 : 0; }
  int size() const;

  Coalition Complement() const;
  std::uint64_t mask() const;
  std::span<const std::uint8_t> bits() const { return bits_; }
  Eigen::VectorXd AsVector() const;
  // Packs the indicator bits into 64-bit words, little-endian by player.
  std::vector<std::uint64_t> Words() const;
  std::string ToString() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace shapreg

#endif  // SHAPREG_COALITION_H_
