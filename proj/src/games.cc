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

#include "shapreg/games.h"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "shapreg/error.h"
#include "shapreg/rng.h"

namespace shapreg {
namespace {

std::span<const double> RowSpan(const RowMatrix& m, Eigen::Index r) {
  return {m.row(r).data(), static_cast<std::size_t>(m.cols())};
}

void CheckDataset(const TabularModel& model, const RowMatrix& dataset) {
  model.Validate();
  if (dataset.rows() < 1) {
    throw Error(ErrorKind::kConfiguration, "dataset has no rows");
  }
  if (dataset.cols() != model.features()) {
    throw Error(ErrorKind::kConfiguration,
                "dataset has " + std::to_string(dataset.cols()) +
                    " feature columns but the model expects " +
                    std::to_string(model.features()));
  }
  if (!dataset.allFinite()) {
    throw Error(ErrorKind::kConfiguration, "dataset contains non-finite values");
  }
}

[[noreturn]] void SpecError(const std::string& text, const std::string& why) {
  throw Error(ErrorKind::kConfiguration,
              "bad game spec '" + text + "': " + why);
}

double ParseDouble(const std::string& text, const std::string& token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    SpecError(text, "'" + token + "' is not a number");
  }
  return value;
}

std::int64_t ParseInteger(const std::string& text, const std::string& token) {
  std::int64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    SpecError(text, "'" + token + "' is not an integer");
  }
  return value;
}

std::uint64_t ParseUnsigned(const std::string& text, const std::string& token) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    SpecError(text, "'" + token + "' is not an unsigned integer");
  }
  return value;
}

}  // namespace

ShapGame::ShapGame(TabularModel model, Eigen::VectorXd instance)
    : model_(std::move(model)), instance_(std::move(instance)) {
  model_.Validate();
  if (instance_.size() != model_.features()) {
    throw Error(ErrorKind::kConfiguration,
                "instance has " + std::to_string(instance_.size()) +
                    " features but the model expects " +
                    std::to_string(model_.features()));
  }
}

double ShapGame::Value(const Coalition& z) const {
  return model_.ImputedPrediction(
      z, {instance_.data(), static_cast<std::size_t>(instance_.size())});
}

SageGame::SageGame(TabularModel model, RowMatrix dataset,
                   Eigen::VectorXd labels, Loss loss)
    : model_(std::move(model)),
      dataset_(std::move(dataset)),
      labels_(std::move(labels)),
      loss_(loss) {
  CheckDataset(model_, dataset_);
  if (labels_.size() != dataset_.rows()) {
    throw Error(ErrorKind::kConfiguration,
                "labels and dataset rows are not aligned");
  }
  if (loss_ == Loss::kSoftCrossEntropy) {
    throw Error(ErrorKind::kConfiguration,
                "SAGE uses squared or cross_entropy loss");
  }
  if (loss_ == Loss::kCrossEntropy) {
    if (model_.kind != TabularModel::Kind::kLogistic) {
      throw Error(ErrorKind::kConfiguration,
                  "cross_entropy loss requires a logistic model");
    }
    for (Eigen::Index i = 0; i < labels_.size(); ++i) {
      if (labels_[i] != 0.0 && labels_[i] != 1.0) {
        throw Error(ErrorKind::kConfiguration,
                    "cross_entropy loss requires labels in {0, 1}");
      }
    }
  }
  InitializeMeans();
}

double SageGame::Value(const Coalition& z, std::size_t u) const {
  const auto r = static_cast<Eigen::Index>(u);
  const double prediction = model_.ImputedPrediction(z, RowSpan(dataset_, r));
  return -EvaluateLoss(loss_, prediction, labels_[r]);
}

ShapleyEffectsGame::ShapleyEffectsGame(TabularModel model, RowMatrix dataset,
                                       Loss loss)
    : model_(std::move(model)), dataset_(std::move(dataset)), loss_(loss) {
  CheckDataset(model_, dataset_);
  if (loss_ != Loss::kSquared &&
      model_.kind != TabularModel::Kind::kLogistic) {
    throw Error(ErrorKind::kConfiguration,
                "soft cross entropy loss requires a logistic model");
  }
  full_predictions_.resize(dataset_.rows());
  for (Eigen::Index r = 0; r < dataset_.rows(); ++r) {
    full_predictions_[r] = model_.Predict(RowSpan(dataset_, r));
  }
  InitializeMeans();
}

double ShapleyEffectsGame::Value(const Coalition& z, std::size_t u) const {
  const auto r = static_cast<Eigen::Index>(u);
  const double prediction = model_.ImputedPrediction(z, RowSpan(dataset_, r));
  return -EvaluateLoss(loss_, prediction, full_predictions_[r]);
}

InessentialGame::InessentialGame(double intercept, Eigen::VectorXd coefficients)
    : intercept_(intercept), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 1) {
    throw Error(ErrorKind::kConfiguration, "inessential game needs a player");
  }
}

double InessentialGame::Value(const Coalition& z) const {
  double v = intercept_;
  for (int i = 0; i < players(); ++i) {
    if (z.contains(i)) v += coefficients_[i];
  }
  return v;
}

UnanimityGame::UnanimityGame(int players, std::vector<int> carrier)
    : players_(players), carrier_(std::move(carrier)) {
  if (players < 1) throw Error(ErrorKind::kConfiguration, "need d >= 1");
  if (carrier_.empty()) {
    throw Error(ErrorKind::kConfiguration, "unanimity carrier must be nonempty");
  }
  for (int i : carrier_) {
    if (i < 0 || i >= players) {
      throw Error(ErrorKind::kConfiguration, "unanimity carrier out of range");
    }
  }
}

double UnanimityGame::Value(const Coalition& z) const {
  for (int i : carrier_) {
    if (!z.contains(i)) return 0.0;
  }
  return 1.0;
}

MajorityGame::MajorityGame(int players) : players_(players) {
  if (players < 1) throw Error(ErrorKind::kConfiguration, "need d >= 1");
}

double MajorityGame::Value(const Coalition& z) const {
  return 2 * z.size() > players_ ? 1.0 : 0.0;
}

RandomGame::RandomGame(int players, std::uint64_t seed)
    : players_(players), seed_(seed) {
  if (players < 1) throw Error(ErrorKind::kConfiguration, "need d >= 1");
}

double RandomGame::Value(const Coalition& z) const {
  std::uint64_t h = SplitMix64(seed_);
  for (std::uint64_t word : z.Words()) h = SplitMix64(h ^ word);
  return UnitInterval(h);
}

SyntheticSpec ParseSyntheticSpec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  SyntheticSpec spec;
  std::set<std::string> allowed;
  if (kind == "inessential") {
    spec.kind = SyntheticSpec::Kind::kInessential;
    allowed = {"d", "intercept", "beta0", "beta", "seed"};
  } else if (kind == "unanimity") {
    spec.kind = SyntheticSpec::Kind::kUnanimity;
    allowed = {"d", "T"};
  } else if (kind == "majority") {
    spec.kind = SyntheticSpec::Kind::kMajority;
    allowed = {"d"};
  } else if (kind == "random") {
    spec.kind = SyntheticSpec::Kind::kRandom;
    allowed = {"d", "seed"};
  } else {
    SpecError(text, "unknown game kind '" + kind + "'");
  }

  // Tokens without '=' continue the list value of the preceding key, which
  // is how "T=1,2" and "beta=0.5,1.5" are written.
  std::map<std::string, std::vector<std::string>> fields;
  std::string current;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t comma = std::min(rest.find(',', start), rest.size());
      const std::string token = rest.substr(start, comma - start);
      start = comma + 1;
      if (token.empty()) SpecError(text, "empty field");
      const auto eq = token.find('=');
      if (eq == std::string::npos) {
        if (current.empty()) SpecError(text, "value '" + token + "' has no key");
        fields[current].push_back(token);
        continue;
      }
      current = token.substr(0, eq);
      if (!allowed.count(current)) {
        SpecError(text, "unknown key '" + current + "' for " + kind);
      }
      if (fields.count(current)) SpecError(text, "duplicate key '" + current + "'");
      const std::string value = token.substr(eq + 1);
      if (value.empty()) SpecError(text, "key '" + current + "' has no value");
      fields[current].push_back(value);
    }
  }
  for (const auto& [key, values] : fields) {
    if (values.size() > 1 && key != "T" && key != "beta") {
      SpecError(text, "key '" + key + "' takes a single value");
    }
  }
  auto scalar = [&](const std::string& key) -> const std::string* {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second.front();
  };

  if (const auto* d = scalar("d")) {
    const auto players = ParseInteger(text, *d);
    if (players < 1 || players > 4096) SpecError(text, "d must be in [1, 4096]");
    spec.players = static_cast<int>(players);
  }
  if (const auto* seed = scalar("seed")) spec.seed = ParseUnsigned(text, *seed);

  switch (spec.kind) {
    case SyntheticSpec::Kind::kInessential: {
      if (fields.count("intercept") && fields.count("beta0")) {
        SpecError(text, "give intercept or beta0, not both");
      }
      if (const auto* b0 = scalar("intercept")) spec.intercept = ParseDouble(text, *b0);
      if (const auto* b0 = scalar("beta0")) spec.intercept = ParseDouble(text, *b0);
      if (fields.count("beta")) {
        if (fields.count("seed")) SpecError(text, "give beta or seed, not both");
        for (const auto& token : fields["beta"]) {
          spec.coefficients.push_back(ParseDouble(text, token));
        }
        if (spec.players == 0) spec.players = static_cast<int>(spec.coefficients.size());
        if (spec.players != static_cast<int>(spec.coefficients.size())) {
          SpecError(text, "beta length does not match d");
        }
      } else {
        if (spec.players == 0) SpecError(text, "missing d");
        Rng rng(spec.seed);
        for (int i = 0; i < spec.players; ++i) {
          spec.coefficients.push_back(2.0 * rng.Uniform() - 1.0);
        }
      }
      break;
    }
    case SyntheticSpec::Kind::kUnanimity: {
      if (spec.players == 0) SpecError(text, "missing d");
      if (!fields.count("T")) SpecError(text, "missing carrier T");
      std::set<int> seen;
      for (const auto& token : fields["T"]) {
        const auto member = ParseInteger(text, token);
        if (member < 1 || member > spec.players) {
          SpecError(text, "carrier member " + token + " outside 1..d");
        }
        if (!seen.insert(static_cast<int>(member)).second) {
          SpecError(text, "carrier member " + token + " repeated");
        }
        spec.carrier.push_back(static_cast<int>(member) - 1);
      }
      break;
    }
    case SyntheticSpec::Kind::kMajority:
    case SyntheticSpec::Kind::kRandom:
      if (spec.players == 0) SpecError(text, "missing d");
      break;
  }
  return spec;
}

std::unique_ptr<DeterministicGame> MakeSyntheticGame(const SyntheticSpec& spec) {
  switch (spec.kind) {
    case SyntheticSpec::Kind::kInessential:
      return std::make_unique<InessentialGame>(
          spec.intercept,
          Eigen::Map<const Eigen::VectorXd>(
              spec.coefficients.data(),
              static_cast<Eigen::Index>(spec.coefficients.size())));
    case SyntheticSpec::Kind::kUnanimity:
      return std::make_unique<UnanimityGame>(spec.players, spec.carrier);
    case SyntheticSpec::Kind::kMajority:
      return std::make_unique<MajorityGame>(spec.players);
    case SyntheticSpec::Kind::kRandom:
      return std::make_unique<RandomGame>(spec.players, spec.seed);
  }
  throw Error(ErrorKind::kConfiguration, "unknown synthetic game kind");
}

}  // namespace shapreg
