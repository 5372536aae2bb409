// Copyright 2026 The Bookrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bookrec/learner.h"

#include <stdexcept>

#include "bookrec/errors.h"

namespace bookrec {

namespace {

struct WeightedCount {
  double pos = 0.0;
  double neg = 0.0;
};

}  // namespace

RatingWeights WeightsForRating(int rating) {
  ValidateRating(rating);
  RatingWeights w;
  w.positive = static_cast<double>(rating - 1) / 9.0;
  w.negative = 1.0 - w.positive;
  return w;
}

Profile Train(std::span<const RatedExample> examples, double lambda, SlotMask mask) {
  if (examples.empty()) throw std::invalid_argument("cannot train on zero examples");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("smoothing lambda must be positive and finite");
  }

  Profile profile;
  profile.lambda = lambda;
  profile.mask = mask;
  profile.num_examples = examples.size();

  const std::vector<BagSlot> active = mask.Slots();
  std::array<std::unordered_map<std::string, WeightedCount>, kNumBagSlots> counts;
  double prior_pos_mass = 0.0;
  double prior_neg_mass = 0.0;

  for (const RatedExample& example : examples) {
    const RatingWeights w = example.weights();
    prior_pos_mass += w.positive;
    prior_neg_mass += w.negative;
    for (BagSlot slot : active) {
      SlotModel& model = profile.slots[BagIndex(slot)];
      auto& slot_counts = counts[BagIndex(slot)];
      std::size_t length = 0;
      for (const auto& [token, n] : example.book.bag(slot)) {
        WeightedCount& c = slot_counts[token];
        c.pos += w.positive * n;
        c.neg += w.negative * n;
        length += static_cast<std::size_t>(n);
      }
      model.length_pos += w.positive * static_cast<double>(length);
      model.length_neg += w.negative * static_cast<double>(length);
    }
  }

  const double n = static_cast<double>(examples.size());
  profile.prior_pos = prior_pos_mass / n;
  profile.prior_neg = prior_neg_mass / n;

  for (BagSlot slot : active) {
    SlotModel& model = profile.slots[BagIndex(slot)];
    const auto& slot_counts = counts[BagIndex(slot)];
    const double smoothing_mass = lambda * static_cast<double>(slot_counts.size());
    const double denom_pos = model.length_pos + smoothing_mass;
    const double denom_neg = model.length_neg + smoothing_mass;
    model.tokens.reserve(slot_counts.size());
    for (const auto& [token, c] : slot_counts) {
      model.tokens.emplace(token, TokenParams{std::log((c.pos + lambda) / denom_pos),
                                              std::log((c.neg + lambda) / denom_neg)});
    }
  }
  return profile;
}

Score LogOdds(const Profile& profile, const TokenizedBook& book) {
  double evidence = 0.0;
  for (BagSlot slot : kAllBagSlots) {
    if (!profile.mask.Contains(slot)) continue;
    const SlotModel& model = profile.slot(slot);
    if (model.tokens.empty()) continue;
    for (const auto& [token, count] : book.bag(slot)) {
      const TokenParams* params = model.Find(token);
      if (params == nullptr) continue;
      evidence += count * params->Strength();
    }
  }
  return Score{profile.PriorLogOdds() + evidence, evidence};
}

bool Classify(const Profile& profile, const TokenizedBook& book) {
  return IsPositive(LogOdds(profile, book));
}

double Strength(const Profile& profile, BagSlot slot, const std::string& token,
                double log_base) {
  const TokenParams* params =
      profile.mask.Contains(slot) ? profile.slot(slot).Find(token) : nullptr;
  if (params == nullptr) {
    throw OutOfVocabulary("'" + token + "' is not in the " + std::string(BagSlotName(slot)) +
                          " vocabulary");
  }
  const double strength = params->Strength();
  return log_base == std::numbers::e ? strength : strength / std::log(log_base);
}

}  // namespace bookrec
