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


#ifndef BOOKREC_LEARNER_H_
#define BOOKREC_LEARNER_H_

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "bookrec/corpus.h"
#include "bookrec/slot.h"

namespace bookrec {

// A 1..10 rating split into positive and negative class membership:
// positive = (r - 1) / 9, negative = 1 - positive.
struct RatingWeights {
  double positive = 0.0;
  double negative = 0.0;
};

// Throws InvalidRating outside 1..10.
RatingWeights WeightsForRating(int rating);

// Ratings 6..10 are the positive class.
inline bool IsPositiveRating(int rating) { return rating >= 6; }

struct RatedExample {
  TokenizedBook book;
  int rating = 0;

  RatingWeights weights() const { return WeightsForRating(rating); }
  bool positive() const { return IsPositiveRating(rating); }
};

// Smoothed per-class log-probabilities of one vocabulary token in one slot.
struct TokenParams {
  double log_pos = 0.0;
  double log_neg = 0.0;

  // Natural-log ratio of the positive to the negative conditional.
  double Strength() const { return log_pos - log_neg; }

  friend bool operator==(const TokenParams&, const TokenParams&) = default;
};

struct SlotModel {
  // Weighted total length of the slot's bags in each class.
  double length_pos = 0.0;
  double length_neg = 0.0;
  // The slot vocabulary: every token seen in this slot during training.
  std::unordered_map<std::string, TokenParams> tokens;

  std::size_t vocab_size() const { return tokens.size(); }
  const TokenParams* Find(const std::string& token) const {
    const auto it = tokens.find(token);
    return it == tokens.end() ? nullptr : &it->second;
  }

  friend bool operator==(const SlotModel&, const SlotModel&) = default;
};

// A trained user profile. Slots outside `mask` have empty models.
struct Profile {
  double prior_pos = 0.0;
  double prior_neg = 0.0;
  double lambda = 1.0;
  SlotMask mask;
  std::size_t num_examples = 0;
  std::array<SlotModel, kNumBagSlots> slots;

  const SlotModel& slot(BagSlot s) const { return slots[BagIndex(s)]; }

  // log P(c1) - log P(c0); infinite when every training rating sits at the
  // same endpoint (all 10s or all 1s).
  double PriorLogOdds() const { return std::log(prior_pos) - std::log(prior_neg); }

  // Equality of everything except `mask`.
  bool SameParameters(const Profile& other) const {
    return prior_pos == other.prior_pos && prior_neg == other.prior_neg &&
           lambda == other.lambda && num_examples == other.num_examples &&
           slots == other.slots;
  }

  friend bool operator==(const Profile&, const Profile&) = default;
};

// Rating-weighted multinomial naive Bayes over the bags in `mask`:
//
//   P(c)         = sum_e a_ec / N
//   L(c, s)      = sum_e a_ec |d_s(e)|
//   P(w | c, s)  = (sum_e a_ec n(w, e, s) + lambda) / (L(c, s) + lambda |V_s|)
//
// V_s is the slot's vocabulary over the training set. One pass over the
// tokens, so linear in the training data. Throws std::invalid_argument for
// an empty example list or a non-positive lambda.
Profile Train(std::span<const RatedExample> examples, double lambda = 1.0,
              SlotMask mask = SlotMask::All());

struct Score {
  // log P(c1 | B) - log P(c0 | B), P(B) dropped.
  double log_odds = 0.0;
  // log_odds minus the prior term: the sum of per-token strengths.
  double evidence = 0.0;

  // Ordering key. Equal to log_odds, except that a profile with an infinite
  // prior term (which is common to every book) is ordered by evidence.
  double RankKey() const { return std::isfinite(log_odds) ? log_odds : evidence; }
};

// Tokens outside the slot vocabulary are skipped for both classes.
Score LogOdds(const Profile& profile, const TokenizedBook& book);

// Positive iff the odds are strictly greater than one.
inline bool IsPositive(const Score& score) { return score.log_odds > 0.0; }
bool Classify(const Profile& profile, const TokenizedBook& book);

// log(P(w|c1,s) / P(w|c0,s)) in the given base. Throws OutOfVocabulary.
double Strength(const Profile& profile, BagSlot slot, const std::string& token,
                double log_base = std::numbers::e);

}  // namespace bookrec

#endif  // BOOKREC_LEARNER_H_
