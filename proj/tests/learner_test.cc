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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "bookrec/errors.h"
#include "bookrec/random.h"
#include "oracle.h"
#include "test_util.h"

namespace bookrec {
namespace {

using testing::MakeBook;
using testing::MakeExample;

void ExpectRelNear(double expected, double actual, double rel) {
  EXPECT_LE(std::abs(expected - actual), rel * std::max(std::abs(expected), 1e-300))
      << "expected " << expected << " got " << actual;
}

TEST(RatingWeights, Endpoints) {
  EXPECT_EQ(WeightsForRating(10).positive, 1.0);
  EXPECT_EQ(WeightsForRating(10).negative, 0.0);
  EXPECT_EQ(WeightsForRating(1).positive, 0.0);
  EXPECT_EQ(WeightsForRating(1).negative, 1.0);
}

TEST(RatingWeights, Middle) {
  const RatingWeights w = WeightsForRating(5);
  EXPECT_DOUBLE_EQ(w.positive, 4.0 / 9.0);
  EXPECT_DOUBLE_EQ(w.negative, 5.0 / 9.0);
}

TEST(RatingWeights, RejectsOutOfRange) {
  EXPECT_THROW(WeightsForRating(0), InvalidRating);
  EXPECT_THROW(WeightsForRating(11), InvalidRating);
}

TEST(RatingWeights, PositiveClassBoundary) {
  EXPECT_FALSE(IsPositiveRating(5));
  EXPECT_TRUE(IsPositiveRating(6));
}

TEST(Train, EndpointRatingsGiveEvenPriors) {
  const std::vector<RatedExample> ex = {MakeExample("a", 10), MakeExample("b", 1)};
  const Profile p = Train(ex);
  EXPECT_EQ(p.prior_pos, 0.5);
  EXPECT_EQ(p.prior_neg, 0.5);
  EXPECT_EQ(p.num_examples, 2u);
}

TEST(Train, SmoothedConditional) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"a", 2}, {"b", 1}}}})};
  const Profile p = Train(ex, 1.0);
  const TokenParams* a = p.slot(BagSlot::kWords).Find("a");
  ASSERT_NE(a, nullptr);
  EXPECT_NEAR(std::exp(a->log_pos), 0.6, 1e-15);
  EXPECT_EQ(p.slot(BagSlot::kWords).length_pos, 3.0);
  EXPECT_EQ(p.slot(BagSlot::kWords).length_neg, 0.0);
  // Nothing seen in the negative class: uniform over the two-word vocabulary.
  EXPECT_NEAR(std::exp(a->log_neg), 0.5, 1e-15);
}

TEST(Train, Errors) {
  EXPECT_THROW(Train({}), std::invalid_argument);
  const std::vector<RatedExample> ex = {MakeExample("a", 5)};
  EXPECT_THROW(Train(ex, 0.0), std::invalid_argument);
  EXPECT_THROW(Train(ex, -1.0), std::invalid_argument);
  EXPECT_THROW(Train(ex, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST(Train, ThreeBookCorpusMatchesOracle) {
  const std::vector<RatedExample> ex = {
      MakeExample("x", 10, {{BagSlot::kWords, {{"good", 3}, {"plot", 1}}},
                            {BagSlot::kAuthors, {{"a_smith", 1}}}}),
      MakeExample("y", 7, {{BagSlot::kWords, {{"good", 1}, {"dull", 1}}},
                           {BagSlot::kTitle, {{"river", 1}}}}),
      MakeExample("z", 2, {{BagSlot::kWords, {{"dull", 4}, {"plot", 2}}},
                           {BagSlot::kAuthors, {{"b_jones", 1}}}}),
  };
  const Profile p = Train(ex, 1.0);
  const oracle::Params o = oracle::Train(ex, 1.0, SlotMask::All());
  ExpectRelNear(o.prior_pos, p.prior_pos, 1e-12);
  ExpectRelNear(o.prior_neg, p.prior_neg, 1e-12);
  for (std::size_t s = 0; s < kNumBagSlots; ++s) {
    EXPECT_EQ(p.slots[s].vocab_size(), o.vocab_size[s]);
    ExpectRelNear(o.length_pos[s], p.slots[s].length_pos, 1e-12);
    ExpectRelNear(o.length_neg[s], p.slots[s].length_neg, 1e-12);
  }
  for (const auto& [key, probs] : o.cond) {
    const TokenParams* t = p.slots[key.first].Find(key.second);
    ASSERT_NE(t, nullptr) << key.second;
    ExpectRelNear(probs.first, std::exp(t->log_pos), 1e-12);
    ExpectRelNear(probs.second, std::exp(t->log_neg), 1e-12);
    ExpectRelNear(std::log(probs.first / probs.second),
                  Strength(p, kAllBagSlots[key.first], key.second), 1e-12);
  }
}

TEST(Train, MaskedSlotsAreEmpty) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 9, {{BagSlot::kWords, {{"w", 1}}}, {BagSlot::kTitle, {{"t", 1}}}})};
  const Profile p = Train(ex, 1.0, SlotMask::Of({BagSlot::kWords}));
  EXPECT_EQ(p.slot(BagSlot::kTitle).vocab_size(), 0u);
  EXPECT_EQ(p.slot(BagSlot::kWords).vocab_size(), 1u);
  EXPECT_THROW(Strength(p, BagSlot::kTitle, "t"), OutOfVocabulary);
}

TEST(Train, MaskEqualsEmptiedBags) {
  Rng rng(7);
  const SlotMask mask = SlotMask::All().Minus(SlotMask::Of({BagSlot::kRelatedTitles}));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatedExample> ex = oracle::RandomToyCorpus(rng);
    const Profile masked = Train(ex, 1.0, mask);
    for (auto& e : ex) e.book.bag(BagSlot::kRelatedTitles).clear();
    const Profile emptied = Train(ex, 1.0, SlotMask::All());
    EXPECT_TRUE(masked.SameParameters(emptied));
  }
}

TEST(Train, Deterministic) {
  Rng rng(3);
  const auto ex = oracle::RandomToyCorpus(rng);
  EXPECT_EQ(Train(ex), Train(ex));
}

TEST(Train, NormalizationAndPriorIdentity) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ex = oracle::RandomToyCorpus(rng);
    const Profile p = Train(ex, 0.5);
    EXPECT_NEAR(p.prior_pos + p.prior_neg, 1.0, 1e-12);
    double sum = 0.0;
    for (const auto& e : ex) sum += (e.rating - 1) / 9.0;
    EXPECT_NEAR(p.prior_pos, sum / ex.size(), 1e-15);
    for (const auto& slot : p.slots) {
      if (slot.vocab_size() == 0) continue;
      double pos = 0.0, neg = 0.0;
      for (const auto& [token, t] : slot.tokens) {
        pos += std::exp(t.log_pos);
        neg += std::exp(t.log_neg);
      }
      EXPECT_NEAR(pos, 1.0, 1e-9);
      EXPECT_NEAR(neg, 1.0, 1e-9);
    }
  }
}

TEST(Train, WeightDegeneracy) {
  const std::vector<RatedExample> ex = {
      MakeExample("top", 10, {{BagSlot::kWords, {{"only_pos", 4}}}}),
      MakeExample("bottom", 1, {{BagSlot::kWords, {{"only_neg", 2}}}}),
  };
  const Profile p = Train(ex, 1.0);
  const SlotModel& words = p.slot(BagSlot::kWords);
  EXPECT_EQ(words.length_pos, 4.0);
  EXPECT_EQ(words.length_neg, 2.0);
  // Unseen in a class means exactly the smoothing floor lambda / (L + lambda V).
  EXPECT_DOUBLE_EQ(std::exp(words.Find("only_pos")->log_neg), 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(std::exp(words.Find("only_neg")->log_pos), 1.0 / 6.0);
}

TEST(Strength, MonotoneUnderAddedTopRating) {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    auto ex = oracle::RandomToyCorpus(rng);
    const Profile before = Train(ex);
    for (std::size_t s = 0; s < kNumBagSlots; ++s) {
      for (const auto& [token, params] : before.slots[s].tokens) {
        auto extended = ex;
        RatedExample add = MakeExample("added", 10);
        add.book.bags[s][token] = 1;
        extended.push_back(add);
        const Profile after = Train(extended);
        EXPECT_GE(after.slots[s].Find(token)->Strength(), params.Strength() - 1e-12)
            << BagSlotName(kAllBagSlots[s]) << ":" << token;
      }
    }
  }
}

TEST(Strength, ZeroForBalancedWord) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"same", 1}}}}),
      MakeExample("b", 1, {{BagSlot::kWords, {{"same", 1}}}}),
  };
  EXPECT_EQ(Strength(Train(ex), BagSlot::kWords, "same"), 0.0);
}

TEST(Strength, PositiveOnlyEvidence) {
  // The negative class has seen nothing, so its conditional is uniform;
  // w beats it only by being more frequent than average in the one book.
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"w", 2}, {"v", 1}}}})};
  EXPECT_GT(Strength(Train(ex, 1e-6), BagSlot::kWords, "w"), 0.0);
  const std::vector<RatedExample> alone = {MakeExample("a", 10, {{BagSlot::kWords, {{"w", 1}}}})};
  EXPECT_EQ(Strength(Train(alone, 1e-6), BagSlot::kWords, "w"), 0.0);
}

TEST(Strength, LogBase) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"w", 3}}}}),
      MakeExample("b", 2, {{BagSlot::kWords, {{"v", 1}}}}),
  };
  const Profile p = Train(ex);
  EXPECT_NEAR(Strength(p, BagSlot::kWords, "w", 2.0),
              Strength(p, BagSlot::kWords, "w") / std::log(2.0), 1e-12);
  EXPECT_THROW(Strength(p, BagSlot::kWords, "missing"), OutOfVocabulary);
}

TEST(LogOdds, UnseenTokensGivePriorOdds) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 8, {{BagSlot::kWords, {{"w", 1}}}}),
      MakeExample("b", 3, {{BagSlot::kWords, {{"v", 1}}}}),
  };
  const Profile p = Train(ex);
  const Score s = LogOdds(p, MakeBook("new", {{BagSlot::kWords, {{"zzz", 5}}}}));
  EXPECT_EQ(s.log_odds, std::log(p.prior_pos) - std::log(p.prior_neg));
  EXPECT_EQ(s.evidence, 0.0);
}

TEST(LogOdds, EqualPriorsEmptyBookIsZero) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"w", 1}}}}),
      MakeExample("b", 1, {{BagSlot::kWords, {{"v", 1}}}}),
  };
  const Score s = LogOdds(Train(ex), MakeBook("empty"));
  EXPECT_EQ(s.log_odds, 0.0);
  EXPECT_FALSE(IsPositive(s));
}

TEST(LogOdds, MatchesDirectProductOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ex = oracle::RandomToyCorpus(rng);
    const Profile p = Train(ex);
    const oracle::Params o = oracle::Train(ex, 1.0, SlotMask::All());
    const TokenizedBook book = oracle::RandomToyBook(rng);
    const Score s = LogOdds(p, book);
    const double odds = oracle::Odds(o, book, SlotMask::All());
    if (std::isinf(s.log_odds)) {
      EXPECT_TRUE(odds == 0.0 || std::isinf(odds));
      continue;
    }
    ExpectRelNear(odds, std::exp(s.log_odds), 1e-9);
    const double posterior = 1.0 / (1.0 + std::exp(-s.log_odds));
    ExpectRelNear(oracle::Posterior(o, book, SlotMask::All()), posterior, 1e-9);
  }
}

TEST(LogOdds, InfinitePriorOrdersByEvidence) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"w", 1}}}}),
      MakeExample("b", 10, {{BagSlot::kWords, {{"v", 1}}}}),
  };
  const Profile p = Train(ex);
  EXPECT_TRUE(std::isinf(p.PriorLogOdds()));
  const Score s = LogOdds(p, MakeBook("c", {{BagSlot::kWords, {{"w", 2}}}}));
  EXPECT_TRUE(std::isinf(s.log_odds));
  EXPECT_TRUE(std::isfinite(s.evidence));
  EXPECT_EQ(s.RankKey(), s.evidence);
}

TEST(Classify, SignRule) {
  EXPECT_TRUE(IsPositive(Score{3.2, 0.0}));
  EXPECT_FALSE(IsPositive(Score{-0.01, 0.0}));
  EXPECT_FALSE(IsPositive(Score{0.0, 0.0}));
}

}  // namespace
}  // namespace bookrec
