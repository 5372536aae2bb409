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


#include "bookrec/recommender.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "bookrec/errors.h"
#include "bookrec/random.h"
#include "oracle.h"
#include "test_util.h"

namespace bookrec {
namespace {

using testing::MakeBook;
using testing::MakeExample;

std::vector<RatedExample> Training() {
  return {
      MakeExample("liked", 10, {{BagSlot::kWords, {{"good", 3}, {"space", 2}}}}),
      MakeExample("ok", 6, {{BagSlot::kWords, {{"space", 1}, {"plain", 1}}}}),
      MakeExample("hated", 1, {{BagSlot::kWords, {{"bad", 3}, {"plain", 2}}}}),
  };
}

Catalog Candidates() {
  std::vector<TokenizedBook> books;
  books.push_back(MakeBook("c1", {{BagSlot::kWords, {{"good", 2}}}}));
  books.push_back(MakeBook("c2", {{BagSlot::kWords, {{"bad", 2}}}}));
  books.push_back(MakeBook("c3", {{BagSlot::kWords, {{"space", 1}, {"bad", 1}}}}));
  books.push_back(MakeBook("c4", {{BagSlot::kWords, {{"unknown", 1}}}}));
  books.push_back(MakeBook("c0", {{BagSlot::kWords, {{"unknown", 1}}}}));
  return Catalog(std::move(books));
}

TEST(Rank, OrderedPermutation) {
  const Profile p = Train(Training());
  const Catalog cat = Candidates();
  const RankedList list = Rank(p, cat);
  ASSERT_EQ(list.size(), cat.size());
  EXPECT_TRUE(std::is_sorted(list.begin(), list.end(), RanksBefore));
  EXPECT_EQ(list.front().id, "c1");
  EXPECT_EQ(list.back().id, "c2");
  // Identical scores fall back to ascending id.
  const auto c0 = std::find_if(list.begin(), list.end(), [](auto& e) { return e.id == "c0"; });
  EXPECT_EQ(std::next(c0)->id, "c4");
  std::set<std::string> ids;
  for (const auto& e : list) ids.insert(e.id);
  EXPECT_EQ(ids.size(), cat.size());
}

TEST(Rank, MatchesNormalizedPosteriorOrder) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ex = oracle::RandomToyCorpus(rng);
    const Profile p = Train(ex);
    if (!std::isfinite(p.PriorLogOdds())) continue;
    const auto o = oracle::Train(ex, 1.0, SlotMask::All());
    std::vector<TokenizedBook> books;
    for (int i = 0; i < 8; ++i) {
      books.push_back(oracle::RandomToyBook(rng, 12));
      books.back().id = "h" + std::to_string(i);
    }
    const Catalog cat(books);
    const RankedList list = Rank(p, cat);
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      const double a = oracle::Posterior(o, *cat.Find(list[i].id), SlotMask::All());
      const double b = oracle::Posterior(o, *cat.Find(list[i + 1].id), SlotMask::All());
      EXPECT_GE(a, b * (1 - 1e-9));
    }
  }
}

TEST(Rank, Exclusions) {
  const Profile p = Train(Training());
  const Catalog one({MakeBook("only")});
  EXPECT_EQ(Rank(p, one).size(), 1u);
  EXPECT_TRUE(Rank(p, one, {"only"}).empty());
  EXPECT_EQ(Rank(p, Candidates(), {"c1", "zzz"}).size(), 4u);
}

TEST(RecommendTop, PrefixAndClamp) {
  const Profile p = Train(Training());
  const Catalog cat = Candidates();
  const RankedList all = Rank(p, cat);
  const RankedList top = RecommendTop(p, cat, {}, 3);
  ASSERT_EQ(top.size(), 3u);
  for (std::size_t i = 0; i < top.size(); ++i) EXPECT_EQ(top[i].id, all[i].id);
  EXPECT_TRUE(RecommendTop(p, cat, {}, 0).empty());
  EXPECT_EQ(RecommendTop(p, cat, {}, 99).size(), all.size());
}

TEST(RecommendBottom, Suffix) {
  const Profile p = Train(Training());
  const Catalog cat = Candidates();
  const RankedList all = Rank(p, cat);
  const RankedList bottom = RecommendBottom(p, cat, {}, 2);
  ASSERT_EQ(bottom.size(), 2u);
  EXPECT_EQ(bottom[0].id, all[all.size() - 2].id);
  EXPECT_EQ(bottom[1].id, all.back().id);
}

TEST(ExplainRecommendation, SingleToken) {
  const Profile p = Train(Training());
  const TokenizedBook book = MakeBook("b", {{BagSlot::kWords, {{"good", 3}, {"nope", 4}}}});
  const auto e = ExplainRecommendation(p, book);
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_EQ(e.rows[0].token, "good");
  EXPECT_EQ(e.rows[0].count, 3);
  EXPECT_DOUBLE_EQ(e.rows[0].influence, 3 * Strength(p, BagSlot::kWords, "good"));
  EXPECT_TRUE(ExplainRecommendation(p, MakeBook("x", {{BagSlot::kWords, {{"zz", 1}}}}))
                  .rows.empty());
}

TEST(ExplainRecommendation, DecompositionIdentity) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ex = oracle::RandomToyCorpus(rng);
    const Profile p = Train(ex);
    if (!std::isfinite(p.PriorLogOdds())) continue;
    const TokenizedBook book = oracle::RandomToyBook(rng);
    const auto e = ExplainRecommendation(p, book, std::nullopt);
    double total = e.prior_log_odds;
    for (const auto& row : e.rows) total += row.influence;
    EXPECT_NEAR(total, e.score.log_odds, 1e-9 * std::max(1.0, std::abs(e.score.log_odds)));
    EXPECT_EQ(e.score.log_odds, LogOdds(p, book).log_odds);
  }
}

TEST(ExplainRecommendation, OrderAndTopK) {
  const Profile p = Train(Training());
  const TokenizedBook book = MakeBook(
      "b", {{BagSlot::kWords, {{"good", 1}, {"bad", 1}, {"space", 1}, {"plain", 1}}}});
  const auto all = ExplainRecommendation(p, book, std::nullopt);
  ASSERT_EQ(all.rows.size(), 4u);
  for (std::size_t i = 0; i + 1 < all.rows.size(); ++i) {
    EXPECT_GE(all.rows[i].influence, all.rows[i + 1].influence);
  }
  const auto two = ExplainRecommendation(p, book, 2);
  ASSERT_EQ(two.rows.size(), 2u);
  EXPECT_EQ(two.rows[0].token, all.rows[0].token);
  EXPECT_EQ(two.rows[1].token, all.rows[1].token);
}

TEST(ExplainRecommendation, TiesBySlotThenToken) {
  const std::vector<RatedExample> ex = {
      MakeExample("a", 10, {{BagSlot::kWords, {{"x", 1}, {"y", 1}}}, {BagSlot::kTitle, {{"z", 1}}}}),
      MakeExample("b", 1, {{BagSlot::kWords, {{"q", 2}}}, {BagSlot::kTitle, {{"r", 1}}}}),
  };
  const Profile p = Train(ex);
  const auto e = ExplainRecommendation(
      p, MakeBook("c", {{BagSlot::kWords, {{"y", 1}, {"x", 1}}}}), std::nullopt);
  ASSERT_EQ(e.rows.size(), 2u);
  EXPECT_EQ(e.rows[0].influence, e.rows[1].influence);
  EXPECT_EQ(e.rows[0].token, "x");
}

TEST(ExplainFeature, SingleBook) {
  std::vector<RatedExample> ex = {
      MakeExample("cosmos", 10, {{BagSlot::kWords, {{"universes", 15}}}}),
      MakeExample("other", 2, {{BagSlot::kWords, {{"dull", 1}}}}),
  };
  ex[0].book.title_display = "The Life of the Cosmos";
  const Profile p = Train(ex);
  const auto e = ExplainFeature(p, ex, BagSlot::kWords, "universes");
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_EQ(e.rows[0].title, "The Life of the Cosmos");
  EXPECT_EQ(e.rows[0].rating, 10);
  EXPECT_EQ(e.rows[0].count, 15);
  EXPECT_THROW(ExplainFeature(p, ex, BagSlot::kWords, "absent"), OutOfVocabulary);
  EXPECT_THROW(ExplainFeature(p, ex, BagSlot::kTitle, "universes"), OutOfVocabulary);
}

TEST(ExplainFeature, OrderedByPositiveWeightedCount) {
  const std::vector<RatedExample> ex = {
      MakeExample("ten", 10, {{BagSlot::kWords, {{"w", 3}}}}),
      MakeExample("eight", 8, {{BagSlot::kWords, {{"w", 7}}}}),
      MakeExample("one", 1, {{BagSlot::kWords, {{"w", 9}}}}),
      MakeExample("none", 9, {{BagSlot::kWords, {{"v", 1}}}}),
  };
  const Profile p = Train(ex);
  const auto e = ExplainFeature(p, ex, BagSlot::kWords, "w", 5);
  ASSERT_EQ(e.rows.size(), 3u);
  EXPECT_EQ(e.rows[0].id, "eight");
  EXPECT_NEAR(e.rows[0].contribution, 7.0 * 7.0 / 9.0, 1e-12);
  EXPECT_EQ(e.rows[1].id, "ten");
  EXPECT_EQ(e.rows[1].contribution, 3.0);
  EXPECT_EQ(e.rows[2].id, "one");
  EXPECT_EQ(ExplainFeature(p, ex, BagSlot::kWords, "w", 1).rows.size(), 1u);
}

TEST(TopFeatures, SortedByStrength) {
  const Profile p = Train(Training());
  const auto top = TopFeatures(p, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].token, "good");
  EXPECT_GE(top[0].strength, top[1].strength);
}

TEST(Format, Tables) {
  const std::vector<RatedExample> ex = Training();
  const Profile p = Train(ex);
  const Catalog cat = Candidates();
  const std::string ranked = FormatRankedList(RecommendTop(p, cat, {}, 2), cat);
  EXPECT_NE(ranked.find("Rank"), std::string::npos);
  EXPECT_NE(ranked.find("Title of c1"), std::string::npos);
  const std::string expl =
      FormatExplanation(ExplainRecommendation(p, *cat.Find("c3")), 2.0);
  EXPECT_NE(expl.find("Slot"), std::string::npos);
  EXPECT_LT(expl.find("Slot"), expl.find("Word"));
  EXPECT_LT(expl.find("Word"), expl.find("Strength"));
  EXPECT_NE(expl.find("SPACE"), std::string::npos);
  const std::string feat = FormatFeatureExplanation(ExplainFeature(p, ex, BagSlot::kWords, "space"));
  EXPECT_LT(feat.find("Title"), feat.find("Rating"));
  EXPECT_LT(feat.find("Rating"), feat.find("Count"));
}

}  // namespace
}  // namespace bookrec
