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


#include "bookrec/session.h"

#include <atomic>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>

#include "bookrec/synthetic.h"
#include "test_util.h"

namespace bookrec {
namespace {

struct Fixture {
  std::vector<RatedExample> planted;
  std::shared_ptr<const Catalog> catalog;
};

Fixture Planted(std::size_t books = 80) {
  PlantedCorpusOptions options;
  options.num_books = books;
  Fixture f;
  f.planted = MakePlantedCorpus(options);
  std::vector<TokenizedBook> list;
  for (const auto& e : f.planted) list.push_back(e.book);
  f.catalog = std::make_shared<const Catalog>(std::move(list));
  return f;
}

ApiErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ApiError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ApiError thrown";
  return ApiErrorCode::kBadRequest;
}

TEST(Session, RateUpserts) {
  const Fixture f = Planted();
  Session s(f.catalog, {});
  EXPECT_EQ(s.Rate("b0001", 7), 1u);
  EXPECT_EQ(s.Rate("b0002", 3), 2u);
  EXPECT_EQ(s.Rate("b0001", 9), 2u);
  EXPECT_EQ(s.Ratings().at("b0001"), 9);
  EXPECT_EQ(CodeOf([&] { s.Rate("b0001", 11); }), ApiErrorCode::kInvalidRating);
  EXPECT_EQ(CodeOf([&] { s.Rate("b0001", 0); }), ApiErrorCode::kInvalidRating);
  EXPECT_EQ(CodeOf([&] { s.Rate("nope", 5); }), ApiErrorCode::kNotFound);
  EXPECT_EQ(s.RatingCount(), 2u);
}

TEST(Session, TrainGenerationsAndUntrained) {
  const Fixture f = Planted();
  Session s(f.catalog, {});
  EXPECT_EQ(CodeOf([&] { s.Train(); }), ApiErrorCode::kUntrained);
  EXPECT_EQ(CodeOf([&] { s.Recommend(5); }), ApiErrorCode::kUntrained);
  EXPECT_EQ(s.Current(), nullptr);
  for (int i = 0; i < 5; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
  EXPECT_EQ(s.Train(), 1u);
  EXPECT_EQ(s.Current()->training.size(), 5u);
  EXPECT_EQ(s.Train(), 2u);
  EXPECT_EQ(s.generation(), 2u);
}

TEST(Session, SnapshotMatchesStoredRatings) {
  const Fixture f = Planted();
  Session s(f.catalog, {});
  for (int i = 0; i < 10; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
  s.Train();
  std::vector<RatedExample> expected(f.planted.begin(), f.planted.begin() + 10);
  EXPECT_EQ(s.Current()->profile, Train(expected));
}

TEST(Session, RecommendationsExcludeRated) {
  const Fixture f = Planted();
  Session s(f.catalog, {});
  for (int i = 0; i < 20; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
  s.Train();
  const auto recs = s.Recommend(1000);
  EXPECT_EQ(recs.entries.size(), f.catalog->size() - 20);
  const auto rated = s.Ratings();
  for (const auto& e : recs.entries) EXPECT_FALSE(rated.contains(e.id));
  // A rating added after training also disappears from the list at once.
  s.Rate(recs.entries.front().id, 2);
  EXPECT_NE(s.Recommend(1).entries.front().id, recs.entries.front().id);
  const auto bottom = s.Recommend(3, true);
  EXPECT_EQ(bottom.entries.back().id, recs.entries.back().id);
}

TEST(Session, RetrainFollowsFeedback) {
  const Fixture f = Planted(200);
  Session s(f.catalog, {});
  for (int i = 0; i < 30; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
  s.Train();
  const auto before = s.Recommend(10);
  // Telling the system its favourite is disliked pushes similar books down.
  const std::string top = before.entries.front().id;
  s.Rate(top, 1);
  s.Train();
  const auto after = s.Recommend(200);
  for (const auto& e : after.entries) EXPECT_NE(e.id, top);
  EXPECT_EQ(after.generation, 2u);
}

TEST(Session, ExplainErrors) {
  const Fixture f = Planted();
  Session s(f.catalog, {});
  s.Rate(f.planted[0].book.id, 10);
  s.Rate(f.planted[1].book.id, 1);
  s.Train();
  EXPECT_EQ(CodeOf([&] { s.Explain("nope", 5); }), ApiErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { s.ExplainFeature(BagSlot::kWords, "not-a-token", 5); }),
            ApiErrorCode::kNotFound);
  const auto e = s.Explain(f.planted[5].book.id, std::nullopt);
  double total = e.explanation.prior_log_odds;
  for (const auto& row : e.explanation.rows) total += row.influence;
  EXPECT_NEAR(total, e.explanation.score.log_odds, 1e-9);
}

TEST(Session, PersistenceRoundTrip) {
  const Fixture f = Planted();
  testing::TempDir dir;
  SessionConfig config;
  config.data_dir = dir.path();
  RankedList before;
  {
    Session s(f.catalog, config);
    for (int i = 0; i < 12; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
    s.Train();
    s.Rate(f.planted[3].book.id, 10);  // after training: stored, not yet learned
    before = s.Recommend(20).entries;
  }
  Session restored(f.catalog, config);
  EXPECT_EQ(restored.RatingCount(), 12u);
  EXPECT_EQ(restored.Ratings().at(f.planted[3].book.id), 10);
  EXPECT_EQ(restored.generation(), 1u);
  const RankedList after = restored.Recommend(20).entries;
  ASSERT_EQ(after.size(), before.size());
  for (std::size_t i = 0; i < after.size(); ++i) {
    EXPECT_EQ(after[i].id, before[i].id);
    EXPECT_EQ(after[i].score.log_odds, before[i].score.log_odds);
  }
  EXPECT_EQ(restored.Train(), 2u);
}

TEST(Session, ConcurrentReadersSeeWholeProfiles) {
  const Fixture f = Planted(120);
  Session s(f.catalog, {});
  for (int i = 0; i < 40; ++i) s.Rate(f.planted[i].book.id, f.planted[i].rating);
  s.Train();
  std::atomic<bool> stop{false};
  std::atomic<int> bad{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&] {
      while (!stop) {
        const auto snap = s.Current();
        // A published snapshot always agrees with its own training set.
        if (snap->profile.num_examples != snap->training.size()) ++bad;
        s.Recommend(5);
      }
    });
  }
  for (int round = 0; round < 20; ++round) {
    s.Rate(f.planted[40 + round].book.id, f.planted[40 + round].rating);
    s.Train();
  }
  stop = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_EQ(s.generation(), 21u);
}

}  // namespace
}  // namespace bookrec
