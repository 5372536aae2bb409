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


#ifndef BOOKREC_RECOMMENDER_H_
#define BOOKREC_RECOMMENDER_H_

#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bookrec/corpus.h"
#include "bookrec/learner.h"

namespace bookrec {

struct RankedEntry {
  std::string id;
  Score score;
};

// Descending by Score::RankKey(), ties broken by ascending id.
using RankedList = std::vector<RankedEntry>;

bool RanksBefore(const RankedEntry& a, const RankedEntry& b);

// Scores every catalog book whose id is not in `exclude`.
RankedList Rank(const Profile& profile, const Catalog& catalog,
                const std::set<std::string, std::less<>>& exclude = {});

// First min(n, available) entries of Rank.
RankedList RecommendTop(const Profile& profile, const Catalog& catalog,
                        const std::set<std::string, std::less<>>& exclude, std::size_t n);

// Last min(n, available) entries of Rank, still in rank order (the least
// recommended book comes last).
RankedList RecommendBottom(const Profile& profile, const Catalog& catalog,
                           const std::set<std::string, std::less<>>& exclude, std::size_t n);

struct ExplanationRow {
  BagSlot slot = BagSlot::kWords;
  std::string token;
  double strength = 0.0;  // natural log
  int count = 0;          // occurrences in the explained book
  double influence = 0.0; // strength * count
};

struct RecommendationExplanation {
  std::string book_id;
  std::string title;
  double prior_log_odds = 0.0;
  Score score;
  // Descending influence; ties by (slot, token).
  std::vector<ExplanationRow> rows;
};

inline constexpr std::size_t kDefaultExplanationRows = 20;
inline constexpr std::size_t kDefaultFeatureRows = 5;

// The in-vocabulary tokens of `book` ranked by their contribution to its
// score. With k = nullopt every row is returned and
//   prior_log_odds + sum(row.influence) == score.log_odds.
RecommendationExplanation ExplainRecommendation(
    const Profile& profile, const TokenizedBook& book,
    std::optional<std::size_t> k = kDefaultExplanationRows);

struct FeatureRow {
  std::string id;
  std::string title;
  int rating = 0;
  int count = 0;
  double contribution = 0.0;  // positive weight * count
};

struct FeatureExplanation {
  BagSlot slot = BagSlot::kWords;
  std::string token;
  double strength = 0.0;
  std::vector<FeatureRow> rows;
};

// Training books that contain the feature, ranked by their positive-class
// weighted count (the numerator of the token's positive conditional).
// Ties by title, then id. Throws OutOfVocabulary.
FeatureExplanation ExplainFeature(const Profile& profile,
                                  std::span<const RatedExample> training, BagSlot slot,
                                  const std::string& token,
                                  std::size_t k = kDefaultFeatureRows);

struct ProfileFeature {
  BagSlot slot = BagSlot::kWords;
  std::string token;
  double strength = 0.0;
};

// The k vocabulary entries with the highest strength across all slots.
std::vector<ProfileFeature> TopFeatures(const Profile& profile, std::size_t k = 20);

// Plain-text tables. Strengths are converted to `log_base` for display.
std::string FormatRankedList(const RankedList& list, const Catalog& catalog,
                             std::size_t first_rank = 1);
std::string FormatProfileFeatures(std::span<const ProfileFeature> features,
                                  double log_base = std::numbers::e);
std::string FormatExplanation(const RecommendationExplanation& explanation,
                              double log_base = std::numbers::e);
std::string FormatFeatureExplanation(const FeatureExplanation& explanation);

}  // namespace bookrec

#endif  // BOOKREC_RECOMMENDER_H_
