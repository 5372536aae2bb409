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


#ifndef BOOKREC_METRICS_H_
#define BOOKREC_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bookrec {

// One held-out book: its true rating and the system's score. `rank_key`
// orders the test set (normally equal to the score, see Score::RankKey).
struct TestItem {
  TestItem() = default;
  TestItem(std::string id, int rating, double score)
      : id(std::move(id)), rating(rating), score(score), rank_key(score) {}
  TestItem(std::string id, int rating, double score, double rank_key)
      : id(std::move(id)), rating(rating), score(score), rank_key(rank_key) {}

  std::string id;
  int rating = 0;
  double score = 0.0;
  double rank_key = 0.0;
};

enum class Metric { kAcc, kRec, kPr, kPr3, kPr10, kF, kRt3, kRt10, kRs };

inline constexpr std::array<Metric, 9> kAllMetrics = {
    Metric::kAcc, Metric::kRec, Metric::kPr,   Metric::kPr3, Metric::kPr10,
    Metric::kF,   Metric::kRt3, Metric::kRt10, Metric::kRs,
};

// Column names: Acc Rec Pr Pr3 Pr10 F Rt3 Rt10 r_s.
std::string_view MetricName(Metric metric);
std::optional<Metric> ParseMetric(std::string_view name);

// Percentages for the first six, mean ratings for Rt3/Rt10, a correlation
// for r_s. A field is absent when undefined on the test set: Rec without
// positive examples, Pr (and hence F) without positive predictions, the
// top-3/top-10 fields on fewer than 3/10 items, r_s when either ranking is
// constant.
struct MetricsReport {
  double acc = 0.0;
  std::optional<double> rec;
  std::optional<double> pr;
  std::optional<double> pr3;
  std::optional<double> pr10;
  std::optional<double> f;
  std::optional<double> rt3;
  std::optional<double> rt10;
  std::optional<double> r_s;

  std::optional<double> Get(Metric metric) const;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Truth: rating >= 6. Prediction: score > 0. Top-n fields use the test set
// ordered by descending rank_key, ties by ascending id. Throws
// std::invalid_argument on an empty test set.
MetricsReport ComputeMetrics(std::span<const TestItem> test);

// 1-based ranks in ascending value order; tied values share the mean of
// the ranks they span.
std::vector<double> MidRanks(std::span<const double> values);

// Pearson correlation of the midranks. nullopt when the sizes differ, there
// are fewer than two values, or either side is constant.
std::optional<double> SpearmanCorrelation(std::span<const double> x, std::span<const double> y);

}  // namespace bookrec

#endif  // BOOKREC_METRICS_H_
