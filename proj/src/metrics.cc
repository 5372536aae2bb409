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


#include "bookrec/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bookrec {

namespace {

constexpr std::array<std::string_view, 9> kMetricNames = {
    "Acc", "Rec", "Pr", "Pr3", "Pr10", "F", "Rt3", "Rt10", "r_s",
};

struct TopN {
  double precision;
  double mean_rating;
};

TopN TopOf(std::span<const TestItem* const> ordered, std::size_t n) {
  std::size_t positives = 0;
  long rating_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ordered[i]->rating >= 6) ++positives;
    rating_sum += ordered[i]->rating;
  }
  const double count = static_cast<double>(n);
  return TopN{100.0 * static_cast<double>(positives) / count,
              static_cast<double>(rating_sum) / count};
}

}  // namespace

std::string_view MetricName(Metric metric) { return kMetricNames[static_cast<int>(metric)]; }

std::optional<Metric> ParseMetric(std::string_view name) {
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    if (kMetricNames[i] == name) return kAllMetrics[i];
  }
  return std::nullopt;
}

std::optional<double> MetricsReport::Get(Metric metric) const {
  switch (metric) {
    case Metric::kAcc: return acc;
    case Metric::kRec: return rec;
    case Metric::kPr: return pr;
    case Metric::kPr3: return pr3;
    case Metric::kPr10: return pr10;
    case Metric::kF: return f;
    case Metric::kRt3: return rt3;
    case Metric::kRt10: return rt10;
    case Metric::kRs: return r_s;
  }
  return std::nullopt;
}

MetricsReport ComputeMetrics(std::span<const TestItem> test) {
  if (test.empty()) throw std::invalid_argument("cannot compute metrics on an empty test set");

  std::size_t true_pos = 0, false_pos = 0, false_neg = 0, correct = 0;
  for (const TestItem& item : test) {
    const bool truth = item.rating >= 6;
    const bool predicted = item.score > 0.0;
    if (truth == predicted) ++correct;
    if (truth && predicted) ++true_pos;
    if (!truth && predicted) ++false_pos;
    if (truth && !predicted) ++false_neg;
  }

  MetricsReport report;
  const double n = static_cast<double>(test.size());
  report.acc = 100.0 * static_cast<double>(correct) / n;
  if (true_pos + false_neg > 0) {
    report.rec = 100.0 * static_cast<double>(true_pos) / static_cast<double>(true_pos + false_neg);
  }
  if (true_pos + false_pos > 0) {
    report.pr = 100.0 * static_cast<double>(true_pos) / static_cast<double>(true_pos + false_pos);
  }
  if (report.pr && report.rec) {
    const double sum = *report.pr + *report.rec;
    report.f = sum > 0.0 ? 2.0 * *report.pr * *report.rec / sum : 0.0;
  }

  std::vector<const TestItem*> ordered;
  ordered.reserve(test.size());
  for (const TestItem& item : test) ordered.push_back(&item);
  std::sort(ordered.begin(), ordered.end(), [](const TestItem* a, const TestItem* b) {
    if (a->rank_key != b->rank_key) return a->rank_key > b->rank_key;
    return a->id < b->id;
  });
  if (ordered.size() >= 3) {
    const TopN top = TopOf(ordered, 3);
    report.pr3 = top.precision;
    report.rt3 = top.mean_rating;
  }
  if (ordered.size() >= 10) {
    const TopN top = TopOf(ordered, 10);
    report.pr10 = top.precision;
    report.rt10 = top.mean_rating;
  }

  std::vector<double> keys, ratings;
  keys.reserve(test.size());
  ratings.reserve(test.size());
  for (const TestItem& item : test) {
    keys.push_back(item.rank_key);
    ratings.push_back(item.rating);
  }
  report.r_s = SpearmanCorrelation(keys, ratings);
  return report;
}

std::vector<double> MidRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double rank = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

std::optional<double> SpearmanCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const std::vector<double> rx = MidRanks(x);
  const std::vector<double> ry = MidRanks(y);
  // Midranks always average to (n + 1) / 2, which is exact in binary.
  const double mean = static_cast<double>(x.size() + 1) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace bookrec
