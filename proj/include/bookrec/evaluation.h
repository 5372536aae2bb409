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


#ifndef BOOKREC_EVALUATION_H_
#define BOOKREC_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bookrec/learner.h"
#include "bookrec/metrics.h"
#include "bookrec/slot.h"
#include "bookrec/stats.h"
#include "json.hpp"

namespace bookrec {

// Assignment of dataset positions to k folds: a seeded shuffle followed by
// round-robin dealing, so fold sizes differ by at most one.
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> ids;  // dataset order
  std::vector<int> assignment;   // assignment[i] is the fold of ids[i]

  std::vector<std::size_t> TestIndices(int fold) const;
  std::vector<std::size_t> TrainIndices(int fold) const;
  std::size_t FoldSize(int fold) const;
};

// Throws std::invalid_argument when k < 2 or k exceeds the number of ids.
FoldPlan KFoldSplit(std::span<const std::string> ids, int k, std::uint64_t seed);

// A learning-curve point: a fixed training-set size, or the whole training
// split of each fold when n is empty.
struct TrainingSize {
  std::optional<std::size_t> n;

  std::string Label() const { return n ? std::to_string(*n) : "full"; }
};

// "5,10,20,full" -> sizes. Throws std::invalid_argument.
std::vector<TrainingSize> ParseTrainingSizes(std::string_view text);

// The sizes reported in the summary table, and the extra points used only
// for plotted curves.
std::vector<TrainingSize> DefaultTrainingSizes();
std::vector<TrainingSize> ExtendedTrainingSizes();

struct EvaluationOptions {
  double lambda = 1.0;
  SlotMask mask = SlotMask::All();
  // Folds evaluated concurrently; 0 picks the hardware concurrency. Results
  // do not depend on this.
  unsigned threads = 0;
};

// Mean of one metric over the folds where it is defined.
struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> std_error;
  std::size_t folds = 0;
};

struct CurvePoint {
  std::string label;
  // Training-set size; for "full" the smallest training split over folds.
  std::size_t n = 0;
  std::vector<MetricsReport> folds;
  std::array<MetricSummary, kAllMetrics.size()> summary;

  const MetricSummary& Summary(Metric metric) const {
    return summary[static_cast<std::size_t>(metric)];
  }
};

MetricSummary Summarize(std::span<const MetricsReport> folds, Metric metric);

// For every fold, orders its training split by one seeded permutation and
// trains on the first N examples of it for each requested N, so smaller
// training sets are nested in larger ones. Each model is scored on the
// held-out fold. `dataset` must be in the plan's id order. Throws
// std::invalid_argument when a size exceeds the smallest training split.
std::vector<CurvePoint> LearningCurve(std::span<const RatedExample> dataset,
                                      std::span<const TrainingSize> points,
                                      const FoldPlan& plan, const EvaluationOptions& options);

struct MetricComparison {
  Metric metric = Metric::kAcc;
  std::optional<double> full_mean;
  std::optional<double> ablated_mean;
  std::size_t pairs = 0;  // folds where both runs define the metric
  std::optional<PairedTTestResult> test;  // full - ablated, when pairs >= 2
};

struct AblationPoint {
  std::string label;
  std::size_t n = 0;
  std::vector<MetricComparison> metrics;
};

struct AblationReport {
  SlotMask full_mask;
  SlotMask ablated_mask;
  std::vector<CurvePoint> full;
  std::vector<CurvePoint> ablated;
  std::vector<AblationPoint> points;
};

inline SlotMask RelatedSlots() {
  return SlotMask::Of({BagSlot::kRelatedAuthors, BagSlot::kRelatedTitles});
}

// Runs the same learning curve with options.mask and with `removed` taken
// out of it, then compares them fold by fold with a one-tailed paired
// t-test per point and metric (H1: the full model is better).
AblationReport AblationRun(std::span<const RatedExample> dataset,
                           std::span<const TrainingSize> points, const FoldPlan& plan,
                           const EvaluationOptions& options, SlotMask removed = RelatedSlots());

// Report documents. Absent metric values are written as null.
nlohmann::ordered_json CurveToJson(std::span<const CurvePoint> curve);
nlohmann::ordered_json AblationToJson(const AblationReport& report);
nlohmann::ordered_json EvaluationReportJson(const FoldPlan& plan, const EvaluationOptions& options,
                                            std::span<const CurvePoint> curve,
                                            const AblationReport* ablation);

// One CSV row per curve point: system,N,Acc,Rec,Pr,Pr3,Pr10,F,Rt3,Rt10,r_s.
std::string CurveCsv(std::span<const CurvePoint> curve, std::string_view system,
                     bool header = true);

// Summary table with the columns N Acc Rec Pr Pr3 Pr10 F Rt3 Rt10 r_s.
std::string FormatCurveTable(std::span<const CurvePoint> curve);

}  // namespace bookrec

#endif  // BOOKREC_EVALUATION_H_
