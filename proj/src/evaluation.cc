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


#include "bookrec/evaluation.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bookrec/random.h"

namespace bookrec {

namespace {

nlohmann::ordered_json OptionalJson(const std::optional<double>& value) {
  return value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json MetricsJson(const MetricsReport& report) {
  nlohmann::ordered_json j;
  for (Metric metric : kAllMetrics) {
    j[std::string(MetricName(metric))] = OptionalJson(report.Get(metric));
  }
  return j;
}

std::vector<MetricsReport> EvaluateFold(std::span<const RatedExample> dataset,
                                        std::span<const TrainingSize> points,
                                        const FoldPlan& plan, int fold,
                                        const EvaluationOptions& options) {
  std::vector<std::size_t> order = plan.TrainIndices(fold);
  Rng rng(MixSeed(plan.seed, static_cast<std::uint64_t>(fold)));
  rng.Shuffle(order);
  const std::vector<std::size_t> test_indices = plan.TestIndices(fold);

  std::vector<MetricsReport> reports;
  reports.reserve(points.size());
  std::vector<RatedExample> training;
  for (const TrainingSize& point : points) {
    const std::size_t n = point.n.value_or(order.size());
    // Nested subsets: extend the previous prefix when sizes grow.
    if (n < training.size()) training.clear();
    for (std::size_t i = training.size(); i < n; ++i) training.push_back(dataset[order[i]]);

    const Profile profile = Train(training, options.lambda, options.mask);
    std::vector<TestItem> test;
    test.reserve(test_indices.size());
    for (std::size_t idx : test_indices) {
      const RatedExample& example = dataset[idx];
      const Score score = LogOdds(profile, example.book);
      test.emplace_back(example.book.id, example.rating, score.log_odds, score.RankKey());
    }
    reports.push_back(ComputeMetrics(test));
  }
  return reports;
}

std::string Cell(const std::optional<double>& value, int precision) {
  if (!value) return "-";
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << *value;
  return out.str();
}

}  // namespace

std::vector<std::size_t> FoldPlan::TestIndices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::TrainIndices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

std::size_t FoldPlan::FoldSize(int fold) const {
  return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), fold));
}

FoldPlan KFoldSplit(std::span<const std::string> ids, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k-fold split needs k >= 2");
  if (static_cast<std::size_t>(k) > ids.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(ids.size()) + " examples");
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.ids.assign(ids.begin(), ids.end());
  plan.assignment.assign(ids.size(), 0);

  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  for (std::size_t i = 0; i < order.size(); ++i) {
    plan.assignment[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
  }
  return plan;
}

std::vector<TrainingSize> ParseTrainingSizes(std::string_view text) {
  std::vector<TrainingSize> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(start, end - start));
    std::erase(item, ' ');
    start = end + 1;
    if (item.empty()) continue;
    if (item == "full") {
      sizes.push_back(TrainingSize{});
      continue;
    }
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != item.size() || value == 0) {
      throw std::invalid_argument("invalid training size '" + item + "'");
    }
    sizes.push_back(TrainingSize{static_cast<std::size_t>(value)});
  }
  if (sizes.empty()) throw std::invalid_argument("no training sizes given");
  return sizes;
}

std::vector<TrainingSize> DefaultTrainingSizes() {
  return {TrainingSize{5}, TrainingSize{10}, TrainingSize{20},
          TrainingSize{40}, TrainingSize{100}, TrainingSize{}};
}

std::vector<TrainingSize> ExtendedTrainingSizes() {
  return {TrainingSize{70}, TrainingSize{150}, TrainingSize{200}, TrainingSize{300},
          TrainingSize{450}};
}

MetricSummary Summarize(std::span<const MetricsReport> folds, Metric metric) {
  std::vector<double> values;
  for (const MetricsReport& report : folds) {
    if (const auto v = report.Get(metric)) values.push_back(*v);
  }
  MetricSummary summary;
  summary.folds = values.size();
  if (values.empty()) return summary;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  summary.mean = mean;
  if (values.size() >= 2) {
    double squares = 0.0;
    for (double v : values) squares += (v - mean) * (v - mean);
    const double n = static_cast<double>(values.size());
    summary.std_error = std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
  }
  return summary;
}

std::vector<CurvePoint> LearningCurve(std::span<const RatedExample> dataset,
                                      std::span<const TrainingSize> points,
                                      const FoldPlan& plan, const EvaluationOptions& options) {
  if (dataset.size() != plan.ids.size()) {
    throw std::invalid_argument("fold plan does not match the dataset");
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].book.id != plan.ids[i]) {
      throw std::invalid_argument("fold plan does not match the dataset order");
    }
  }
  if (points.empty()) throw std::invalid_argument("no learning-curve points");

  std::size_t min_train = dataset.size();
  for (int fold = 0; fold < plan.k; ++fold) {
    min_train = std::min(min_train, dataset.size() - plan.FoldSize(fold));
  }
  for (const TrainingSize& point : points) {
    if (point.n && *point.n > min_train) {
      throw std::invalid_argument("training size " + std::to_string(*point.n) +
                                  " exceeds the smallest training split (" +
                                  std::to_string(min_train) + ")");
    }
  }

  std::vector<std::vector<MetricsReport>> per_fold(static_cast<std::size_t>(plan.k));
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min(threads, static_cast<unsigned>(plan.k)));
  if (threads == 1) {
    for (int fold = 0; fold < plan.k; ++fold) {
      per_fold[static_cast<std::size_t>(fold)] =
          EvaluateFold(dataset, points, plan, fold, options);
    }
  } else {
    // Folds are handed out in batches of `threads`; each result lands in its
    // own slot so completion order does not matter.
    for (int first = 0; first < plan.k; first += static_cast<int>(threads)) {
      std::vector<std::future<std::vector<MetricsReport>>> pending;
      const int last = std::min(plan.k, first + static_cast<int>(threads));
      for (int fold = first; fold < last; ++fold) {
        pending.push_back(std::async(std::launch::async, [&, fold] {
          return EvaluateFold(dataset, points, plan, fold, options);
        }));
      }
      for (int fold = first; fold < last; ++fold) {
        per_fold[static_cast<std::size_t>(fold)] = pending[static_cast<std::size_t>(fold - first)].get();
      }
    }
  }

  std::vector<CurvePoint> curve;
  curve.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    CurvePoint point;
    point.label = points[p].Label();
    point.n = points[p].n.value_or(min_train);
    for (const auto& fold_reports : per_fold) point.folds.push_back(fold_reports[p]);
    for (Metric metric : kAllMetrics) {
      point.summary[static_cast<std::size_t>(metric)] = Summarize(point.folds, metric);
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

AblationReport AblationRun(std::span<const RatedExample> dataset,
                           std::span<const TrainingSize> points, const FoldPlan& plan,
                           const EvaluationOptions& options, SlotMask removed) {
  AblationReport report;
  report.full_mask = options.mask;
  report.ablated_mask = options.mask.Minus(removed);
  report.full = LearningCurve(dataset, points, plan, options);
  EvaluationOptions ablated_options = options;
  ablated_options.mask = report.ablated_mask;
  report.ablated = LearningCurve(dataset, points, plan, ablated_options);

  for (std::size_t p = 0; p < points.size(); ++p) {
    const CurvePoint& full = report.full[p];
    const CurvePoint& ablated = report.ablated[p];
    AblationPoint point;
    point.label = full.label;
    point.n = full.n;
    for (Metric metric : kAllMetrics) {
      MetricComparison comparison;
      comparison.metric = metric;
      comparison.full_mean = full.Summary(metric).mean;
      comparison.ablated_mean = ablated.Summary(metric).mean;
      std::vector<double> a, b;
      for (std::size_t f = 0; f < full.folds.size(); ++f) {
        const auto x = full.folds[f].Get(metric);
        const auto y = ablated.folds[f].Get(metric);
        if (x && y) {
          a.push_back(*x);
          b.push_back(*y);
        }
      }
      comparison.pairs = a.size();
      if (a.size() >= 2) comparison.test = PairedTTestOneTailed(a, b);
      point.metrics.push_back(comparison);
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

nlohmann::ordered_json CurveToJson(std::span<const CurvePoint> curve) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CurvePoint& point : curve) {
    nlohmann::ordered_json row;
    row["N"] = point.n;
    row["label"] = point.label;
    for (Metric metric : kAllMetrics) {
      row[std::string(MetricName(metric))] = OptionalJson(point.Summary(metric).mean);
    }
    nlohmann::ordered_json defined;
    for (Metric metric : kAllMetrics) {
      defined[std::string(MetricName(metric))] = point.Summary(metric).folds;
    }
    row["defined_folds"] = std::move(defined);
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const MetricsReport& report : point.folds) folds.push_back(MetricsJson(report));
    row["folds"] = std::move(folds);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json AblationToJson(const AblationReport& report) {
  nlohmann::ordered_json j;
  j["full_mask"] = report.full_mask.Names();
  j["ablated_mask"] = report.ablated_mask.Names();
  j["ablated_curve"] = CurveToJson(report.ablated);
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const AblationPoint& point : report.points) {
    nlohmann::ordered_json p;
    p["N"] = point.n;
    p["label"] = point.label;
    nlohmann::ordered_json metrics;
    for (const MetricComparison& c : point.metrics) {
      nlohmann::ordered_json m;
      m["full"] = OptionalJson(c.full_mean);
      m["ablated"] = OptionalJson(c.ablated_mean);
      m["pairs"] = c.pairs;
      if (c.test) {
        m["mean_difference"] = c.test->mean_difference;
        // JSON has no infinities; a degenerate test carries its sign in t_sign.
        m["t"] = std::isfinite(c.test->t) ? nlohmann::ordered_json(c.test->t)
                                          : nlohmann::ordered_json(nullptr);
        if (!std::isfinite(c.test->t)) m["t_sign"] = c.test->t > 0 ? 1 : -1;
        m["df"] = c.test->degrees_of_freedom;
        m["critical_value"] = c.test->critical_value;
        m["significant"] = c.test->significant;
        m["degenerate"] = c.test->degenerate;
      } else {
        m["significant"] = false;
      }
      metrics[std::string(MetricName(c.metric))] = std::move(m);
    }
    p["metrics"] = std::move(metrics);
    points.push_back(std::move(p));
  }
  j["comparisons"] = std::move(points);
  return j;
}

nlohmann::ordered_json EvaluationReportJson(const FoldPlan& plan, const EvaluationOptions& options,
                                            std::span<const CurvePoint> curve,
                                            const AblationReport* ablation) {
  nlohmann::ordered_json j;
  j["format"] = "bookrec-evaluation";
  j["version"] = 1;
  j["examples"] = plan.ids.size();
  j["folds"] = plan.k;
  j["seed"] = plan.seed;
  j["lambda"] = options.lambda;
  j["mask"] = options.mask.Names();
  j["note"] = "fold means skip folds where a metric is undefined; see defined_folds";
  j["curve"] = CurveToJson(curve);
  if (ablation != nullptr) j["ablation"] = AblationToJson(*ablation);
  return j;
}

std::string CurveCsv(std::span<const CurvePoint> curve, std::string_view system, bool header) {
  std::ostringstream out;
  if (header) {
    out << "system,N";
    for (Metric metric : kAllMetrics) out << ',' << MetricName(metric);
    out << '\n';
  }
  out << std::setprecision(10);
  for (const CurvePoint& point : curve) {
    out << system << ',' << point.n;
    for (Metric metric : kAllMetrics) {
      out << ',';
      if (const auto mean = point.Summary(metric).mean) out << *mean;
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatCurveTable(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out << std::setw(6) << "N";
  for (Metric metric : kAllMetrics) out << std::setw(8) << MetricName(metric);
  out << '\n';
  for (const CurvePoint& point : curve) {
    out << std::setw(6) << point.n;
    for (Metric metric : kAllMetrics) {
      const int precision = (metric == Metric::kRt3 || metric == Metric::kRt10 ||
                             metric == Metric::kRs)
                                ? 2
                                : 1;
      out << std::setw(8) << Cell(point.Summary(metric).mean, precision);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bookrec
