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


// Command-line front end: extraction, catalog building, training,
// recommending, evaluation and the HTTP service.

#include <cmath>
#include <csignal>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bookrec/corpus.h"
#include "bookrec/errors.h"
#include "bookrec/evaluation.h"
#include "bookrec/extraction.h"
#include "bookrec/http_service.h"
#include "bookrec/learner.h"
#include "bookrec/profile_io.h"
#include "bookrec/recommender.h"
#include "bookrec/session.h"
#include "bookrec/synthetic.h"

namespace {

using namespace bookrec;

StopwordList LoadStopwords(const std::string& path) {
  return path.empty() ? StopwordList::Default() : StopwordList::Load(path);
}

std::vector<RawBookRecord> ExtractAll(const std::string& rules_path, const std::string& docs_path) {
  const ExtractionRuleSet rules = LoadRuleConfig(rules_path);
  std::vector<RawBookRecord> records;
  for (const Document& doc : LoadDocuments(docs_path)) {
    records.push_back(ExtractRecord(doc.text, doc.id, rules));
  }
  return records;
}

std::vector<RawBookRecord> LoadRawRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RawBookRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(RawRecordFromJson(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_number);
    }
  }
  return records;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

double ParseLogBase(const std::string& text) {
  if (text == "e") return std::numbers::e;
  const double base = std::stod(text);
  if (!(base > 1.0)) throw std::invalid_argument("log base must be greater than 1");
  return base;
}

// The rated books, in catalog order.
std::vector<RatedExample> RatedDataset(const Catalog& catalog,
                                       const std::map<std::string, int>& ratings) {
  for (const auto& [id, rating] : ratings) {
    if (catalog.Find(id) == nullptr) {
      throw std::invalid_argument("rated book '" + id + "' is not in the catalog");
    }
  }
  std::vector<RatedExample> dataset;
  for (const TokenizedBook& book : catalog.books()) {
    const auto it = ratings.find(book.id);
    if (it != ratings.end()) dataset.push_back(RatedExample{book, it->second});
  }
  return dataset;
}

HttpService* g_service = nullptr;

void HandleSignal(int) {
  if (g_service != nullptr) g_service->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content-based book recommender"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "Extract slot fillers from documents");
  std::string rules_path, docs_path, out_path;
  bool adequate_only = false;
  extract->add_option("--rules", rules_path, "Rule configuration file")->required();
  extract->add_option("--docs", docs_path, "Document directory or %%%-separated file")->required();
  extract->add_option("--out", out_path, "Output raw-record JSON Lines file")->required();
  extract->add_flag("--adequate-only", adequate_only,
                    "Keep only records with a synopsis, review or comment");

  // corpus build / search
  auto* corpus = app.add_subcommand("corpus", "Build or search a catalog");
  corpus->require_subcommand(1);
  auto* build = corpus->add_subcommand("build", "Extract, filter and tokenize into a catalog");
  std::string records_path, stopwords_path;
  auto* build_rules = build->add_option("--rules", rules_path, "Rule configuration file");
  auto* build_docs = build->add_option("--docs", docs_path, "Documents to extract");
  auto* build_records =
      build->add_option("--records", records_path, "Previously extracted raw records");
  build_rules->needs(build_docs);
  build_docs->needs(build_rules);
  build_records->excludes(build_rules)->excludes(build_docs);
  build->add_option("--stopwords", stopwords_path, "Stopword list (default: built-in)");
  build->add_option("--out", out_path, "Output catalog JSON Lines file")->required();

  auto* search = corpus->add_subcommand("search", "Search titles and authors");
  std::string catalog_path;
  std::vector<std::string> query_words;
  search->add_option("--catalog", catalog_path, "Catalog file")->required();
  search->add_option("--stopwords", stopwords_path, "Stopword list (default: built-in)");
  search->add_option("query", query_words, "Query words");

  // train
  auto* train = app.add_subcommand("train", "Learn a profile from ratings");
  std::string ratings_path, mask_text = "all";
  double lambda = 1.0;
  train->add_option("--catalog", catalog_path, "Catalog file")->required();
  train->add_option("--ratings", ratings_path, "Ratings JSON Lines file")->required();
  train->add_option("--lambda", lambda, "Additive smoothing")->check(CLI::PositiveNumber);
  train->add_option("--mask", mask_text, "Slots to learn from, comma separated");
  train->add_option("--out", out_path, "Output profile file")->required();

  // recommend
  auto* recommend = app.add_subcommand("recommend", "Rank the catalog under a profile");
  std::string profile_path, explain_id, explain_feature, log_base_text = "e";
  std::size_t top_n = 10, bottom_n = 0, rows_k = 0, top_features = 0;
  recommend->add_option("--profile", profile_path, "Profile file")->required();
  recommend->add_option("--catalog", catalog_path, "Catalog file")->required();
  recommend->add_option("--ratings", ratings_path,
                        "Ratings file: rated books are excluded and feature explanations use it");
  recommend->add_option("-n", top_n, "Number of recommendations");
  recommend->add_option("--bottom", bottom_n, "Also list the n least recommended books");
  recommend->add_option("--explain", explain_id, "Explain the score of a book");
  recommend->add_option("--explain-feature", explain_feature,
                        "Explain a feature, as <slot>:<token>");
  recommend->add_option("--k", rows_k, "Rows per explanation (default 20 / 5)");
  recommend->add_option("--top-features", top_features, "List the k strongest profile features");
  recommend->add_option("--log-base", log_base_text, "Log base for displayed strengths (e, 2, 10)");

  // eval
  auto* eval = app.add_subcommand("eval", "Cross-validated learning curves");
  int folds = 10;
  std::uint64_t seed = 1;
  std::string points_text = "5,10,20,40,100,full", ablate_text, csv_path;
  unsigned threads = 0;
  eval->add_option("--catalog", catalog_path, "Catalog file")->required();
  eval->add_option("--ratings", ratings_path, "Ratings JSON Lines file")->required();
  eval->add_option("--folds", folds, "Number of folds")->check(CLI::Range(2, 1000000));
  eval->add_option("--seed", seed, "Random seed");
  eval->add_option("--points", points_text, "Training-set sizes, e.g. 5,10,20,40,100,full");
  eval->add_option("--ablate", ablate_text, "Also run without these slots and compare");
  eval->add_option("--lambda", lambda, "Additive smoothing")->check(CLI::PositiveNumber);
  eval->add_option("--mask", mask_text, "Slots to learn from, comma separated");
  eval->add_option("--threads", threads, "Folds run concurrently (0 = all cores)");
  eval->add_option("--out", out_path, "Report JSON file")->required();
  eval->add_option("--csv", csv_path, "Learning-curve CSV file");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string host = "127.0.0.1", data_dir, web_root;
  int port = 8080;
  serve->add_option("--catalog", catalog_path, "Catalog file")->required()->envname("BOOKREC_CATALOG");
  serve->add_option("--data-dir", data_dir, "Directory for ratings and profile snapshots")
      ->envname("BOOKREC_DATA_DIR");
  serve->add_option("--host", host, "Listen address")->envname("BOOKREC_HOST");
  serve->add_option("--port", port, "Listen port")->envname("BOOKREC_PORT");
  serve->add_option("--lambda", lambda, "Additive smoothing")
      ->check(CLI::PositiveNumber)
      ->envname("BOOKREC_LAMBDA");
  serve->add_option("--mask", mask_text, "Slots to learn from")->envname("BOOKREC_MASK");
  serve->add_option("--web-root", web_root, "Directory of static UI files to serve");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic planted-preference catalog");
  PlantedCorpusOptions synth_options;
  std::string marker_slot = "words";
  synth->add_option("--books", synth_options.num_books, "Number of books");
  synth->add_option("--markers", synth_options.num_markers, "Marker vocabulary size");
  synth->add_option("--markers-per-step", synth_options.markers_per_step,
                    "Markers added per rating step above 5");
  synth->add_option("--words", synth_options.words_per_book, "Background words per book");
  synth->add_option("--background", synth_options.background_vocab, "Background vocabulary size");
  synth->add_option("--marker-slot", marker_slot, "Slot that carries the markers");
  synth->add_option("--seed", synth_options.seed, "Random seed");
  synth->add_option("--catalog", catalog_path, "Output catalog file")->required();
  synth->add_option("--ratings", ratings_path, "Output ratings file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      auto records = ExtractAll(rules_path, docs_path);
      if (adequate_only) records = FilterAdequate(std::move(records));
      auto out = OpenOutput(out_path);
      for (const auto& record : records) out << RawRecordToJson(record) << '\n';
      std::cerr << "extracted " << records.size() << " records\n";
    } else if (build->parsed()) {
      if (records_path.empty() && rules_path.empty()) {
        throw std::invalid_argument("corpus build needs --rules/--docs or --records");
      }
      const StopwordList stop = LoadStopwords(stopwords_path);
      auto records = records_path.empty() ? ExtractAll(rules_path, docs_path)
                                          : LoadRawRecords(records_path);
      const std::size_t total = records.size();
      records = FilterAdequate(std::move(records));
      std::vector<TokenizedBook> books;
      for (const auto& record : records) books.push_back(BuildBook(record, stop));
      const Catalog catalog(std::move(books));
      SaveCatalog(catalog, out_path);
      std::cerr << "kept " << catalog.size() << " of " << total
                << " records with adequate content\n";
    } else if (search->parsed()) {
      const Catalog catalog = LoadCatalog(catalog_path);
      std::string query;
      for (const auto& word : query_words) query += (query.empty() ? "" : " ") + word;
      for (const TokenizedBook* book : catalog.Search(query, LoadStopwords(stopwords_path))) {
        std::cout << book->id << '\t' << book->title_display << '\n';
      }
    } else if (train->parsed()) {
      const Catalog catalog = LoadCatalog(catalog_path);
      const auto dataset = RatedDataset(catalog, LoadRatings(ratings_path));
      const Profile profile = Train(dataset, lambda, SlotMask::Parse(mask_text));
      SaveProfile(profile, out_path);
      std::cerr << "trained on " << dataset.size() << " rated books\n";
    } else if (recommend->parsed()) {
      const Catalog catalog = LoadCatalog(catalog_path);
      const Profile profile = LoadProfile(profile_path);
      const double log_base = ParseLogBase(log_base_text);
      std::map<std::string, int> ratings;
      if (!ratings_path.empty()) ratings = LoadRatings(ratings_path);
      std::set<std::string, std::less<>> rated;
      for (const auto& [id, r] : ratings) rated.insert(id);

      if (top_features > 0) {
        std::cout << FormatProfileFeatures(TopFeatures(profile, top_features), log_base) << '\n';
      }
      if (!explain_id.empty()) {
        const TokenizedBook* book = catalog.Find(explain_id);
        if (book == nullptr) throw std::invalid_argument("no book with id '" + explain_id + "'");
        const std::size_t k = rows_k ? rows_k : kDefaultExplanationRows;
        std::cout << FormatExplanation(ExplainRecommendation(profile, *book, k), log_base) << '\n';
      }
      if (!explain_feature.empty()) {
        const auto colon = explain_feature.find(':');
        const auto slot = colon == std::string::npos
                              ? std::nullopt
                              : ParseBagSlot(explain_feature.substr(0, colon));
        if (!slot) throw std::invalid_argument("--explain-feature expects <slot>:<token>");
        if (ratings_path.empty()) {
          throw std::invalid_argument("--explain-feature needs the --ratings used for training");
        }
        const auto training = RatedDataset(catalog, ratings);
        const std::size_t k = rows_k ? rows_k : kDefaultFeatureRows;
        std::cout << FormatFeatureExplanation(
                         ExplainFeature(profile, training, *slot,
                                        explain_feature.substr(colon + 1), k))
                  << '\n';
      }
      if (explain_id.empty() && explain_feature.empty() && top_features == 0) {
        const RankedList ranked = Rank(profile, catalog, rated);
        RankedList top(ranked.begin(), ranked.begin() + std::min(top_n, ranked.size()));
        std::cout << FormatRankedList(top, catalog);
        if (bottom_n > 0) {
          const std::size_t keep = std::min(bottom_n, ranked.size());
          RankedList tail(ranked.end() - static_cast<std::ptrdiff_t>(keep), ranked.end());
          std::cout << "\nLeast recommended:\n"
                    << FormatRankedList(tail, catalog, ranked.size() - keep + 1);
        }
      }
    } else if (eval->parsed()) {
      const Catalog catalog = LoadCatalog(catalog_path);
      const auto dataset = RatedDataset(catalog, LoadRatings(ratings_path));
      std::vector<std::string> ids;
      for (const auto& example : dataset) ids.push_back(example.book.id);
      const FoldPlan plan = KFoldSplit(ids, folds, seed);
      const auto points = ParseTrainingSizes(points_text);
      EvaluationOptions options;
      options.lambda = lambda;
      options.mask = SlotMask::Parse(mask_text);
      options.threads = threads;

      std::optional<AblationReport> ablation;
      std::vector<CurvePoint> curve;
      if (!ablate_text.empty()) {
        ablation = AblationRun(dataset, points, plan, options, SlotMask::Parse(ablate_text));
        curve = ablation->full;
      } else {
        curve = LearningCurve(dataset, points, plan, options);
      }
      OpenOutput(out_path) << EvaluationReportJson(plan, options, curve,
                                                   ablation ? &*ablation : nullptr)
                                  .dump(2)
                           << '\n';
      if (!csv_path.empty()) {
        auto csv = OpenOutput(csv_path);
        csv << CurveCsv(curve, "full");
        if (ablation) csv << CurveCsv(ablation->ablated, "ablated", false);
      }
      std::cout << FormatCurveTable(curve);
      if (ablation) {
        std::cout << "\nWithout " << SlotMask::Parse(ablate_text).ToString() << ":\n"
                  << FormatCurveTable(ablation->ablated) << "\nSignificant (p < 0.05):";
        bool any = false;
        for (const auto& point : ablation->points) {
          for (const auto& c : point.metrics) {
            if (c.test && c.test->significant) {
              std::cout << ' ' << MetricName(c.metric) << "@" << point.n;
              any = true;
            }
          }
        }
        std::cout << (any ? "\n" : " none\n");
      }
    } else if (serve->parsed()) {
      auto catalog = std::make_shared<const Catalog>(LoadCatalog(catalog_path));
      SessionConfig config;
      if (!data_dir.empty()) config.data_dir = data_dir;
      config.lambda = lambda;
      config.mask = SlotMask::Parse(mask_text);
      Session session(catalog, config);
      std::optional<std::filesystem::path> root;
      if (!web_root.empty()) root = web_root;
      HttpService service(session, root);
      g_service = &service;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cerr << "serving " << catalog->size() << " books on http://" << host << ":" << port
                << "\n";
      if (!service.Listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
    } else if (synth->parsed()) {
      const auto slot = ParseBagSlot(marker_slot);
      if (!slot) throw std::invalid_argument("unknown slot '" + marker_slot + "'");
      synth_options.marker_slot = *slot;
      const auto corpus_books = MakePlantedCorpus(synth_options);
      auto catalog_out = OpenOutput(catalog_path);
      auto ratings_out = OpenOutput(ratings_path);
      for (const auto& example : corpus_books) {
        catalog_out << BookToJson(example.book) << '\n';
        ratings_out << RatingToJson(example.book.id, example.rating) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
