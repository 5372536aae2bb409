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
#include <iomanip>
#include <sstream>

#include "bookrec/errors.h"

namespace bookrec {

namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

double InBase(double natural, double log_base) {
  return log_base == std::numbers::e ? natural : natural / std::log(log_base);
}

std::string FormatNumber(double value, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << value;
  return out.str();
}

// Left-aligned columns padded to the widest cell; the last `right_aligned`
// columns are right-aligned.
std::string Table(const std::vector<std::vector<std::string>>& rows, std::size_t right_aligned) {
  if (rows.empty()) return {};
  const std::size_t columns = rows.front().size();
  std::vector<std::size_t> width(columns, 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < columns; ++c) {
      if (c > 0) out << "  ";
      const bool right = c + right_aligned >= columns;
      out << (right ? std::right : std::left) << std::setw(static_cast<int>(width[c]))
          << rows[r][c];
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < columns; ++c) total += width[c] + (c > 0 ? 2 : 0);
      out << std::string(total, '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace

bool RanksBefore(const RankedEntry& a, const RankedEntry& b) {
  const double ka = a.score.RankKey();
  const double kb = b.score.RankKey();
  if (ka != kb) return ka > kb;
  return a.id < b.id;
}

RankedList Rank(const Profile& profile, const Catalog& catalog,
                const std::set<std::string, std::less<>>& exclude) {
  RankedList list;
  list.reserve(catalog.size());
  for (const TokenizedBook& book : catalog.books()) {
    if (exclude.contains(book.id)) continue;
    list.push_back(RankedEntry{book.id, LogOdds(profile, book)});
  }
  std::sort(list.begin(), list.end(), RanksBefore);
  return list;
}

RankedList RecommendTop(const Profile& profile, const Catalog& catalog,
                        const std::set<std::string, std::less<>>& exclude, std::size_t n) {
  RankedList list = Rank(profile, catalog, exclude);
  if (list.size() > n) list.resize(n);
  return list;
}

RankedList RecommendBottom(const Profile& profile, const Catalog& catalog,
                           const std::set<std::string, std::less<>>& exclude, std::size_t n) {
  RankedList list = Rank(profile, catalog, exclude);
  if (list.size() > n) list.erase(list.begin(), list.end() - static_cast<std::ptrdiff_t>(n));
  return list;
}

RecommendationExplanation ExplainRecommendation(const Profile& profile,
                                                const TokenizedBook& book,
                                                std::optional<std::size_t> k) {
  RecommendationExplanation explanation;
  explanation.book_id = book.id;
  explanation.title = book.title_display;
  explanation.prior_log_odds = profile.PriorLogOdds();
  explanation.score = LogOdds(profile, book);
  for (BagSlot slot : profile.mask.Slots()) {
    const SlotModel& model = profile.slot(slot);
    for (const auto& [token, count] : book.bag(slot)) {
      const TokenParams* params = model.Find(token);
      if (params == nullptr) continue;
      const double strength = params->Strength();
      explanation.rows.push_back(ExplanationRow{slot, token, strength, count, count * strength});
    }
  }
  auto by_influence = [](const ExplanationRow& a, const ExplanationRow& b) {
    if (a.influence != b.influence) return a.influence > b.influence;
    if (a.slot != b.slot) return a.slot < b.slot;
    return a.token < b.token;
  };
  auto& rows = explanation.rows;
  if (k && *k < rows.size()) {
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(*k), rows.end(),
                      by_influence);
    rows.resize(*k);
  } else {
    std::sort(rows.begin(), rows.end(), by_influence);
  }
  return explanation;
}

FeatureExplanation ExplainFeature(const Profile& profile, std::span<const RatedExample> training,
                                  BagSlot slot, const std::string& token, std::size_t k) {
  FeatureExplanation explanation;
  explanation.slot = slot;
  explanation.token = token;
  explanation.strength = Strength(profile, slot, token);
  for (const RatedExample& example : training) {
    const Bag& bag = example.book.bag(slot);
    const auto it = bag.find(token);
    if (it == bag.end() || it->second <= 0) continue;
    const double weight = example.weights().positive;
    explanation.rows.push_back(FeatureRow{example.book.id, example.book.title_display,
                                          example.rating, it->second, weight * it->second});
  }
  std::sort(explanation.rows.begin(), explanation.rows.end(),
            [](const FeatureRow& a, const FeatureRow& b) {
              if (a.contribution != b.contribution) return a.contribution > b.contribution;
              if (a.title != b.title) return a.title < b.title;
              return a.id < b.id;
            });
  if (explanation.rows.size() > k) explanation.rows.resize(k);
  return explanation;
}

std::vector<ProfileFeature> TopFeatures(const Profile& profile, std::size_t k) {
  std::vector<ProfileFeature> features;
  for (BagSlot slot : profile.mask.Slots()) {
    for (const auto& [token, params] : profile.slot(slot).tokens) {
      features.push_back(ProfileFeature{slot, token, params.Strength()});
    }
  }
  auto by_strength = [](const ProfileFeature& a, const ProfileFeature& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    if (a.slot != b.slot) return a.slot < b.slot;
    return a.token < b.token;
  };
  const std::size_t keep = std::min(k, features.size());
  std::partial_sort(features.begin(), features.begin() + static_cast<std::ptrdiff_t>(keep),
                    features.end(), by_strength);
  features.resize(keep);
  return features;
}

std::string FormatRankedList(const RankedList& list, const Catalog& catalog,
                             std::size_t first_rank) {
  std::vector<std::vector<std::string>> rows = {{"Rank", "Id", "Title", "Score"}};
  std::size_t rank = first_rank;
  for (const RankedEntry& entry : list) {
    const TokenizedBook* book = catalog.Find(entry.id);
    rows.push_back({std::to_string(rank++), entry.id, book ? book->title_display : "",
                    FormatNumber(entry.score.log_odds, 2)});
  }
  return Table(rows, 1);
}

std::string FormatProfileFeatures(std::span<const ProfileFeature> features, double log_base) {
  std::vector<std::vector<std::string>> rows = {{"Slot", "Word", "Strength"}};
  for (const ProfileFeature& f : features) {
    rows.push_back({Upper(BagSlotName(f.slot)), Upper(f.token),
                    FormatNumber(InBase(f.strength, log_base), 2)});
  }
  return Table(rows, 1);
}

std::string FormatExplanation(const RecommendationExplanation& explanation, double log_base) {
  std::vector<std::vector<std::string>> rows = {{"Slot", "Word", "Strength"}};
  for (const ExplanationRow& row : explanation.rows) {
    rows.push_back({Upper(BagSlotName(row.slot)), Upper(row.token),
                    FormatNumber(InBase(row.influence, log_base), 2)});
  }
  std::string out = explanation.title + " recommended because:\n\n";
  if (explanation.rows.empty()) return out + "(no known features)\n";
  return out + Table(rows, 1);
}

std::string FormatFeatureExplanation(const FeatureExplanation& explanation) {
  std::vector<std::vector<std::string>> rows = {{"Title", "Rating", "Count"}};
  for (const FeatureRow& row : explanation.rows) {
    rows.push_back({row.title, std::to_string(row.rating), std::to_string(row.count)});
  }
  const char* sign = explanation.strength > 0 ? "positive" : "negative";
  std::string out = "The word " + Upper(explanation.token) + " (" +
                    Upper(BagSlotName(explanation.slot)) + ") is " + sign +
                    " due to your ratings:\n\n";
  if (explanation.rows.empty()) return out + "(no rated books contain it)\n";
  return out + Table(rows, 2);
}

}  // namespace bookrec
