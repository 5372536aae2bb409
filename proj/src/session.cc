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

#include <fstream>
#include <set>
#include <sstream>

#include "bookrec/errors.h"
#include "bookrec/profile_io.h"
#include "json.hpp"

namespace bookrec {

namespace {

constexpr char kRatingsLog[] = "ratings.log";
constexpr char kSnapshotFile[] = "profile.json";

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string_view ApiErrorCodeName(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kNotFound: return "not_found";
    case ApiErrorCode::kInvalidRating: return "invalid_rating";
    case ApiErrorCode::kUntrained: return "untrained";
    case ApiErrorCode::kBadRequest: return "bad_request";
  }
  return "bad_request";
}

Session::Session(std::shared_ptr<const Catalog> catalog, SessionConfig config)
    : catalog_(std::move(catalog)), config_(std::move(config)) {
  if (!catalog_) throw std::invalid_argument("session needs a catalog");
  if (config_.data_dir) {
    std::filesystem::create_directories(*config_.data_dir);
    LoadState();
  }
}

void Session::LoadState() {
  const auto log_path = *config_.data_dir / kRatingsLog;
  if (std::filesystem::exists(log_path)) {
    for (const auto& [id, rating] : ParseRatings(ReadFile(log_path))) {
      // Ratings of books no longer in the catalog are dropped.
      if (catalog_->Find(id) != nullptr) ratings_[id] = rating;
    }
  }

  const auto snapshot_path = *config_.data_dir / kSnapshotFile;
  if (!std::filesystem::exists(snapshot_path)) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(snapshot_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("corrupt profile snapshot: " + std::string(e.what()));
  }
  auto snapshot = std::make_shared<ProfileSnapshot>();
  snapshot->generation = j.at("generation").get<std::uint64_t>();
  snapshot->profile = ProfileFromJson(j.at("profile"));
  for (const auto& entry : j.at("training")) {
    const std::string id = entry.at("id").get<std::string>();
    const TokenizedBook* book = catalog_->Find(id);
    if (book == nullptr) {
      throw ParseError("profile snapshot references unknown book '" + id + "'");
    }
    snapshot->training.push_back(RatedExample{*book, entry.at("rating").get<int>()});
  }
  snapshot_ = std::move(snapshot);
}

void Session::AppendRatingLog(const std::string& id, int rating) {
  if (!config_.data_dir) return;
  std::ofstream out(*config_.data_dir / kRatingsLog, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot append to the ratings log");
  out << RatingToJson(id, rating) << '\n';
  out.flush();
}

void Session::WriteSnapshot(const ProfileSnapshot& snapshot) const {
  if (!config_.data_dir) return;
  nlohmann::ordered_json j;
  j["generation"] = snapshot.generation;
  j["profile"] = ProfileToJson(snapshot.profile);
  nlohmann::ordered_json training = nlohmann::ordered_json::array();
  for (const RatedExample& example : snapshot.training) {
    training.push_back({{"id", example.book.id}, {"rating", example.rating}});
  }
  j["training"] = std::move(training);

  const auto path = *config_.data_dir / kSnapshotFile;
  const auto tmp = *config_.data_dir / (std::string(kSnapshotFile) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write the profile snapshot");
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::size_t Session::Rate(const std::string& id, int rating) {
  if (catalog_->Find(id) == nullptr) {
    throw ApiError(ApiErrorCode::kNotFound, "no book with id '" + id + "'");
  }
  if (rating < 1 || rating > 10) {
    throw ApiError(ApiErrorCode::kInvalidRating,
                   "rating must be an integer in 1..10, got " + std::to_string(rating));
  }
  std::lock_guard lock(ratings_mutex_);
  AppendRatingLog(id, rating);
  ratings_[id] = rating;
  return ratings_.size();
}

std::map<std::string, int> Session::Ratings() const {
  std::lock_guard lock(ratings_mutex_);
  return ratings_;
}

std::size_t Session::RatingCount() const {
  std::lock_guard lock(ratings_mutex_);
  return ratings_.size();
}

std::uint64_t Session::Train() {
  std::lock_guard train_lock(train_mutex_);
  const std::map<std::string, int> ratings = Ratings();
  if (ratings.empty()) {
    throw ApiError(ApiErrorCode::kUntrained, "rate at least one book before training");
  }
  auto snapshot = std::make_shared<ProfileSnapshot>();
  snapshot->training.reserve(ratings.size());
  for (const auto& [id, rating] : ratings) {
    snapshot->training.push_back(RatedExample{*catalog_->Find(id), rating});
  }
  snapshot->profile = bookrec::Train(snapshot->training, config_.lambda, config_.mask);
  snapshot->generation = generation() + 1;
  WriteSnapshot(*snapshot);
  {
    std::unique_lock lock(snapshot_mutex_);
    snapshot_ = snapshot;
  }
  return snapshot->generation;
}

std::shared_ptr<const ProfileSnapshot> Session::Current() const {
  std::shared_lock lock(snapshot_mutex_);
  return snapshot_;
}

std::shared_ptr<const ProfileSnapshot> Session::RequireCurrent() const {
  auto snapshot = Current();
  if (!snapshot) {
    throw ApiError(ApiErrorCode::kUntrained, "no profile yet; rate some books and train");
  }
  return snapshot;
}

std::uint64_t Session::generation() const {
  const auto snapshot = Current();
  return snapshot ? snapshot->generation : 0;
}

Session::Recommendations Session::Recommend(std::size_t n, bool bottom) const {
  const auto snapshot = RequireCurrent();
  std::set<std::string, std::less<>> rated;
  for (const auto& [id, rating] : Ratings()) rated.insert(id);
  Recommendations out;
  out.generation = snapshot->generation;
  out.entries = bottom ? RecommendBottom(snapshot->profile, *catalog_, rated, n)
                       : RecommendTop(snapshot->profile, *catalog_, rated, n);
  return out;
}

Session::Explanation Session::Explain(const std::string& id,
                                      std::optional<std::size_t> k) const {
  const auto snapshot = RequireCurrent();
  const TokenizedBook* book = catalog_->Find(id);
  if (book == nullptr) throw ApiError(ApiErrorCode::kNotFound, "no book with id '" + id + "'");
  return Explanation{snapshot->generation, ExplainRecommendation(snapshot->profile, *book, k)};
}

Session::FeatureProvenance Session::ExplainFeature(BagSlot slot, const std::string& token,
                                                   std::size_t k) const {
  const auto snapshot = RequireCurrent();
  try {
    return FeatureProvenance{
        snapshot->generation,
        bookrec::ExplainFeature(snapshot->profile, snapshot->training, slot, token, k)};
  } catch (const OutOfVocabulary& e) {
    throw ApiError(ApiErrorCode::kNotFound, e.what());
  }
}

}  // namespace bookrec
