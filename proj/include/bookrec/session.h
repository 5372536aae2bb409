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


#ifndef BOOKREC_SESSION_H_
#define BOOKREC_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bookrec/corpus.h"
#include "bookrec/learner.h"
#include "bookrec/recommender.h"

namespace bookrec {

enum class ApiErrorCode { kNotFound, kInvalidRating, kUntrained, kBadRequest };

std::string_view ApiErrorCodeName(ApiErrorCode code);

class ApiError : public std::runtime_error {
 public:
  ApiError(ApiErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ApiErrorCode code() const { return code_; }

 private:
  ApiErrorCode code_;
};

struct SessionConfig {
  // Where the ratings log and the profile snapshot live. Without it the
  // session is in-memory only.
  std::optional<std::filesystem::path> data_dir;
  double lambda = 1.0;
  SlotMask mask = SlotMask::All();
};

// A trained profile together with the ratings it was trained from.
struct ProfileSnapshot {
  std::uint64_t generation = 0;
  Profile profile;
  std::vector<RatedExample> training;
};

// State of the single-user rate / retrain / recommend loop.
//
// Rating writes are serialized. Training runs one at a time and publishes
// its snapshot with a pointer swap, so readers keep using the previous
// profile until the new one is complete.
//
// Persistence: every rating is appended to `ratings.log` (JSON Lines, last
// entry per id wins) and each trained snapshot is written to
// `profile.json` via write-then-rename.
class Session {
 public:
  // Loads any persisted state from config.data_dir.
  Session(std::shared_ptr<const Catalog> catalog, SessionConfig config);

  const Catalog& catalog() const { return *catalog_; }
  const SessionConfig& config() const { return config_; }

  // Upserts a rating and returns the number of rated books. Does not
  // retrain. Throws ApiError (not_found, invalid_rating).
  std::size_t Rate(const std::string& id, int rating);

  std::map<std::string, int> Ratings() const;
  std::size_t RatingCount() const;

  // Trains on every stored rating and publishes the result as the next
  // generation. Throws ApiError(untrained) when nothing is rated.
  std::uint64_t Train();

  // Null before the first training.
  std::shared_ptr<const ProfileSnapshot> Current() const;
  // Throws ApiError(untrained).
  std::shared_ptr<const ProfileSnapshot> RequireCurrent() const;
  std::uint64_t generation() const;

  struct Recommendations {
    std::uint64_t generation = 0;
    RankedList entries;
  };
  // Top (or, with bottom = true, bottom) n books excluding every currently
  // rated one.
  Recommendations Recommend(std::size_t n, bool bottom = false) const;

  struct Explanation {
    std::uint64_t generation = 0;
    RecommendationExplanation explanation;
  };
  Explanation Explain(const std::string& id, std::optional<std::size_t> k) const;

  struct FeatureProvenance {
    std::uint64_t generation = 0;
    FeatureExplanation explanation;
  };
  FeatureProvenance ExplainFeature(BagSlot slot, const std::string& token,
                                   std::size_t k) const;

 private:
  void LoadState();
  void AppendRatingLog(const std::string& id, int rating);
  void WriteSnapshot(const ProfileSnapshot& snapshot) const;

  std::shared_ptr<const Catalog> catalog_;
  SessionConfig config_;

  mutable std::mutex ratings_mutex_;
  std::map<std::string, int> ratings_;

  std::mutex train_mutex_;
  mutable std::shared_mutex snapshot_mutex_;
  std::shared_ptr<const ProfileSnapshot> snapshot_;
};

}  // namespace bookrec

#endif  // BOOKREC_SESSION_H_
