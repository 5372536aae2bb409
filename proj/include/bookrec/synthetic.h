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


#ifndef BOOKREC_SYNTHETIC_H_
#define BOOKREC_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bookrec/corpus.h"
#include "bookrec/learner.h"

namespace bookrec {

// Synthetic rated catalog with a planted preference: every book draws a
// uniform 1..10 rating and background text, and each positively rated book
// (r >= 6) additionally receives markers_per_step * (r - 5) tokens from a dedicated marker
// vocabulary in `marker_slot`. Deterministic in `seed`.
struct PlantedCorpusOptions {
  std::size_t num_books = 1000;
  std::size_t num_markers = 200;
  std::size_t markers_per_step = 5;
  std::size_t background_vocab = 2000;
  std::size_t words_per_book = 60;
  std::size_t title_vocab = 500;
  std::size_t title_words = 3;
  std::size_t num_authors = 300;
  std::size_t num_subjects = 40;
  BagSlot marker_slot = BagSlot::kWords;
  // When false the related-author and related-title bags stay empty.
  bool related_slots = true;
  std::uint64_t seed = 1;
};

// Books are ordered by id ("b0000", "b0001", ...).
std::vector<RatedExample> MakePlantedCorpus(const PlantedCorpusOptions& options);

}  // namespace bookrec

#endif  // BOOKREC_SYNTHETIC_H_
