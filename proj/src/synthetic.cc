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


#include "bookrec/synthetic.h"

#include <cstdio>
#include <string>

#include "bookrec/random.h"

namespace bookrec {

namespace {

std::string Name(const char* prefix, std::size_t i) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%04zu", prefix, i);
  return buffer;
}

}  // namespace

std::vector<RatedExample> MakePlantedCorpus(const PlantedCorpusOptions& options) {
  Rng rng(options.seed);
  std::vector<RatedExample> corpus;
  corpus.reserve(options.num_books);
  for (std::size_t b = 0; b < options.num_books; ++b) {
    RatedExample example;
    example.rating = rng.Between(1, 10);
    TokenizedBook& book = example.book;
    book.id = Name("b", b);

    Bag& title = book.bag(BagSlot::kTitle);
    for (std::size_t i = 0; i < options.title_words; ++i) {
      ++title[Name("t", rng.Below(options.title_vocab))];
    }
    book.title_display = "Book " + book.id;

    const std::string author = Name("a_author", rng.Below(options.num_authors));
    ++book.bag(BagSlot::kAuthors)[author];

    Bag& words = book.bag(BagSlot::kWords);
    for (std::size_t i = 0; i < options.words_per_book; ++i) {
      ++words[Name("w", rng.Below(options.background_vocab))];
    }

    ++book.bag(BagSlot::kSubjects)[Name("subject", rng.Below(options.num_subjects))];
    ++book.bag(BagSlot::kSubjects)[Name("subject", rng.Below(options.num_subjects))];

    if (options.related_slots) {
      Bag& related_titles = book.bag(BagSlot::kRelatedTitles);
      AddToBag(related_titles, title);
      for (int i = 0; i < 4; ++i) ++related_titles[Name("t", rng.Below(options.title_vocab))];
      Bag& related_authors = book.bag(BagSlot::kRelatedAuthors);
      ++related_authors[author];
      for (int i = 0; i < 2; ++i) {
        ++related_authors[Name("a_author", rng.Below(options.num_authors))];
      }
    }

    if (example.rating >= 6) {
      Bag& target = book.bag(options.marker_slot);
      const std::size_t markers =
          options.markers_per_step * static_cast<std::size_t>(example.rating - 5);
      for (std::size_t i = 0; i < markers; ++i) ++target[Name("marker", rng.Below(options.num_markers))];
    }
    corpus.push_back(std::move(example));
  }
  return corpus;
}

}  // namespace bookrec
