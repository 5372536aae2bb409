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


#ifndef BOOKREC_CORPUS_H_
#define BOOKREC_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bookrec/extraction.h"
#include "bookrec/slot.h"
#include "bookrec/tokenizer.h"

namespace bookrec {

// A book as a vector of bags, one per learner slot.
struct TokenizedBook {
  std::string id;
  std::string title_display;
  std::array<Bag, kNumBagSlots> bags;

  const Bag& bag(BagSlot slot) const { return bags[BagIndex(slot)]; }
  Bag& bag(BagSlot slot) { return bags[BagIndex(slot)]; }
  std::size_t Length(BagSlot slot) const { return BagSize(bag(slot)); }

  friend bool operator==(const TokenizedBook&, const TokenizedBook&) = default;
};

// Builds the six learner bags from an extracted record. Synopses, reviews
// and comments are pooled into `words`; a book counts as related to itself,
// so its own title tokens and author tokens are added to the related-*
// bags. Stopwords are never removed from author bags.
TokenizedBook BuildBook(const RawBookRecord& record, const StopwordList& stop);

// Immutable, id-indexed list of books with a title/author search index.
class Catalog {
 public:
  Catalog() = default;
  // Throws std::invalid_argument on a duplicate id.
  explicit Catalog(std::vector<TokenizedBook> books);

  const std::vector<TokenizedBook>& books() const { return books_; }
  std::size_t size() const { return books_.size(); }
  const TokenizedBook* Find(std::string_view id) const;
  std::optional<std::size_t> IndexOf(std::string_view id) const;

  // Books whose title or author bag contains every query token, in catalog
  // order. A query token matches an author token exactly or by surname
  // ("herbert" matches "f_herbert"). Stopwords are dropped from the query.
  std::vector<const TokenizedBook*> Search(
      std::string_view query, const StopwordList& stop = StopwordList()) const;

 private:
  std::vector<TokenizedBook> books_;
  std::unordered_map<std::string, std::size_t> index_;
  // token -> ascending catalog positions
  std::unordered_map<std::string, std::vector<std::size_t>> search_index_;
};

// Catalog files are JSON Lines, one book per line:
//   {"id":"...","title_display":"...","bags":{"title":{"tok":1,...},...}}
// Every slot is written, tokens sorted, so serialization is canonical.
std::string BookToJson(const TokenizedBook& book);
TokenizedBook BookFromJson(std::string_view line);

Catalog ParseCatalog(std::string_view text);
Catalog LoadCatalog(const std::filesystem::path& path);
void SaveCatalog(const Catalog& catalog, const std::filesystem::path& path);

// Ratings files are JSON Lines `{"id":"...","rating":7}`. A later line for
// the same id replaces the earlier one. Ratings must be integers in 1..10;
// anything else raises InvalidRating (with the line number in the message).
std::map<std::string, int> ParseRatings(std::string_view text);
std::map<std::string, int> LoadRatings(const std::filesystem::path& path);
std::string RatingToJson(std::string_view id, int rating);

// Throws InvalidRating unless 1 <= rating <= 10.
void ValidateRating(int rating);

}  // namespace bookrec

#endif  // BOOKREC_CORPUS_H_
