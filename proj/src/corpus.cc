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


#include "bookrec/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bookrec/errors.h"
#include "json.hpp"

namespace bookrec {

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line, line_number);
  }
}

void AddAuthors(const std::vector<std::string>& names, Bag& bag) {
  for (const auto& name : names) {
    std::string token = NormalizeAuthor(name);
    if (!token.empty()) ++bag[token];
  }
}

}  // namespace

TokenizedBook BuildBook(const RawBookRecord& record, const StopwordList& stop) {
  TokenizedBook book;
  book.id = record.id;
  const auto& titles = record.Fillers(SlotId::kTitle);
  book.title_display = titles.empty() ? record.id : titles.front();

  Bag& title = book.bag(BagSlot::kTitle);
  for (const auto& t : titles) TokenizeInto(t, stop, title);

  Bag& authors = book.bag(BagSlot::kAuthors);
  AddAuthors(record.Fillers(SlotId::kAuthors), authors);

  Bag& words = book.bag(BagSlot::kWords);
  for (SlotId slot : {SlotId::kSynopses, SlotId::kReviews, SlotId::kComments}) {
    for (const auto& text : record.Fillers(slot)) TokenizeInto(text, stop, words);
  }

  Bag& related_titles = book.bag(BagSlot::kRelatedTitles);
  for (const auto& t : record.Fillers(SlotId::kRelatedTitles)) {
    TokenizeInto(t, stop, related_titles);
  }
  AddToBag(related_titles, title);

  Bag& related_authors = book.bag(BagSlot::kRelatedAuthors);
  AddAuthors(record.Fillers(SlotId::kRelatedAuthors), related_authors);
  AddToBag(related_authors, authors);

  Bag& subjects = book.bag(BagSlot::kSubjects);
  for (const auto& t : record.Fillers(SlotId::kSubjects)) TokenizeInto(t, stop, subjects);
  return book;
}

Catalog::Catalog(std::vector<TokenizedBook> books) : books_(std::move(books)) {
  for (std::size_t i = 0; i < books_.size(); ++i) {
    const TokenizedBook& book = books_[i];
    if (!index_.emplace(book.id, i).second) {
      throw std::invalid_argument("duplicate book id '" + book.id + "'");
    }
    auto add = [&](const std::string& key) {
      auto& postings = search_index_[key];
      if (postings.empty() || postings.back() != i) postings.push_back(i);
    };
    for (const auto& [token, count] : book.bag(BagSlot::kTitle)) add(token);
    for (const auto& [token, count] : book.bag(BagSlot::kAuthors)) {
      add(token);
      // Surname and initial halves of "f_herbert", plus any other pieces
      // the query tokenizer would split the author token into.
      std::size_t start = 0;
      while (start <= token.size()) {
        std::size_t end = token.find('_', start);
        if (end == std::string::npos) end = token.size();
        if (end > start) add(token.substr(start, end - start));
        start = end + 1;
      }
    }
  }
}

const TokenizedBook* Catalog::Find(std::string_view id) const {
  const auto pos = IndexOf(id);
  return pos ? &books_[*pos] : nullptr;
}

std::optional<std::size_t> Catalog::IndexOf(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<const TokenizedBook*> Catalog::Search(std::string_view query,
                                                  const StopwordList& stop) const {
  const Bag tokens = Tokenize(query, stop);
  std::vector<std::size_t> hits;
  bool first = true;
  for (const auto& [token, count] : tokens) {
    const auto it = search_index_.find(token);
    if (it == search_index_.end()) return {};
    if (first) {
      hits = it->second;
      first = false;
    } else {
      std::vector<std::size_t> narrowed;
      std::set_intersection(hits.begin(), hits.end(), it->second.begin(), it->second.end(),
                            std::back_inserter(narrowed));
      hits = std::move(narrowed);
    }
    if (hits.empty()) return {};
  }
  std::vector<const TokenizedBook*> out;
  if (first) {
    out.reserve(books_.size());
    for (const auto& book : books_) out.push_back(&book);
    return out;
  }
  out.reserve(hits.size());
  for (std::size_t pos : hits) out.push_back(&books_[pos]);
  return out;
}

std::string BookToJson(const TokenizedBook& book) {
  nlohmann::ordered_json bags = nlohmann::ordered_json::object();
  for (BagSlot slot : kAllBagSlots) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [token, count] : book.bag(slot)) counts[token] = count;
    bags[std::string(BagSlotName(slot))] = std::move(counts);
  }
  nlohmann::ordered_json j;
  j["id"] = book.id;
  j["title_display"] = book.title_display;
  j["bags"] = std::move(bags);
  return j.dump();
}

TokenizedBook BookFromJson(std::string_view line) {
  TokenizedBook book;
  try {
    const auto j = nlohmann::json::parse(line);
    book.id = j.at("id").get<std::string>();
    book.title_display = j.at("title_display").get<std::string>();
    for (const auto& [name, counts] : j.at("bags").items()) {
      const auto slot = ParseBagSlot(name);
      if (!slot) throw ParseError("unknown bag '" + name + "'");
      Bag& bag = book.bag(*slot);
      for (const auto& [token, count] : counts.items()) {
        const int n = count.get<int>();
        if (n <= 0 || token.empty()) {
          throw ParseError("invalid token count for '" + token + "'");
        }
        bag.emplace(token, n);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return book;
}

Catalog ParseCatalog(std::string_view text) {
  std::vector<TokenizedBook> books;
  ForEachLine(text, [&](std::string_view line, std::size_t line_number) {
    try {
      books.push_back(BookFromJson(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_number);
    }
  });
  return Catalog(std::move(books));
}

Catalog LoadCatalog(const std::filesystem::path& path) { return ParseCatalog(ReadFile(path)); }

void SaveCatalog(const Catalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& book : catalog.books()) out << BookToJson(book) << '\n';
}

void ValidateRating(int rating) {
  if (rating < 1 || rating > 10) {
    throw InvalidRating("rating must be an integer in 1..10, got " + std::to_string(rating));
  }
}

std::map<std::string, int> ParseRatings(std::string_view text) {
  std::map<std::string, int> ratings;
  ForEachLine(text, [&](std::string_view line, std::size_t line_number) {
    const std::string where = "line " + std::to_string(line_number) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_number);
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("rating")) {
      throw ParseError("expected {\"id\":...,\"rating\":...}", line_number);
    }
    const auto& value = j["rating"];
    if (!value.is_number_integer()) {
      // 7.0 is still a fraction-free number; 7.5 and "7" are not.
      if (value.is_number_float()) {
        const double d = value.get<double>();
        if (std::floor(d) != d) {
          throw InvalidRating(where + "fractional rating " + value.dump());
        }
        const int r = static_cast<int>(d);
        if (r < 1 || r > 10) throw InvalidRating(where + "rating out of range " + value.dump());
        ratings[j["id"].get<std::string>()] = r;
        return;
      }
      throw InvalidRating(where + "rating is not a number");
    }
    const auto r = value.get<long long>();
    if (r < 1 || r > 10) throw InvalidRating(where + "rating out of range " + value.dump());
    ratings[j["id"].get<std::string>()] = static_cast<int>(r);
  });
  return ratings;
}

std::map<std::string, int> LoadRatings(const std::filesystem::path& path) {
  return ParseRatings(ReadFile(path));
}

std::string RatingToJson(std::string_view id, int rating) {
  nlohmann::ordered_json j;
  j["id"] = std::string(id);
  j["rating"] = rating;
  return j.dump();
}

}  // namespace bookrec
