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


#include "bookrec/tokenizer.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bookrec {

namespace {

bool IsTokenChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c >= 0x80;
}

char Lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string LowerCopy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = Lower(c);
  return out;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Trailing (and leading) punctuation is not part of a name word: "M." -> "M".
std::string_view StripPunctuation(std::string_view word) {
  while (!word.empty() && !IsTokenChar(static_cast<unsigned char>(word.back()))) {
    word.remove_suffix(1);
  }
  while (!word.empty() && !IsTokenChar(static_cast<unsigned char>(word.front()))) {
    word.remove_prefix(1);
  }
  return word;
}

// First letter of a word, keeping a multi-byte UTF-8 sequence intact.
std::string FirstCharacter(std::string_view word) {
  std::size_t len = 1;
  while (len < word.size() && (static_cast<unsigned char>(word[len]) & 0xC0) == 0x80) ++len;
  return LowerCopy(word.substr(0, len));
}

constexpr const char* kDefaultStopwords[] = {
    "a",    "about", "after", "all",   "also", "an",    "and",  "any",   "are",
    "as",   "at",    "be",    "been",  "but",  "by",    "can",  "for",   "from",
    "had",  "has",   "have",  "he",    "her",  "his",   "how",  "i",     "if",
    "in",   "into",  "is",    "it",    "its",  "more",  "not",  "of",    "on",
    "or",   "she",   "so",    "than",  "that", "the",   "their", "there", "they",
    "this", "to",    "was",   "we",    "were", "what",  "which", "who",  "will",
    "with", "would", "you",
};

}  // namespace

std::size_t BagSize(const Bag& bag) {
  std::size_t total = 0;
  for (const auto& [token, count] : bag) total += static_cast<std::size_t>(count);
  return total;
}

void AddToBag(Bag& into, const Bag& from) {
  for (const auto& [token, count] : from) into[token] += count;
}

StopwordList::StopwordList(std::set<std::string, std::less<>> words) {
  for (const auto& w : words) words_.insert(LowerCopy(w));
}

const StopwordList& StopwordList::Default() {
  static const StopwordList kList = [] {
    std::set<std::string, std::less<>> words;
    for (const char* w : kDefaultStopwords) words.insert(w);
    return StopwordList(std::move(words));
  }();
  return kList;
}

StopwordList StopwordList::Parse(std::string_view text) {
  std::set<std::string, std::less<>> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    while (!view.empty() && IsSpace(view.front())) view.remove_prefix(1);
    while (!view.empty() && IsSpace(view.back())) view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    words.insert(LowerCopy(view));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

void TokenizeInto(std::string_view text, const StopwordList& stop, Bag& bag) {
  std::string token;
  auto flush = [&] {
    if (!token.empty() && !stop.Contains(token)) ++bag[token];
    token.clear();
  };
  for (char c : text) {
    if (IsTokenChar(static_cast<unsigned char>(c))) {
      token += Lower(c);
    } else {
      flush();
    }
  }
  flush();
}

Bag Tokenize(std::string_view text, const StopwordList& stop) {
  Bag bag;
  TokenizeInto(text, stop, bag);
  return bag;
}

std::string NormalizeAuthor(std::string_view name) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < name.size()) {
    while (i < name.size() && IsSpace(name[i])) ++i;
    const std::size_t start = i;
    while (i < name.size() && !IsSpace(name[i])) ++i;
    const std::string_view word = StripPunctuation(name.substr(start, i - start));
    if (!word.empty()) words.push_back(word);
  }
  if (words.empty()) return {};

  std::string last = LowerCopy(words.back());
  // Inner whitespace never survives, but inner punctuation might ("O'Brien").
  if (words.size() == 1) return last;
  return FirstCharacter(words.front()) + "_" + last;
}

}  // namespace bookrec
