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


#ifndef BOOKREC_TOKENIZER_H_
#define BOOKREC_TOKENIZER_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace bookrec {

// Multiset of canonical (lower-case) tokens, token -> multiplicity.
using Bag = std::map<std::string, int, std::less<>>;

// Sum of multiplicities.
std::size_t BagSize(const Bag& bag);
void AddToBag(Bag& into, const Bag& from);

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string, std::less<>> words);

  // The built-in list of common English function words. Identical to the
  // shipped data/stopwords.txt.
  static const StopwordList& Default();

  // One word per line; '#' comments and blank lines ignored. Words are
  // canonicalized on load.
  static StopwordList Parse(std::string_view text);
  static StopwordList Load(const std::filesystem::path& path);

  bool Contains(std::string_view token) const { return words_.contains(token); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

// Splits on every character that is not an ASCII letter or digit (bytes
// >= 0x80 are kept inside tokens so UTF-8 sequences are never cut),
// lower-cases ASCII and drops stopwords.
Bag Tokenize(std::string_view text, const StopwordList& stop);
void TokenizeInto(std::string_view text, const StopwordList& stop, Bag& bag);

// "Robert M. Zubrin" -> "r_zubrin"; a single-word name maps to itself
// lower-cased. Returns the empty string for a name without any word.
std::string NormalizeAuthor(std::string_view name);

}  // namespace bookrec

#endif  // BOOKREC_TOKENIZER_H_
