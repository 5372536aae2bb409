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


#ifndef BOOKREC_EXTRACTION_H_
#define BOOKREC_EXTRACTION_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bookrec/slot.h"

namespace bookrec {

// Literal-delimiter extraction rule: a filler is the text strictly between
// an occurrence of `pre` and the nearest following occurrence of `post`.
struct ExtractionRule {
  SlotId slot = SlotId::kTitle;
  std::string pre;
  std::string post;
  bool multi = false;

  friend bool operator==(const ExtractionRule&, const ExtractionRule&) = default;
};

using ExtractionRuleSet = std::vector<ExtractionRule>;

// Whether a rule without an explicit `multi`/`single` flag collects every
// match. Only title (and the pass-through extras) default to single.
bool DefaultMulti(SlotId slot);

// Parses the line-oriented rule grammar:
//
//   # comment
//   <slot>: pre="<escaped>" post="<escaped>" [multi|single]
//
// Escapes inside quotes: \" \\ \n \t. Throws ParseError with the offending
// line number on any syntax error, unknown slot or empty pattern.
ExtractionRuleSet ParseRuleConfig(std::string_view text);
ExtractionRuleSet LoadRuleConfig(const std::filesystem::path& path);

struct RawBookRecord {
  std::string id;
  std::map<SlotId, std::vector<std::string>> fillers;

  // Empty list for slots that produced nothing.
  const std::vector<std::string>& Fillers(SlotId slot) const;

  friend bool operator==(const RawBookRecord&, const RawBookRecord&) = default;
};

// Strips markup tags, decodes the basic HTML entities, collapses runs of
// whitespace to one space and trims.
std::string NormalizeFiller(std::string_view text);

// Applies every rule to `doc`. Total: slots whose patterns are absent simply
// have no fillers. Fillers that normalize to the empty string are dropped.
RawBookRecord ExtractRecord(std::string_view doc, std::string id,
                            const ExtractionRuleSet& rules);

// True when the record has at least one synopsis, review or comment.
bool HasAdequateContent(const RawBookRecord& record);

// Keeps the adequate records, preserving order.
std::vector<RawBookRecord> FilterAdequate(std::vector<RawBookRecord> records);

struct Document {
  std::string id;
  std::string text;
};

// Splits a concatenated corpus on `%%%<id>` separator lines. Text before the
// first separator must be blank.
std::vector<Document> SplitConcatenated(std::string_view text);

// A directory yields one document per regular file (id = filename stem,
// sorted by filename); a file is split on `%%%<id>` separators, or taken
// whole with its stem as id when it has none.
std::vector<Document> LoadDocuments(const std::filesystem::path& path);

// JSON Lines form of raw records:
//   {"id":"...","fillers":{"title":["..."],...}}
std::string RawRecordToJson(const RawBookRecord& record);
RawBookRecord RawRecordFromJson(std::string_view line);

}  // namespace bookrec

#endif  // BOOKREC_EXTRACTION_H_
