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


#include "bookrec/extraction.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bookrec/errors.h"
#include "json.hpp"

namespace bookrec {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Cursor over one rule line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  void SkipSpaces() {
    while (pos_ < line_.size() && IsSpace(line_[pos_])) ++pos_;
  }

  bool AtEnd() {
    SkipSpaces();
    return pos_ >= line_.size();
  }

  std::string_view Word() {
    SkipSpaces();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !IsSpace(line_[pos_]) && line_[pos_] != '=' &&
           line_[pos_] != ':') {
      ++pos_;
    }
    return line_.substr(start, pos_ - start);
  }

  bool Consume(char c) {
    SkipSpaces();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string Quoted() {
    SkipSpaces();
    if (pos_ >= line_.size() || line_[pos_] != '"') Fail("expected '\"'");
    ++pos_;
    std::string out;
    while (pos_ < line_.size()) {
      const char c = line_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= line_.size()) break;
      const char escaped = line_[pos_++];
      switch (escaped) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default:
          Fail(std::string("unknown escape '\\") + escaped + "'");
      }
    }
    Fail("unterminated string");
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(message, line_number_);
  }

 private:
  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

ExtractionRule ParseRuleLine(std::string_view line, std::size_t line_number) {
  LineParser parser(line, line_number);
  const std::string_view slot_name = parser.Word();
  if (slot_name.empty()) parser.Fail("expected slot name");
  const auto slot = ParseSlotId(slot_name);
  if (!slot) parser.Fail("unknown slot '" + std::string(slot_name) + "'");
  if (!parser.Consume(':')) parser.Fail("expected ':' after slot name");

  ExtractionRule rule;
  rule.slot = *slot;
  rule.multi = DefaultMulti(*slot);
  bool has_pre = false;
  bool has_post = false;
  while (!parser.AtEnd()) {
    const std::string_view key = parser.Word();
    if (key == "multi") {
      rule.multi = true;
      continue;
    }
    if (key == "single") {
      rule.multi = false;
      continue;
    }
    if (key != "pre" && key != "post") {
      parser.Fail("unexpected '" + std::string(key) + "'");
    }
    if (!parser.Consume('=')) parser.Fail("expected '=' after " + std::string(key));
    std::string value = parser.Quoted();
    if (value.empty()) parser.Fail("empty " + std::string(key) + " pattern");
    if (key == "pre") {
      if (has_pre) parser.Fail("duplicate pre pattern");
      rule.pre = std::move(value);
      has_pre = true;
    } else {
      if (has_post) parser.Fail("duplicate post pattern");
      rule.post = std::move(value);
      has_post = true;
    }
  }
  if (!has_pre) parser.Fail("missing pre pattern");
  if (!has_post) parser.Fail("missing post pattern");
  return rule;
}

void AppendEntity(std::string_view entity, std::string& out) {
  if (entity == "amp") {
    out += '&';
  } else if (entity == "lt") {
    out += '<';
  } else if (entity == "gt") {
    out += '>';
  } else if (entity == "quot") {
    out += '"';
  } else if (entity == "apos" || entity == "#39") {
    out += '\'';
  } else if (entity == "nbsp") {
    out += ' ';
  } else {
    out += '&';
    out += entity;
    out += ';';
  }
}

}  // namespace

bool DefaultMulti(SlotId slot) {
  return IsRecommenderSlot(slot) && slot != SlotId::kTitle;
}

ExtractionRuleSet ParseRuleConfig(std::string_view text) {
  ExtractionRuleSet rules;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    rules.push_back(ParseRuleLine(line, line_number));
  }
  return rules;
}

ExtractionRuleSet LoadRuleConfig(const std::filesystem::path& path) {
  return ParseRuleConfig(ReadFile(path));
}

const std::vector<std::string>& RawBookRecord::Fillers(SlotId slot) const {
  static const std::vector<std::string> kEmpty;
  const auto it = fillers.find(slot);
  return it == fillers.end() ? kEmpty : it->second;
}

std::string NormalizeFiller(std::string_view text) {
  // Tags and entities first, whitespace afterwards so that a removed tag
  // between two words still separates them.
  std::string plain;
  plain.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '<') {
      const std::size_t close = text.find('>', i + 1);
      if (close != std::string_view::npos) {
        plain += ' ';
        i = close + 1;
        continue;
      }
    } else if (c == '&') {
      const std::size_t semi = text.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 8) {
        AppendEntity(text.substr(i + 1, semi - i - 1), plain);
        i = semi + 1;
        continue;
      }
    }
    plain += c;
    ++i;
  }

  std::string out;
  out.reserve(plain.size());
  bool pending_space = false;
  for (char ch : plain) {
    if (IsSpace(ch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += ch;
  }
  return out;
}

RawBookRecord ExtractRecord(std::string_view doc, std::string id,
                            const ExtractionRuleSet& rules) {
  RawBookRecord record;
  record.id = std::move(id);
  for (const ExtractionRule& rule : rules) {
    std::size_t pos = 0;
    while (pos <= doc.size()) {
      const std::size_t pre_at = doc.find(rule.pre, pos);
      if (pre_at == std::string_view::npos) break;
      const std::size_t filler_at = pre_at + rule.pre.size();
      const std::size_t post_at = doc.find(rule.post, filler_at);
      if (post_at == std::string_view::npos) break;
      std::string filler = NormalizeFiller(doc.substr(filler_at, post_at - filler_at));
      if (!filler.empty()) record.fillers[rule.slot].push_back(std::move(filler));
      if (!rule.multi) break;
      pos = post_at + rule.post.size();
    }
  }
  return record;
}

bool HasAdequateContent(const RawBookRecord& record) {
  return !record.Fillers(SlotId::kSynopses).empty() ||
         !record.Fillers(SlotId::kReviews).empty() ||
         !record.Fillers(SlotId::kComments).empty();
}

std::vector<RawBookRecord> FilterAdequate(std::vector<RawBookRecord> records) {
  std::erase_if(records, [](const RawBookRecord& r) { return !HasAdequateContent(r); });
  return records;
}

std::vector<Document> SplitConcatenated(std::string_view text) {
  std::vector<Document> docs;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const bool last = end == std::string_view::npos;
    if (last) end = text.size();
    ++line_number;
    const std::string_view line = text.substr(start, end - start);
    if (line.starts_with("%%%")) {
      const std::string_view id = Trim(line.substr(3));
      if (id.empty()) throw ParseError("empty document id", line_number);
      docs.push_back(Document{std::string(id), {}});
    } else if (!docs.empty()) {
      docs.back().text.append(line);
      if (!last) docs.back().text += '\n';
    } else if (!Trim(line).empty()) {
      throw ParseError("text before the first %%% separator", line_number);
    }
    start = end + 1;
  }
  return docs;
}

std::vector<Document> LoadDocuments(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<Document> docs;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      docs.push_back(Document{file.stem().string(), ReadFile(file)});
    }
    return docs;
  }
  std::string text = ReadFile(path);
  if (text.starts_with("%%%") || text.find("\n%%%") != std::string::npos) {
    return SplitConcatenated(text);
  }
  docs.push_back(Document{path.stem().string(), std::move(text)});
  return docs;
}

std::string RawRecordToJson(const RawBookRecord& record) {
  nlohmann::ordered_json fillers = nlohmann::ordered_json::object();
  for (SlotId slot : kAllSlotIds) {
    const auto& values = record.Fillers(slot);
    if (!values.empty()) fillers[std::string(SlotIdName(slot))] = values;
  }
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["fillers"] = std::move(fillers);
  return j.dump();
}

RawBookRecord RawRecordFromJson(std::string_view line) {
  RawBookRecord record;
  try {
    const auto j = nlohmann::json::parse(line);
    record.id = j.at("id").get<std::string>();
    for (const auto& [name, values] : j.at("fillers").items()) {
      const auto slot = ParseSlotId(name);
      if (!slot) throw ParseError("unknown slot '" + name + "'");
      record.fillers[*slot] = values.get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return record;
}

}  // namespace bookrec
