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


#include "bookrec/slot.h"

#include <stdexcept>

namespace bookrec {

namespace {

constexpr std::array<std::string_view, kAllSlotIds.size()> kSlotIdNames = {
    "title",          "authors",  "synopses",  "reviews",
    "comments",       "related-authors", "related-titles", "subjects",
    "publisher",      "date",     "isbn",      "price",
};

constexpr std::array<std::string_view, kNumBagSlots> kBagSlotNames = {
    "title", "authors", "words", "related-authors", "related-titles", "subjects",
};

// Accept snake_case spellings as aliases of the hyphenated names.
std::string Canonicalize(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

}  // namespace

std::string_view SlotIdName(SlotId slot) {
  return kSlotIdNames[static_cast<std::size_t>(slot)];
}

std::optional<SlotId> ParseSlotId(std::string_view name) {
  const std::string canonical = Canonicalize(name);
  for (std::size_t i = 0; i < kSlotIdNames.size(); ++i) {
    if (kSlotIdNames[i] == canonical) return kAllSlotIds[i];
  }
  return std::nullopt;
}

bool IsRecommenderSlot(SlotId slot) {
  return static_cast<int>(slot) <= static_cast<int>(SlotId::kSubjects);
}

std::string_view BagSlotName(BagSlot slot) { return kBagSlotNames[BagIndex(slot)]; }

std::optional<BagSlot> ParseBagSlot(std::string_view name) {
  const std::string canonical = Canonicalize(name);
  for (std::size_t i = 0; i < kBagSlotNames.size(); ++i) {
    if (kBagSlotNames[i] == canonical) return kAllBagSlots[i];
  }
  return std::nullopt;
}

SlotMask SlotMask::All() {
  SlotMask mask;
  mask.bits_.set();
  return mask;
}

SlotMask SlotMask::Of(std::initializer_list<BagSlot> slots) {
  SlotMask mask;
  for (BagSlot slot : slots) mask.bits_.set(BagIndex(slot));
  return mask;
}

SlotMask SlotMask::Parse(std::string_view text) {
  SlotMask mask;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "all") {
      mask = All();
    } else if (!item.empty()) {
      const auto slot = ParseBagSlot(item);
      if (!slot) {
        throw std::invalid_argument("unknown slot '" + std::string(item) + "'");
      }
      mask.bits_.set(BagIndex(*slot));
    }
    start = end + 1;
  }
  return mask;
}

SlotMask SlotMask::With(BagSlot slot) const {
  SlotMask out = *this;
  out.bits_.set(BagIndex(slot));
  return out;
}

SlotMask SlotMask::Without(BagSlot slot) const {
  SlotMask out = *this;
  out.bits_.reset(BagIndex(slot));
  return out;
}

SlotMask SlotMask::Minus(const SlotMask& other) const {
  SlotMask out = *this;
  out.bits_ &= ~other.bits_;
  return out;
}

std::vector<BagSlot> SlotMask::Slots() const {
  std::vector<BagSlot> out;
  for (BagSlot slot : kAllBagSlots) {
    if (Contains(slot)) out.push_back(slot);
  }
  return out;
}

std::vector<std::string> SlotMask::Names() const {
  std::vector<std::string> out;
  for (BagSlot slot : Slots()) out.emplace_back(BagSlotName(slot));
  return out;
}

std::string SlotMask::ToString() const {
  std::string out;
  for (const auto& name : Names()) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

}  // namespace bookrec
