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


#ifndef BOOKREC_SLOT_H_
#define BOOKREC_SLOT_H_

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bookrec {

// Fields a catalog page can be broken into. The first eight feed the
// recommender; the rest are carried along but never learned from.
enum class SlotId {
  kTitle,
  kAuthors,
  kSynopses,
  kReviews,
  kComments,
  kRelatedAuthors,
  kRelatedTitles,
  kSubjects,
  kPublisher,
  kDate,
  kIsbn,
  kPrice,
};

inline constexpr std::array<SlotId, 12> kAllSlotIds = {
    SlotId::kTitle,          SlotId::kAuthors,       SlotId::kSynopses,
    SlotId::kReviews,        SlotId::kComments,      SlotId::kRelatedAuthors,
    SlotId::kRelatedTitles,  SlotId::kSubjects,      SlotId::kPublisher,
    SlotId::kDate,           SlotId::kIsbn,          SlotId::kPrice,
};

std::string_view SlotIdName(SlotId slot);
std::optional<SlotId> ParseSlotId(std::string_view name);
bool IsRecommenderSlot(SlotId slot);

// The bags of the vector-of-bags book representation. Synopses, reviews
// and comments are pooled into kWords.
enum class BagSlot {
  kTitle,
  kAuthors,
  kWords,
  kRelatedAuthors,
  kRelatedTitles,
  kSubjects,
};

inline constexpr std::size_t kNumBagSlots = 6;
inline constexpr std::array<BagSlot, kNumBagSlots> kAllBagSlots = {
    BagSlot::kTitle,          BagSlot::kAuthors,       BagSlot::kWords,
    BagSlot::kRelatedAuthors, BagSlot::kRelatedTitles, BagSlot::kSubjects,
};

inline constexpr std::size_t BagIndex(BagSlot slot) {
  return static_cast<std::size_t>(slot);
}

std::string_view BagSlotName(BagSlot slot);
std::optional<BagSlot> ParseBagSlot(std::string_view name);

// Set of bags a profile is trained and scored on.
class SlotMask {
 public:
  constexpr SlotMask() = default;

  static SlotMask All();
  static SlotMask None() { return SlotMask(); }
  static SlotMask Of(std::initializer_list<BagSlot> slots);

  // Comma-separated bag names, e.g. "words,title". "all" selects every bag.
  // Throws std::invalid_argument on an unknown name.
  static SlotMask Parse(std::string_view text);

  bool Contains(BagSlot slot) const { return bits_.test(BagIndex(slot)); }
  SlotMask With(BagSlot slot) const;
  SlotMask Without(BagSlot slot) const;
  SlotMask Minus(const SlotMask& other) const;
  bool Empty() const { return bits_.none(); }

  std::vector<BagSlot> Slots() const;
  std::vector<std::string> Names() const;
  std::string ToString() const;

  friend bool operator==(const SlotMask&, const SlotMask&) = default;

 private:
  std::bitset<kNumBagSlots> bits_;
};

}  // namespace bookrec

#endif  // BOOKREC_SLOT_H_
