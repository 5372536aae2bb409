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

#include <gtest/gtest.h>

namespace bookrec {
namespace {

TEST(SlotId, NamesRoundTrip) {
  for (SlotId slot : kAllSlotIds) {
    EXPECT_EQ(ParseSlotId(SlotIdName(slot)), slot);
  }
  EXPECT_EQ(ParseSlotId("related_titles"), SlotId::kRelatedTitles);
  EXPECT_FALSE(ParseSlotId("bogus_slot"));
}

TEST(SlotId, RecommenderSlots) {
  EXPECT_TRUE(IsRecommenderSlot(SlotId::kSubjects));
  EXPECT_TRUE(IsRecommenderSlot(SlotId::kComments));
  EXPECT_FALSE(IsRecommenderSlot(SlotId::kIsbn));
  EXPECT_FALSE(IsRecommenderSlot(SlotId::kPrice));
}

TEST(BagSlot, NamesRoundTrip) {
  for (BagSlot slot : kAllBagSlots) {
    EXPECT_EQ(ParseBagSlot(BagSlotName(slot)), slot);
  }
  EXPECT_EQ(ParseBagSlot("related_authors"), BagSlot::kRelatedAuthors);
  EXPECT_FALSE(ParseBagSlot("synopses"));
}

TEST(SlotMask, ParseAndFormat) {
  const SlotMask mask = SlotMask::Parse("words, title");
  EXPECT_TRUE(mask.Contains(BagSlot::kWords));
  EXPECT_TRUE(mask.Contains(BagSlot::kTitle));
  EXPECT_FALSE(mask.Contains(BagSlot::kAuthors));
  EXPECT_EQ(mask.ToString(), "title,words");
  EXPECT_EQ(SlotMask::Parse("all"), SlotMask::All());
  EXPECT_THROW(SlotMask::Parse("words,nope"), std::invalid_argument);
}

TEST(SlotMask, SetOperations) {
  const SlotMask related = SlotMask::Of({BagSlot::kRelatedAuthors, BagSlot::kRelatedTitles});
  const SlotMask rest = SlotMask::All().Minus(related);
  EXPECT_EQ(rest.Slots().size(), kNumBagSlots - 2);
  EXPECT_FALSE(rest.Contains(BagSlot::kRelatedTitles));
  EXPECT_EQ(rest.With(BagSlot::kRelatedAuthors).With(BagSlot::kRelatedTitles), SlotMask::All());
  EXPECT_EQ(SlotMask::All().Without(BagSlot::kWords).Slots().size(), kNumBagSlots - 1);
  EXPECT_TRUE(SlotMask::None().Empty());
}

}  // namespace
}  // namespace bookrec
