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


#ifndef BOOKREC_TESTS_TEST_UTIL_H_
#define BOOKREC_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>

#include "bookrec/corpus.h"
#include "bookrec/learner.h"

namespace bookrec::testing {

using SlotTokens = std::initializer_list<std::pair<BagSlot, Bag>>;

inline TokenizedBook MakeBook(std::string id, SlotTokens bags = {}) {
  TokenizedBook book;
  book.title_display = "Title of " + id;
  book.id = std::move(id);
  for (const auto& [slot, bag] : bags) book.bag(slot) = bag;
  return book;
}

inline RatedExample MakeExample(std::string id, int rating, SlotTokens bags = {}) {
  return RatedExample{MakeBook(std::move(id), bags), rating};
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("bookrec_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace bookrec::testing

#endif  // BOOKREC_TESTS_TEST_UTIL_H_
