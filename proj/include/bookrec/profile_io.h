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


#ifndef BOOKREC_PROFILE_IO_H_
#define BOOKREC_PROFILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "bookrec/learner.h"
#include "json.hpp"

namespace bookrec {

// Versioned JSON form of a Profile. Doubles are written in shortest
// round-trip form, so a parsed profile scores bit-identically.
//
// {"format":"bookrec-profile","version":1,"lambda":1.0,"num_examples":N,
//  "prior":{"positive":p1,"negative":p0},"mask":["title",...],
//  "slots":{"words":{"length":{"positive":L1,"negative":L0},
//                    "vocab_size":V,"tokens":{"tok":[logp1,logp0],...}},...}}
inline constexpr int kProfileFormatVersion = 1;

nlohmann::ordered_json ProfileToJson(const Profile& profile);
Profile ProfileFromJson(const nlohmann::json& j);

std::string SerializeProfile(const Profile& profile);
Profile ParseProfile(std::string_view text);

void SaveProfile(const Profile& profile, const std::filesystem::path& path);
Profile LoadProfile(const std::filesystem::path& path);

}  // namespace bookrec

#endif  // BOOKREC_PROFILE_IO_H_
