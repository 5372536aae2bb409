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


#include "bookrec/profile_io.h"

#include <fstream>
#include <map>
#include <sstream>

#include "bookrec/errors.h"

namespace bookrec {

nlohmann::ordered_json ProfileToJson(const Profile& profile) {
  nlohmann::ordered_json j;
  j["format"] = "bookrec-profile";
  j["version"] = kProfileFormatVersion;
  j["lambda"] = profile.lambda;
  j["num_examples"] = profile.num_examples;
  j["prior"] = {{"positive", profile.prior_pos}, {"negative", profile.prior_neg}};
  j["mask"] = profile.mask.Names();
  nlohmann::ordered_json slots = nlohmann::ordered_json::object();
  for (BagSlot slot : profile.mask.Slots()) {
    const SlotModel& model = profile.slot(slot);
    const std::map<std::string, TokenParams> sorted(model.tokens.begin(), model.tokens.end());
    nlohmann::ordered_json tokens = nlohmann::ordered_json::object();
    for (const auto& [token, params] : sorted) {
      tokens[token] = {params.log_pos, params.log_neg};
    }
    nlohmann::ordered_json s;
    s["length"] = {{"positive", model.length_pos}, {"negative", model.length_neg}};
    s["vocab_size"] = model.vocab_size();
    s["tokens"] = std::move(tokens);
    slots[std::string(BagSlotName(slot))] = std::move(s);
  }
  j["slots"] = std::move(slots);
  return j;
}

Profile ProfileFromJson(const nlohmann::json& j) {
  Profile profile;
  try {
    if (j.at("format").get<std::string>() != "bookrec-profile") {
      throw ParseError("not a profile document");
    }
    const int version = j.at("version").get<int>();
    if (version != kProfileFormatVersion) {
      throw ParseError("unsupported profile version " + std::to_string(version));
    }
    profile.lambda = j.at("lambda").get<double>();
    profile.num_examples = j.at("num_examples").get<std::size_t>();
    profile.prior_pos = j.at("prior").at("positive").get<double>();
    profile.prior_neg = j.at("prior").at("negative").get<double>();
    std::string mask_text;
    for (const auto& name : j.at("mask")) {
      if (!mask_text.empty()) mask_text += ',';
      mask_text += name.get<std::string>();
    }
    profile.mask = SlotMask::Parse(mask_text);
    for (const auto& [name, s] : j.at("slots").items()) {
      const auto slot = ParseBagSlot(name);
      if (!slot || !profile.mask.Contains(*slot)) {
        throw ParseError("unexpected slot '" + name + "'");
      }
      SlotModel& model = profile.slots[BagIndex(*slot)];
      model.length_pos = s.at("length").at("positive").get<double>();
      model.length_neg = s.at("length").at("negative").get<double>();
      const auto& tokens = s.at("tokens");
      model.tokens.reserve(tokens.size());
      for (const auto& [token, pair] : tokens.items()) {
        if (!pair.is_array() || pair.size() != 2) {
          throw ParseError("token '" + token + "' needs [log_pos, log_neg]");
        }
        model.tokens.emplace(token, TokenParams{pair[0].get<double>(), pair[1].get<double>()});
      }
      if (s.at("vocab_size").get<std::size_t>() != model.vocab_size()) {
        throw ParseError("vocab_size mismatch in slot '" + name + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed profile: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed profile: ") + e.what());
  }
  return profile;
}

std::string SerializeProfile(const Profile& profile) { return ProfileToJson(profile).dump(); }

Profile ParseProfile(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed profile: ") + e.what());
  }
  return ProfileFromJson(j);
}

void SaveProfile(const Profile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << SerializeProfile(profile) << '\n';
}

Profile LoadProfile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseProfile(buffer.str());
}

}  // namespace bookrec
