// Copyright 2026 The entctc Authors. All Rights Reserved.
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

#include "entctc/entities.hpp"

#include "entctc/error.hpp"

namespace entctc {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

ParsedEntities parse_tagged(std::string_view text, const TagScheme& scheme, ParseMode mode) {
  const TagPairing pairing = pair_tags(text, scheme);
  if (mode == ParseMode::kStrict && !pairing.orphans.empty()) {
    const std::size_t at = pairing.orphans.front();
    throw Error(ErrorCode::kHalfLabeled,
                "half-labeled tag at position " + std::to_string(at), at);
  }

  // stripped_at[i]: offset in the stripped text of the first non-tag
  // character at or after text position i.
  std::vector<std::size_t> stripped_at(text.size() + 1);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    stripped_at[i] = offset;
    if (!scheme.is_tag(text[i])) ++offset;
  }
  stripped_at[text.size()] = offset;

  ParsedEntities out;
  out.dropped = pairing.orphans.size();
  for (const TagPair& pair : pairing.pairs) {
    std::size_t first = pair.open + 1, last = pair.close;
    while (first < last && is_space(text[first])) ++first;
    while (last > first && is_space(text[last - 1])) --last;
    if (first == last) {
      if (mode == ParseMode::kStrict) {
        throw Error(ErrorCode::kHalfLabeled,
                    "empty entity span at position " + std::to_string(pair.open), pair.open);
      }
      ++out.dropped;
      continue;
    }
    EntitySpan span{pair.category, std::string(text.substr(first, last - first)),
                    stripped_at[first], stripped_at[first] + (last - first), pair.open,
                    pair.close};
    out.spans.push_back(std::move(span));
  }
  return out;
}

EntitySet to_entity_set(const std::vector<EntitySpan>& spans) {
  EntitySet set;
  for (const auto& s : spans) set.emplace(s.category, s.surface);
  return set;
}

}  // namespace entctc
