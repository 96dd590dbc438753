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

#ifndef ENTCTC_ENTITIES_HPP_
#define ENTCTC_ENTITIES_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entctc/alphabet.hpp"

namespace entctc {

struct EntitySpan {
  Category category;
  std::string surface;      // trimmed text between the start and end symbols
  std::size_t start = 0;    // [start, end) of `surface` in strip_tags(text)
  std::size_t end = 0;
  std::size_t tag_open = 0;   // positions of the start and end symbols
  std::size_t tag_close = 0;  // in the tagged text

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

enum class ParseMode { kStrict, kLenient };

struct ParsedEntities {
  std::vector<EntitySpan> spans;  // ordered, non-overlapping
  std::size_t dropped = 0;        // half-labeled or empty spans discarded
};

/// Extracts entity spans from a tagged transcript. Lenient mode discards
/// starts that are never closed (including a start followed by another
/// start), ends that close nothing, and spans whose content is blank,
/// counting one drop each. Strict mode throws kHalfLabeled instead.
ParsedEntities parse_tagged(std::string_view text, const TagScheme& scheme,
                            ParseMode mode = ParseMode::kLenient);

using EntityKey = std::pair<Category, std::string>;
using EntitySet = std::set<EntityKey>;

/// Collapses repeated (category, surface) pairs.
EntitySet to_entity_set(const std::vector<EntitySpan>& spans);

}  // namespace entctc

#endif  // ENTCTC_ENTITIES_HPP_
