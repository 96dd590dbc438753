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

#ifndef ENTCTC_ALPHABET_HPP_
#define ENTCTC_ALPHABET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entctc {

enum class Category : std::uint8_t { kPerson = 0, kLocation = 1, kOrganization = 2 };

inline constexpr std::array<Category, 3> kAllCategories = {
    Category::kPerson, Category::kLocation, Category::kOrganization};

/// "PER", "LOC" or "ORG".
std::string_view category_name(Category category) noexcept;
std::optional<Category> parse_category(std::string_view name) noexcept;

/// Characters that mark entity boundaries inside a transcript. One start
/// symbol per category and a single shared end symbol.
class TagScheme {
 public:
  /// '|' person, '$' location, '{' organization, ']' end.
  TagScheme() noexcept;
  /// Throws kInvalidAlphabet unless all four symbols are distinct.
  TagScheme(char person, char location, char organization, char end);

  char start_symbol(Category category) const noexcept {
    return starts_[static_cast<std::size_t>(category)];
  }
  char end_symbol() const noexcept { return end_; }

  std::optional<Category> category_of_start(char c) const noexcept;
  bool is_start(char c) const noexcept { return category_of_start(c).has_value(); }
  bool is_end(char c) const noexcept { return c == end_; }
  bool is_tag(char c) const noexcept { return is_start(c) || is_end(c); }

  friend bool operator==(const TagScheme&, const TagScheme&) = default;

 private:
  std::array<char, 3> starts_;
  char end_;
};

using Index = std::uint32_t;

/// Bijective table between single characters and output indices, with one
/// reserved slot for the CTC blank. Immutable once built.
class Alphabet {
 public:
  /// blank(0), 'A'-'Z'(1-26), space(27), '|'(28), '$'(29), '{'(30), ']'(31).
  static Alphabet default_alphabet();

  /// `symbols` lists the non-blank characters in index order; the blank is
  /// inserted at `blank_index`. Throws kInvalidAlphabet on duplicates, NUL
  /// characters or an out-of-range blank index.
  Alphabet(std::string_view symbols, std::size_t blank_index, TagScheme scheme = {});

  /// Parses the alphabet JSON document:
  /// {"symbols": ["<blank>", "A", ...], "blank_index": 0,
  ///  "tags": {"PER": "|", "LOC": "$", "ORG": "{", "end": "]"}}
  static Alphabet from_json(std::string_view json);
  static Alphabet load(const std::string& path);

  /// Canonical compact serialization; `checksum()` hashes exactly these bytes.
  std::string to_json() const;
  void save(const std::string& path) const;

  std::size_t size() const noexcept { return chars_.size(); }
  Index blank_index() const noexcept { return blank_; }
  const TagScheme& tag_scheme() const noexcept { return scheme_; }
  /// FNV-1a 64 over `to_json()`.
  std::uint64_t checksum() const noexcept { return checksum_; }

  std::optional<Index> index_of(char c) const noexcept;
  /// Character at `index`; throws kIndexOutOfRange or kBlankInText.
  char symbol(Index index) const;
  bool is_blank(Index index) const noexcept { return index == blank_; }

  /// Uppercases then maps each character. Throws kUnknownSymbol with the
  /// offending position.
  std::vector<Index> encode(std::string_view text) const;
  std::string decode(std::span<const Index> indices) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.chars_ == b.chars_ && a.blank_ == b.blank_ && a.scheme_ == b.scheme_;
  }

 private:
  std::vector<char> chars_;  // chars_[blank_] is unused
  Index blank_;
  TagScheme scheme_;
  std::array<std::int32_t, 256> lookup_{};
  std::uint64_t checksum_ = 0;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// ASCII uppercase copy.
std::string to_upper(std::string_view text);

/// "[PER Rajesh] met [ORG T.C.S.]" -> "|Rajesh] met {T.C.S.]". Throws
/// kMalformedBracket for unclosed spans, unknown categories, stray ']' or
/// tag symbols in plain text, and kNestedSpan for '[' inside a span.
std::string tag_map(std::string_view bracket_text, const TagScheme& scheme);

/// Inverse of tag_map. In strict mode any start without an end, start while
/// a span is open, or end without a start throws kHalfLabeled with the
/// offending position. In lenient mode those tag symbols are dropped.
std::string tag_unmap(std::string_view symbol_text, const TagScheme& scheme,
                      bool strict = true);

/// Start/end symbols matched left to right. A start seen while another
/// span is open orphans the earlier start; an end with nothing open is
/// orphaned; a start still open at the end of the text is orphaned.
struct TagPair {
  std::size_t open;   // position of the start symbol
  std::size_t close;  // position of the end symbol
  Category category;
};
struct TagPairing {
  std::vector<TagPair> pairs;
  std::vector<std::size_t> orphans;  // ascending positions
};
TagPairing pair_tags(std::string_view symbol_text, const TagScheme& scheme);

/// Removes every tag symbol.
std::string strip_tags(std::string_view symbol_text, const TagScheme& scheme);

}  // namespace entctc

#endif  // ENTCTC_ALPHABET_HPP_
