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

#include "entctc/alphabet.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "entctc/error.hpp"
#include "json.hpp"

namespace entctc {

namespace {

constexpr const char* kBlankLiteral = "<blank>";
constexpr const char* kDefaultSymbols = "ABCDEFGHIJKLMNOPQRSTUVWXYZ |${]";

std::string describe(char c) {
  if (c >= 0x20 && c < 0x7f) return std::string("'") + c + "'";
  std::ostringstream out;
  out << "byte 0x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
  return out.str();
}

char single_char(const nlohmann::json& value, const std::string& what) {
  if (!value.is_string() || value.get<std::string>().size() != 1) {
    throw Error(ErrorCode::kInvalidAlphabet, what + " must be a one-character string");
  }
  return value.get<std::string>()[0];
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBlankInText: return "BlankInText";
    case ErrorCode::kMalformedBracket: return "MalformedBracket";
    case ErrorCode::kNestedSpan: return "NestedSpan";
    case ErrorCode::kHalfLabeled: return "HalfLabeled";
    case ErrorCode::kInvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kInfeasibleLabel: return "InfeasibleLabel";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kMissingSection: return "MissingSection";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

std::string_view category_name(Category category) noexcept {
  switch (category) {
    case Category::kPerson: return "PER";
    case Category::kLocation: return "LOC";
    case Category::kOrganization: return "ORG";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view name) noexcept {
  for (Category c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

TagScheme::TagScheme() noexcept : starts_{'|', '$', '{'}, end_(']') {}

TagScheme::TagScheme(char person, char location, char organization, char end)
    : starts_{person, location, organization}, end_(end) {
  const std::array<char, 4> all = {person, location, organization, end};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) {
        throw Error(ErrorCode::kInvalidAlphabet,
                    "tag symbols must be distinct, " + describe(all[i]) + " repeats");
      }
    }
  }
}

std::optional<Category> TagScheme::category_of_start(char c) const noexcept {
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    if (starts_[i] == c) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string to_upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

Alphabet Alphabet::default_alphabet() { return Alphabet(kDefaultSymbols, 0, TagScheme{}); }

Alphabet::Alphabet(std::string_view symbols, std::size_t blank_index, TagScheme scheme)
    : scheme_(scheme) {
  if (blank_index > symbols.size()) {
    throw Error(ErrorCode::kInvalidAlphabet, "blank_index " + std::to_string(blank_index) +
                                                 " outside an alphabet of " +
                                                 std::to_string(symbols.size() + 1));
  }
  lookup_.fill(-1);
  chars_.reserve(symbols.size() + 1);
  chars_.assign(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(blank_index));
  chars_.push_back('\0');
  chars_.insert(chars_.end(), symbols.begin() + static_cast<std::ptrdiff_t>(blank_index),
                symbols.end());
  blank_ = static_cast<Index>(blank_index);
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    if (i == blank_) continue;
    const char c = chars_[i];
    if (c == '\0') throw Error(ErrorCode::kInvalidAlphabet, "NUL is not a valid symbol");
    auto& slot = lookup_[static_cast<unsigned char>(c)];
    if (slot >= 0) {
      throw Error(ErrorCode::kInvalidAlphabet, "duplicate symbol " + describe(c));
    }
    slot = static_cast<std::int32_t>(i);
  }
  checksum_ = fnv1a64(to_json());
}

Alphabet Alphabet::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidAlphabet, std::string("alphabet JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("symbols") || !doc["symbols"].is_array()) {
    throw Error(ErrorCode::kInvalidAlphabet, "alphabet JSON needs a \"symbols\" array");
  }
  const auto& list = doc["symbols"];
  std::size_t blank = 0;
  if (doc.contains("blank_index")) {
    if (!doc["blank_index"].is_number_unsigned()) {
      throw Error(ErrorCode::kInvalidAlphabet, "blank_index must be a non-negative integer");
    }
    blank = doc["blank_index"].get<std::size_t>();
  }
  if (blank >= list.size() || list[blank] != kBlankLiteral) {
    throw Error(ErrorCode::kInvalidAlphabet,
                "symbols[blank_index] must be the literal \"<blank>\"");
  }
  std::string symbols;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i == blank) continue;
    symbols.push_back(single_char(list[i], "symbols[" + std::to_string(i) + "]"));
  }
  TagScheme scheme;
  if (doc.contains("tags")) {
    const auto& tags = doc["tags"];
    if (!tags.is_object()) throw Error(ErrorCode::kInvalidAlphabet, "\"tags\" must be an object");
    auto pick = [&](const char* key, char fallback) {
      return tags.contains(key) ? single_char(tags[key], std::string("tags.") + key) : fallback;
    };
    scheme = TagScheme(pick("PER", '|'), pick("LOC", '$'), pick("ORG", '{'), pick("end", ']'));
  }
  return Alphabet(symbols, blank, scheme);
}

Alphabet Alphabet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open alphabet file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string Alphabet::to_json() const {
  nlohmann::ordered_json doc;
  auto& list = doc["symbols"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    list.push_back(i == blank_ ? std::string(kBlankLiteral) : std::string(1, chars_[i]));
  }
  doc["blank_index"] = blank_;
  doc["tags"] = {{"PER", std::string(1, scheme_.start_symbol(Category::kPerson))},
                 {"LOC", std::string(1, scheme_.start_symbol(Category::kLocation))},
                 {"ORG", std::string(1, scheme_.start_symbol(Category::kOrganization))},
                 {"end", std::string(1, scheme_.end_symbol())}};
  return doc.dump();
}

void Alphabet::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  out << to_json() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "cannot write alphabet file " + path);
}

std::optional<Index> Alphabet::index_of(char c) const noexcept {
  const std::int32_t i = lookup_[static_cast<unsigned char>(c)];
  if (i < 0) return std::nullopt;
  return static_cast<Index>(i);
}

char Alphabet::symbol(Index index) const {
  if (index >= chars_.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(index) + " outside alphabet of " +
                    std::to_string(chars_.size()));
  }
  if (index == blank_) throw Error(ErrorCode::kBlankInText, "blank index in label text");
  return chars_[index];
}

std::vector<Index> Alphabet::encode(std::string_view text) const {
  std::vector<Index> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    const auto index = index_of(c);
    if (!index) {
      throw Error(ErrorCode::kUnknownSymbol,
                  "symbol " + describe(text[i]) + " at position " + std::to_string(i) +
                      " is not in the alphabet",
                  i);
    }
    out.push_back(*index);
  }
  return out;
}

std::string Alphabet::decode(std::span<const Index> indices) const {
  std::string out;
  out.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    try {
      out.push_back(symbol(indices[i]));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at position " + std::to_string(i), i);
    }
  }
  return out;
}

std::string tag_map(std::string_view text, const TagScheme& scheme) {
  std::string out;
  out.reserve(text.size());
  std::optional<std::size_t> open;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[') {
      if (open) {
        throw Error(ErrorCode::kNestedSpan,
                    "span opened at " + std::to_string(i) + " inside span opened at " +
                        std::to_string(*open),
                    i);
      }
      const auto space = text.find(' ', i + 1);
      const auto category =
          space == std::string_view::npos ? std::nullopt
                                          : parse_category(text.substr(i + 1, space - i - 1));
      if (!category) {
        throw Error(ErrorCode::kMalformedBracket,
                    "expected \"[PER \", \"[LOC \" or \"[ORG \" at position " + std::to_string(i),
                    i);
      }
      out.push_back(scheme.start_symbol(*category));
      open = i;
      i = space;
    } else if (c == ']') {
      if (!open) {
        throw Error(ErrorCode::kMalformedBracket,
                    "']' at position " + std::to_string(i) + " closes no span", i);
      }
      out.push_back(scheme.end_symbol());
      open.reset();
    } else if (scheme.is_tag(c)) {
      throw Error(ErrorCode::kMalformedBracket,
                  "reserved tag symbol " + describe(c) + " at position " + std::to_string(i), i);
    } else {
      out.push_back(c);
    }
  }
  if (open) {
    throw Error(ErrorCode::kMalformedBracket,
                "span opened at position " + std::to_string(*open) + " is never closed", *open);
  }
  return out;
}

TagPairing pair_tags(std::string_view text, const TagScheme& scheme) {
  TagPairing result;
  std::optional<std::size_t> open;
  Category open_category = Category::kPerson;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (auto category = scheme.category_of_start(c)) {
      if (open) result.orphans.push_back(*open);
      open = i;
      open_category = *category;
    } else if (scheme.is_end(c)) {
      if (open) {
        result.pairs.push_back({*open, i, open_category});
        open.reset();
      } else {
        result.orphans.push_back(i);
      }
    }
  }
  if (open) result.orphans.push_back(*open);
  std::sort(result.orphans.begin(), result.orphans.end());
  return result;
}

std::string tag_unmap(std::string_view text, const TagScheme& scheme, bool strict) {
  const TagPairing pairing = pair_tags(text, scheme);
  if (strict && !pairing.orphans.empty()) {
    const std::size_t at = pairing.orphans.front();
    throw Error(ErrorCode::kHalfLabeled,
                "half-labeled tag " + describe(text[at]) + " at position " + std::to_string(at),
                at);
  }
  std::string out;
  out.reserve(text.size() + 4 * pairing.pairs.size());
  auto orphan = pairing.orphans.begin();
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (orphan != pairing.orphans.end() && *orphan == i) {
      ++orphan;
      continue;
    }
    if (auto category = scheme.category_of_start(c)) {
      out += '[';
      out += category_name(*category);
      out += ' ';
    } else if (scheme.is_end(c)) {
      out += ']';
    } else {
      out += c;
    }
  }
  return out;
}

std::string strip_tags(std::string_view text, const TagScheme& scheme) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!scheme.is_tag(c)) out.push_back(c);
  }
  return out;
}

}  // namespace entctc
