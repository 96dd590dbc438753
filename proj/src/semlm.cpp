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

#include "entctc/semlm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "entctc/entities.hpp"
#include "entctc/error.hpp"
#include "json.hpp"

namespace entctc {

bool ClassMapping::selects(Category c) const {
  return std::find(categories.begin(), categories.end(), c) != categories.end();
}

void ClassMapping::validate(const TagScheme& scheme) const {
  for (Category c : kAllCategories) {
    const std::string& lit = literal(c);
    if (lit.empty()) throw Error(ErrorCode::kInvalidArgument, "empty class literal");
    for (char ch : lit) {
      if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || scheme.is_tag(ch)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "class literal \"" + lit + "\" holds whitespace or a tag symbol");
      }
    }
    for (Category other : kAllCategories) {
      if (other != c && literal(other) == lit) {
        throw Error(ErrorCode::kInvalidArgument, "class literal \"" + lit + "\" is reused");
      }
    }
  }
}

std::string transform_text(std::string_view text, const TagScheme& scheme,
                           const ClassMapping& mapping, std::size_t* half_labeled) {
  const TagPairing pairing = pair_tags(text, scheme);
  if (half_labeled) *half_labeled = pairing.orphans.size();
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (const TagPair& pair : pairing.pairs) {
    if (!mapping.selects(pair.category)) continue;
    const auto inner = text.substr(pair.open + 1, pair.close - pair.open - 1);
    if (inner.find_first_not_of(" \t\r\n") == std::string_view::npos) continue;
    out.append(text.substr(cursor, pair.open - cursor));
    out += mapping.literal(pair.category);
    cursor = pair.close + 1;
  }
  out.append(text.substr(cursor));
  return out;
}

TransformResult transform_corpus(std::span<const std::string> corpus, const TagScheme& scheme,
                                 const ClassMapping& mapping) {
  mapping.validate(scheme);
  TransformResult result;
  result.sentences.reserve(corpus.size());
  for (const auto& line : corpus) {
    std::size_t dropped = 0;
    result.sentences.push_back(transform_text(line, scheme, mapping, &dropped));
    result.half_labeled += dropped;
  }
  return result;
}

std::set<std::string> corpus_vocabulary(std::span<const std::string> corpus,
                                        const TagScheme& scheme) {
  std::set<std::string> vocab;
  for (const auto& line : corpus) {
    for (auto& token : tokenize(strip_tags(line, scheme))) vocab.insert(std::move(token));
  }
  return vocab;
}

OovStats oov_stats(const std::set<std::string>& train_vocab,
                   std::span<const std::string> eval_corpus, const TagScheme& scheme) {
  OovStats stats;
  for (const auto& line : eval_corpus) {
    const auto spans = parse_tagged(line, scheme, ParseMode::kLenient).spans;
    const std::string stripped = strip_tags(line, scheme);
    std::size_t i = 0;
    while (i < stripped.size()) {
      while (i < stripped.size() && (stripped[i] == ' ' || stripped[i] == '\t')) ++i;
      const std::size_t begin = i;
      while (i < stripped.size() && stripped[i] != ' ' && stripped[i] != '\t') ++i;
      if (i == begin) break;
      ++stats.total_words;
      if (train_vocab.count(stripped.substr(begin, i - begin))) continue;
      ++stats.oov_words;
      const bool in_entity = std::any_of(spans.begin(), spans.end(), [&](const EntitySpan& s) {
        return begin < s.end && s.start < i;
      });
      stats.oov_entity_words += in_entity;
    }
  }
  if (stats.total_words > 0) {
    stats.oov_rate = static_cast<double>(stats.oov_words) / static_cast<double>(stats.total_words);
  }
  if (stats.oov_words > 0) {
    stats.entity_share_of_oov =
        static_cast<double>(stats.oov_entity_words) / static_cast<double>(stats.oov_words);
  }
  return stats;
}

std::string OovStats::to_json() const {
  nlohmann::ordered_json doc = {{"total_words", total_words},
                                {"oov_words", oov_words},
                                {"oov_entity_words", oov_entity_words},
                                {"oov_rate", oov_rate},
                                {"entity_share_of_oov", entity_share_of_oov}};
  return doc.dump(2);
}

NameDictionary parse_name_dictionary(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("name dictionary: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "name dictionary must be a JSON object");
  }
  NameDictionary names;
  for (const auto& [key, list] : doc.items()) {
    const auto category = parse_category(key);
    if (!category) throw Error(ErrorCode::kInvalidArgument, "unknown category \"" + key + "\"");
    if (!list.is_array()) {
      throw Error(ErrorCode::kInvalidArgument, "names for " + key + " must be an array");
    }
    auto& bucket = names[*category];
    for (const auto& name : list) {
      if (!name.is_string()) {
        throw Error(ErrorCode::kInvalidArgument, "names for " + key + " must be strings");
      }
      bucket.insert(to_upper(name.get<std::string>()));
    }
  }
  return names;
}

NameDictionary load_name_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open name dictionary " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_name_dictionary(buffer.str());
}

ClassUnitScorer::ClassUnitScorer(std::shared_ptr<const NGramModel> lm, double oov_floor,
                                 TagScheme scheme, ClassLmOptions options)
    : words_(std::move(lm), oov_floor), scheme_(scheme), options_(std::move(options)) {
  options_.mapping.validate(scheme_);
  if (!(options_.gamma >= 0.0) || !std::isfinite(options_.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be finite and non-negative");
  }
}

std::vector<WordId> ClassUnitScorer::initial_history() const { return words_.initial_history(); }

bool ClassUnitScorer::extends_across_space(std::string_view pending) const {
  std::optional<Category> open;
  for (char c : pending) {
    if (auto category = scheme_.category_of_start(c)) {
      open = category;
    } else if (scheme_.is_end(c)) {
      open.reset();
    }
  }
  return open && options_.mapping.selects(*open);
}

UnitScorer::Scored ClassUnitScorer::score_unit(std::vector<WordId>& history,
                                               std::string_view unit) const {
  Scored total;
  for (const auto& token : tokenize(transform_text(unit, scheme_, options_.mapping))) {
    const Scored s = words_.score_unit(history, token);
    total.lm_log_prob += s.lm_log_prob;
    total.words += s.words;
  }
  for (const auto& span : parse_tagged(unit, scheme_, ParseMode::kLenient).spans) {
    if (!options_.mapping.selects(span.category)) continue;
    const auto names = options_.names.find(span.category);
    if (names != options_.names.end() && names->second.count(span.surface)) {
      total.bonus += options_.gamma;
    }
  }
  return total;
}

double ClassUnitScorer::score_end(std::span<const WordId> history) const {
  return words_.score_end(history);
}

DecodeResult decode_with_class_lm(const Posteriorgram& pg, const Alphabet& alphabet,
                                  const DecodeConfig& config, const ClassLmOptions& options) {
  const ClassUnitScorer scorer(config.lm, config.oov_floor, alphabet.tag_scheme(), options);
  return beam_search(pg, alphabet, config, scorer);
}

}  // namespace entctc
