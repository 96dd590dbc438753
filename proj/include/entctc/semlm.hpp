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

#ifndef ENTCTC_SEMLM_HPP_
#define ENTCTC_SEMLM_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entctc/alphabet.hpp"
#include "entctc/decoder.hpp"
#include "entctc/posteriorgram.hpp"

namespace entctc {

/// Which categories are replaced by class tokens, and the token for each.
struct ClassMapping {
  std::vector<Category> categories{Category::kPerson};
  std::array<std::string, 3> literals{"<PER>", "<LOC>", "<ORG>"};

  bool selects(Category c) const;
  const std::string& literal(Category c) const { return literals[static_cast<std::size_t>(c)]; }
  /// Literals must be non-empty, distinct, and free of whitespace and tag
  /// symbols. Throws kInvalidArgument.
  void validate(const TagScheme& scheme) const;
};

/// Replaces every complete span of a selected category, tags included, by
/// its class literal. Half-labeled tags stay in place; `half_labeled`
/// receives their count when given.
std::string transform_text(std::string_view text, const TagScheme& scheme,
                           const ClassMapping& mapping, std::size_t* half_labeled = nullptr);

struct TransformResult {
  std::vector<std::string> sentences;
  std::size_t half_labeled = 0;
};
TransformResult transform_corpus(std::span<const std::string> corpus, const TagScheme& scheme,
                                 const ClassMapping& mapping = {});

/// Whitespace tokens of the tag-stripped corpus.
std::set<std::string> corpus_vocabulary(std::span<const std::string> corpus,
                                        const TagScheme& scheme);

struct OovStats {
  std::size_t total_words = 0;
  std::size_t oov_words = 0;
  std::size_t oov_entity_words = 0;
  double oov_rate = 0.0;             // oov_words / total_words, 0 when empty
  double entity_share_of_oov = 0.0;  // oov_entity_words / oov_words, 0 when none
  std::string to_json() const;
};

/// Counts tokens of the tag-stripped evaluation text missing from
/// `train_vocab`; an OOV token is an entity word when it overlaps a complete
/// entity span.
OovStats oov_stats(const std::set<std::string>& train_vocab,
                   std::span<const std::string> eval_corpus, const TagScheme& scheme);

using NameDictionary = std::map<Category, std::set<std::string>>;

/// {"PER": ["MODI", ...], "LOC": [...]}; names are uppercased. Throws
/// kInvalidArgument on malformed documents.
NameDictionary parse_name_dictionary(std::string_view json);
NameDictionary load_name_dictionary(const std::string& path);

struct ClassLmOptions {
  ClassMapping mapping;
  NameDictionary names;
  double gamma = std::log(2.0);  // bonus per span whose surface is a known name
};

/// Scores units against a class-token LM. While a span of a selected
/// category is open, spaces do not end the unit, so a multi-word name forms
/// one LM token; the unit is passed through transform_text before scoring.
class ClassUnitScorer : public UnitScorer {
 public:
  ClassUnitScorer(std::shared_ptr<const NGramModel> lm, double oov_floor, TagScheme scheme,
                  ClassLmOptions options);

  std::vector<WordId> initial_history() const override;
  bool extends_across_space(std::string_view pending) const override;
  Scored score_unit(std::vector<WordId>& history, std::string_view unit) const override;
  double score_end(std::span<const WordId> history) const override;

 private:
  WordUnitScorer words_;
  TagScheme scheme_;
  ClassLmOptions options_;
};

/// Prefix beam search under a semantic LM (`config.lm`, trained on
/// transform_corpus output) with the dictionary bonus. Throws
/// kInvalidArgument for negative gamma.
DecodeResult decode_with_class_lm(const Posteriorgram& pg, const Alphabet& alphabet,
                                  const DecodeConfig& config, const ClassLmOptions& options);

}  // namespace entctc

#endif  // ENTCTC_SEMLM_HPP_
