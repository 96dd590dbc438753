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

#ifndef ENTCTC_EVALKIT_HPP_
#define ENTCTC_EVALKIT_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "entctc/alphabet.hpp"

namespace entctc {

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct CategoryCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  PrfScores scores() const;
};

/// Precision tp/(tp+fp), recall tp/(tp+fn), F1 their harmonic mean; each is
/// 0 when its denominator is 0.
PrfScores prf(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvalReport {
  std::array<CategoryCounts, 3> per_category{};  // indexed by Category
  PrfScores micro;
  PrfScores macro;
  std::size_t utterances = 0;
  std::size_t dropped_hyp_tags = 0;
  std::size_t dropped_ref_tags = 0;

  const CategoryCounts& counts(Category c) const {
    return per_category[static_cast<std::size_t>(c)];
  }
  std::string to_json() const;
  /// Fixed-width table: Person, Location, Organization, Micro average and
  /// Macro average rows with precision, recall and F1 columns.
  std::string to_table() const;
};

/// Entity-level scoring. Both sides are uppercased, parsed leniently
/// (half-labeled tags discarded) and collapsed to (category, surface) sets
/// per utterance; counts are pooled over utterances. Micro scores come from
/// counts pooled over categories; macro scores average the per-category
/// precision, recall and F1 over categories that occur in either side.
/// Throws kLengthMismatch.
EvalReport evaluate_ner(std::span<const std::string> refs, std::span<const std::string> hyps,
                        const TagScheme& scheme);

struct WerCounts {
  std::size_t edits = 0;
  std::size_t ref_words = 0;
  std::size_t hyp_words = 0;
  /// The reference had no words; rate() then reports edits over 1.
  bool empty_reference = false;
  double rate() const;
};

/// Word-level Levenshtein distance between tag-stripped, uppercased,
/// whitespace-tokenized transcripts.
WerCounts wer_counts(std::string_view ref, std::string_view hyp, const TagScheme& scheme);
double wer(std::string_view ref, std::string_view hyp, const TagScheme& scheme);

/// Sum of edits over sum of reference words. Throws kLengthMismatch.
WerCounts wer_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                     const TagScheme& scheme);

}  // namespace entctc

#endif  // ENTCTC_EVALKIT_HPP_
