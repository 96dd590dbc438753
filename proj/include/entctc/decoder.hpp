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

#ifndef ENTCTC_DECODER_HPP_
#define ENTCTC_DECODER_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entctc/alphabet.hpp"
#include "entctc/ngram_lm.hpp"
#include "entctc/posteriorgram.hpp"

namespace entctc {

struct DecodeConfig {
  double alpha = 1.96;            // LM weight
  double beta = 6.0;              // per-word bonus
  std::size_t beam_width = 1024;
  std::shared_ptr<const NGramModel> lm;  // optional
  double oov_floor = kDefaultOovFloor;

  /// Throws kInvalidArgument for a zero beam or non-finite weights.
  void validate() const;
};

/// A decoded hypothesis. score = ctc_log_prob + alpha * lm_log_prob +
/// beta * word_count + bonus.
struct DecodeResult {
  std::string text;
  std::vector<Index> labels;
  double score = 0.0;
  double ctc_log_prob = 0.0;
  double lm_log_prob = 0.0;
  std::size_t word_count = 0;
  double bonus = 0.0;
};

/// Decides what the language model sees. The beam search accumulates the
/// characters since the last completed unit; a space completes the unit
/// unless `extends_across_space` says otherwise, and the end of the
/// utterance completes whatever is pending.
class UnitScorer {
 public:
  struct Scored {
    double lm_log_prob = 0.0;
    double bonus = 0.0;
    std::size_t words = 0;
  };

  virtual ~UnitScorer() = default;

  /// LM history at the start of an utterance.
  virtual std::vector<WordId> initial_history() const = 0;
  virtual bool extends_across_space(std::string_view pending) const;
  /// Scores a completed unit and advances `history` past it.
  virtual Scored score_unit(std::vector<WordId>& history, std::string_view unit) const = 0;
  /// Score of ending the utterance after `history`.
  virtual double score_end(std::span<const WordId> history) const = 0;
};

/// Each whitespace-delimited token is one LM word, tag symbols included.
class WordUnitScorer : public UnitScorer {
 public:
  WordUnitScorer(std::shared_ptr<const NGramModel> lm, double oov_floor);

  std::vector<WordId> initial_history() const override;
  Scored score_unit(std::vector<WordId>& history, std::string_view unit) const override;
  double score_end(std::span<const WordId> history) const override;

 private:
  std::shared_ptr<const NGramModel> lm_;
  double oov_floor_;
};

/// CTC prefix beam search with shallow LM fusion. Hypotheses are label
/// prefixes carrying blank- and non-blank-ending alignment mass; after each
/// frame the top `beam_width` by total score survive. Exact score ties are
/// resolved toward the lexicographically smaller label sequence.
DecodeResult beam_search(const Posteriorgram& pg, const Alphabet& alphabet,
                         const DecodeConfig& config, const UnitScorer& scorer);

/// beam_search with WordUnitScorer over `config.lm`.
DecodeResult prefix_beam_search(const Posteriorgram& pg, const Alphabet& alphabet,
                                const DecodeConfig& config);

/// Decodes every posteriorgram independently on up to `jobs` threads.
/// Results follow input order. The first failing item (by index) is
/// rethrown with `Error::item()` set.
std::vector<DecodeResult> decode_batch(std::span<const Posteriorgram> pgs,
                                       const Alphabet& alphabet, const DecodeConfig& config,
                                       std::size_t jobs = 1);
std::vector<DecodeResult> decode_batch(std::span<const Posteriorgram> pgs,
                                       const Alphabet& alphabet, const DecodeConfig& config,
                                       const UnitScorer& scorer, std::size_t jobs = 1);

}  // namespace entctc

#endif  // ENTCTC_DECODER_HPP_
