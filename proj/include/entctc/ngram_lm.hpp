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

#ifndef ENTCTC_NGRAM_LM_HPP_
#define ENTCTC_NGRAM_LM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entctc {

using WordId = std::int32_t;
inline constexpr WordId kNoWord = -1;

/// ln(1e-10): score of a word missing from a model without <unk>.
inline constexpr double kDefaultOovFloor = -23.025850929940457;

inline constexpr const char* kSentenceBegin = "<s>";
inline constexpr const char* kSentenceEnd = "</s>";
inline constexpr const char* kUnknownWord = "<unk>";

/// Backoff n-gram model. All probabilities and backoff weights are natural
/// logs; ARPA's log10 values are converted at the file boundary. Read-only
/// after construction, so concurrent scoring needs no locking.
class NGramModel {
 public:
  static constexpr int kMaxOrder = 8;

  struct Entry {
    double log_prob = 0.0;
    double backoff = 0.0;
  };

  struct Key {
    std::array<WordId, kMaxOrder> ids;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };
  using Table = std::unordered_map<Key, Entry, KeyHash>;

  /// Builds an empty model of `order` over `vocab`. Ids follow vocab order.
  NGramModel(int order, std::vector<std::string> vocab);

  int order() const noexcept { return order_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  const std::string& token(WordId id) const { return vocab_.at(static_cast<std::size_t>(id)); }

  /// kNoWord when absent.
  WordId id(std::string_view token) const;
  WordId begin_id() const noexcept { return bos_; }
  WordId end_id() const noexcept { return eos_; }
  WordId unk_id() const noexcept { return unk_; }

  /// Sets the entry for `ngram` (length 1..order); every word must be a
  /// vocabulary id.
  void set(std::span<const WordId> ngram, Entry entry);
  const Entry* find(std::span<const WordId> ngram) const;
  const Table& table(int n) const { return tables_.at(static_cast<std::size_t>(n - 1)); }
  std::size_t count(int n) const { return table(n).size(); }

  /// Throws kParse if some n-gram of order k > 1 lacks its (k-1)-word prefix.
  void check_prefixes() const;

  /// Backoff score of `word` after `context`. Only the last order-1 context
  /// words are consulted. Unknown words map to <unk> when the model has
  /// one; otherwise the word scores `oov_floor` outright.
  double score_word(std::span<const WordId> context, WordId word,
                    double oov_floor = kDefaultOovFloor) const;
  double score_word(std::span<const std::string> context, std::string_view word,
                    double oov_floor = kDefaultOovFloor) const;

  /// Sum of word scores with <s> history and a final </s>.
  double score_sequence(std::span<const std::string> tokens,
                        double oov_floor = kDefaultOovFloor) const;

  /// Maps tokens to ids, substituting <unk> (or kNoWord) for unknown ones.
  std::vector<WordId> lookup(std::span<const std::string> tokens) const;

 private:
  Key make_key(std::span<const WordId> ngram) const;

  int order_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<Table> tables_;
  WordId bos_ = kNoWord;
  WordId eos_ = kNoWord;
  WordId unk_ = kNoWord;
};

/// Whitespace tokenization.
std::vector<std::string> tokenize(std::string_view text);

NGramModel load_arpa(const std::string& path);
NGramModel read_arpa(std::istream& in);
void write_arpa(const NGramModel& model, const std::string& path);
void write_arpa(const NGramModel& model, std::ostream& out);

inline constexpr double kDefaultDiscount = 0.4;

/// Interpolated absolute discounting. Each sentence is padded as
/// <s> w1 .. wn </s>. The unigram level interpolates with a uniform
/// distribution over the observed words, </s> and <unk>; each higher order
/// interpolates with the next lower one, and the interpolation weight is
/// stored as the context's backoff weight. Throws kEmptyCorpus.
NGramModel build_from_corpus(std::span<const std::vector<std::string>> corpus, int order,
                             double discount = kDefaultDiscount);

}  // namespace entctc

#endif  // ENTCTC_NGRAM_LM_HPP_
