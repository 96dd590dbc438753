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

#include "entctc/ngram_lm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "entctc/error.hpp"

namespace entctc {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr double kArpaNeverLog10 = -99.0;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) fields.push_back(s.substr(start, i - start));
  }
  return fields;
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::kParse, "ARPA line " + std::to_string(line) + ": " + what, line);
}

struct RawEntry {
  std::vector<std::string> words;
  double log10_prob;
  double log10_backoff;
  std::size_t line;
};

void format_log10(std::ostream& out, double natural_log) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.7f", natural_log / kLn10);
  out << buffer;
}

}  // namespace

std::size_t NGramModel::KeyHash::operator()(const Key& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (WordId id : key.ids) {
    h ^= static_cast<std::uint32_t>(id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

NGramModel::NGramModel(int order, std::vector<std::string> vocab)
    : order_(order), vocab_(std::move(vocab)) {
  if (order_ < 1 || order_ > kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                "n-gram order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  }
  tables_.resize(static_cast<std::size_t>(order_));
  ids_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!ids_.emplace(vocab_[i], static_cast<WordId>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate vocabulary token " + vocab_[i]);
    }
  }
  bos_ = id(kSentenceBegin);
  eos_ = id(kSentenceEnd);
  unk_ = id(kUnknownWord);
}

WordId NGramModel::id(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kNoWord : it->second;
}

NGramModel::Key NGramModel::make_key(std::span<const WordId> ngram) const {
  Key key;
  key.ids.fill(kNoWord);
  std::copy(ngram.begin(), ngram.end(), key.ids.begin());
  return key;
}

void NGramModel::set(std::span<const WordId> ngram, Entry entry) {
  if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_)) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram length outside model order");
  }
  for (WordId w : ngram) {
    if (w < 0 || static_cast<std::size_t>(w) >= vocab_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "n-gram holds an id outside the vocabulary");
    }
  }
  tables_[ngram.size() - 1][make_key(ngram)] = entry;
}

const NGramModel::Entry* NGramModel::find(std::span<const WordId> ngram) const {
  if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_)) return nullptr;
  const auto& table = tables_[ngram.size() - 1];
  const auto it = table.find(make_key(ngram));
  return it == table.end() ? nullptr : &it->second;
}

void NGramModel::check_prefixes() const {
  for (int n = 2; n <= order_; ++n) {
    for (const auto& [key, entry] : table(n)) {
      if (!find(std::span<const WordId>(key.ids.data(), static_cast<std::size_t>(n - 1)))) {
        std::string words;
        for (int i = 0; i < n; ++i) words += (i ? " " : "") + token(key.ids[i]);
        throw Error(ErrorCode::kParse, "n-gram \"" + words + "\" has no prefix entry");
      }
    }
  }
}

double NGramModel::score_word(std::span<const WordId> context, WordId word,
                              double oov_floor) const {
  if (word < 0 || static_cast<std::size_t>(word) >= vocab_.size()) {
    if (unk_ == kNoWord) return oov_floor;
    word = unk_;
  }
  const std::size_t history = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  std::array<WordId, kMaxOrder> ngram;
  std::copy(context.end() - static_cast<std::ptrdiff_t>(history), context.end(), ngram.begin());
  double backoff = 0.0;
  for (std::size_t k = history;; --k) {
    // ngram[history - k, history) is the active context; append the word.
    const std::size_t begin = history - k;
    ngram[history] = word;
    if (const Entry* e = find(std::span<const WordId>(ngram.data() + begin, k + 1))) {
      return backoff + e->log_prob;
    }
    if (k == 0) break;
    if (const Entry* ctx = find(std::span<const WordId>(ngram.data() + begin, k))) {
      backoff += ctx->backoff;
    }
  }
  return backoff + oov_floor;
}

std::vector<WordId> NGramModel::lookup(std::span<const std::string> tokens) const {
  std::vector<WordId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    const WordId w = id(t);
    ids.push_back(w == kNoWord ? unk_ : w);
  }
  return ids;
}

double NGramModel::score_word(std::span<const std::string> context, std::string_view word,
                              double oov_floor) const {
  const auto ids = lookup(context);
  return score_word(ids, id(word), oov_floor);
}

double NGramModel::score_sequence(std::span<const std::string> tokens, double oov_floor) const {
  std::vector<WordId> history{bos_};
  double total = 0.0;
  for (const auto& t : tokens) {
    WordId w = id(t);
    total += score_word(history, w, oov_floor);
    history.push_back(w == kNoWord ? unk_ : w);
  }
  return total + score_word(history, eos_, oov_floor);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto f : split_fields(text)) out.emplace_back(f);
  return out;
}

NGramModel read_arpa(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (!std::getline(in, line)) return std::nullopt;
    ++line_no;
    return trim(line);
  };

  bool found_data = false;
  while (auto l = next_line()) {
    if (*l == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw Error(ErrorCode::kMissingSection, "ARPA file has no \\data\\ section");

  std::vector<std::size_t> declared;
  std::optional<std::string_view> pending;
  while ((pending = next_line())) {
    if (pending->empty()) {
      if (!declared.empty()) break;
      continue;
    }
    if (pending->front() == '\\') break;
    const auto fields = split_fields(*pending);
    const auto eq = fields.size() == 2 ? fields[1].find('=') : std::string_view::npos;
    if (fields.size() != 2 || fields[0] != "ngram" || eq == std::string_view::npos) {
      throw parse_error(line_no, "expected \"ngram N=count\"");
    }
    std::size_t n = 0, count = 0;
    const auto lhs = fields[1].substr(0, eq), rhs = fields[1].substr(eq + 1);
    if (std::from_chars(lhs.data(), lhs.data() + lhs.size(), n).ptr != lhs.data() + lhs.size() ||
        std::from_chars(rhs.data(), rhs.data() + rhs.size(), count).ptr !=
            rhs.data() + rhs.size() ||
        n != declared.size() + 1) {
      throw parse_error(line_no, "bad n-gram count declaration");
    }
    declared.push_back(count);
  }
  if (declared.empty()) throw parse_error(line_no, "no n-gram counts declared");
  if (declared.size() > static_cast<std::size_t>(NGramModel::kMaxOrder)) {
    throw parse_error(line_no, "order exceeds " + std::to_string(NGramModel::kMaxOrder));
  }

  const std::size_t order = declared.size();
  std::vector<std::vector<RawEntry>> raw(order);
  for (std::size_t n = 1; n <= order; ++n) {
    const std::string header = "\\" + std::to_string(n) + "-grams:";
    while (pending && pending->empty()) pending = next_line();
    if (!pending || *pending == "\\end\\") {
      throw Error(ErrorCode::kMissingSection, "ARPA file lacks the " + header + " section");
    }
    if (*pending != header) throw parse_error(line_no, "expected " + header);
    while ((pending = next_line())) {
      if (pending->empty()) continue;
      if (pending->front() == '\\') break;
      const auto fields = split_fields(*pending);
      if (fields.size() != n + 1 && fields.size() != n + 2) {
        throw parse_error(line_no, "expected " + std::to_string(n) + " words");
      }
      const auto prob = parse_double(fields[0]);
      const auto bo = fields.size() == n + 2 ? parse_double(fields[n + 1]) : std::optional(0.0);
      if (!prob || !bo) throw parse_error(line_no, "malformed number");
      RawEntry entry{{}, *prob, *bo, line_no};
      for (std::size_t i = 1; i <= n; ++i) entry.words.emplace_back(fields[i]);
      raw[n - 1].push_back(std::move(entry));
    }
    if (raw[n - 1].size() != declared[n - 1]) {
      throw Error(ErrorCode::kCountMismatch,
                  header + " holds " + std::to_string(raw[n - 1].size()) + " entries, header declares " +
                      std::to_string(declared[n - 1]));
    }
  }
  while (pending && pending->empty()) pending = next_line();
  if (!pending || *pending != "\\end\\") {
    throw Error(ErrorCode::kMissingSection, "ARPA file lacks \\end\\");
  }

  std::vector<std::string> vocab;
  vocab.reserve(raw[0].size());
  for (const auto& e : raw[0]) vocab.push_back(e.words[0]);
  std::optional<NGramModel> model;
  try {
    model.emplace(static_cast<int>(order), std::move(vocab));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("ARPA unigrams: ") + e.what());
  }
  std::vector<WordId> ids;
  for (const auto& section : raw) {
    for (const auto& e : section) {
      ids.clear();
      for (const auto& w : e.words) {
        const WordId id = model->id(w);
        if (id == kNoWord) throw parse_error(e.line, "word \"" + w + "\" is not a unigram");
        ids.push_back(id);
      }
      if (ids.size() > 1 && !model->find(std::span<const WordId>(ids.data(), ids.size() - 1))) {
        throw parse_error(e.line, "n-gram prefix is missing from the lower order");
      }
      if (model->find(ids)) throw parse_error(e.line, "duplicate n-gram");
      model->set(ids, {e.log10_prob * kLn10, e.log10_backoff * kLn10});
    }
  }
  return std::move(*model);
}

NGramModel load_arpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open ARPA file " + path);
  return read_arpa(in);
}

void write_arpa(const NGramModel& model, std::ostream& out) {
  out << "\n\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out << "ngram " << n << '=' << model.count(n) << '\n';
  }
  for (int n = 1; n <= model.order(); ++n) {
    out << "\n\\" << n << "-grams:\n";
    std::vector<const std::pair<const NGramModel::Key, NGramModel::Entry>*> rows;
    rows.reserve(model.count(n));
    for (const auto& row : model.table(n)) rows.push_back(&row);
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->first.ids < b->first.ids; });
    for (const auto* row : rows) {
      format_log10(out, row->second.log_prob);
      out << '\t';
      for (int i = 0; i < n; ++i) out << (i ? " " : "") << model.token(row->first.ids[i]);
      if (n < model.order()) {
        out << '\t';
        format_log10(out, row->second.backoff);
      }
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

void write_arpa(const NGramModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path);
  write_arpa(model, out);
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path);
}

NGramModel build_from_corpus(std::span<const std::vector<std::string>> corpus, int order,
                             double discount) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "cannot build an LM from no sentences");
  if (!(discount > 0.0 && discount < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "discount must lie in (0, 1)");
  }
  if (order < 1 || order > NGramModel::kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported order " + std::to_string(order));
  }

  std::map<std::string, int> words;
  for (const auto& sentence : corpus) {
    for (const auto& w : sentence) {
      if (w == kSentenceBegin || w == kSentenceEnd || w == kUnknownWord) {
        throw Error(ErrorCode::kInvalidArgument, "corpus uses reserved token " + w);
      }
      words.emplace(w, 0);
    }
  }
  std::vector<std::string> vocab{kSentenceBegin, kSentenceEnd, kUnknownWord};
  for (const auto& [w, unused] : words) vocab.push_back(w);
  NGramModel model(order, vocab);
  const WordId bos = model.begin_id(), eos = model.end_id();

  // counts[n-1]: n-gram -> occurrences, ordered for deterministic output.
  std::vector<std::map<std::vector<WordId>, double>> counts(static_cast<std::size_t>(order));
  std::vector<WordId> padded;
  for (const auto& sentence : corpus) {
    padded.assign(1, bos);
    for (const auto& w : sentence) padded.push_back(model.id(w));
    padded.push_back(eos);
    for (int n = 1; n <= order; ++n) {
      for (std::size_t i = (n == 1 ? 1 : 0); i + static_cast<std::size_t>(n) <= padded.size();
           ++i) {
        counts[static_cast<std::size_t>(n - 1)][std::vector<WordId>(
            padded.begin() + static_cast<std::ptrdiff_t>(i),
            padded.begin() + static_cast<std::ptrdiff_t>(i) + n)] += 1.0;
      }
    }
  }

  // Unigrams: discounted counts plus a uniform share over observed types,
  // </s> and <unk>.
  double total = 0.0;
  for (const auto& [gram, c] : counts[0]) total += c;
  const double types = static_cast<double>(counts[0].size());
  const double uniform_size = types + (counts[0].count({model.unk_id()}) ? 0.0 : 1.0);
  const double uniform = discount * types / total / uniform_size;
  model.set(std::vector<WordId>{bos}, {kArpaNeverLog10 * kLn10, 0.0});
  model.set(std::vector<WordId>{model.unk_id()}, {std::log(uniform), 0.0});
  for (const auto& [gram, c] : counts[0]) {
    model.set(gram, {std::log((c - discount) / total + uniform), 0.0});
  }

  for (int n = 2; n <= order; ++n) {
    const auto& grams = counts[static_cast<std::size_t>(n - 1)];
    std::map<std::vector<WordId>, std::pair<double, double>> contexts;  // (total, distinct)
    for (const auto& [gram, c] : grams) {
      auto& stats = contexts[std::vector<WordId>(gram.begin(), gram.end() - 1)];
      stats.first += c;
      stats.second += 1.0;
    }
    std::vector<std::pair<std::vector<WordId>, double>> probs;
    probs.reserve(grams.size());
    for (const auto& [gram, c] : grams) {
      const auto& [ctx_total, ctx_types] = contexts.at({gram.begin(), gram.end() - 1});
      const double weight = discount * ctx_types / ctx_total;
      const double lower = std::exp(model.score_word(
          std::span<const WordId>(gram.data() + 1, gram.size() - 2), gram.back()));
      probs.emplace_back(gram, std::log((c - discount) / ctx_total + weight * lower));
    }
    for (const auto& [ctx, stats] : contexts) {
      const NGramModel::Entry* entry = model.find(ctx);
      model.set(ctx, {entry->log_prob, std::log(discount * stats.second / stats.first)});
    }
    for (const auto& [gram, lp] : probs) model.set(gram, {lp, 0.0});
  }
  return model;
}

}  // namespace entctc
