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

#include "entctc/decoder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "entctc/error.hpp"
#include "log_math.hpp"

namespace entctc {

void DecodeConfig::validate() const {
  if (beam_width < 1) throw Error(ErrorCode::kInvalidArgument, "beam width must be at least 1");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha and beta must be finite");
  }
  if (!std::isfinite(oov_floor)) {
    throw Error(ErrorCode::kInvalidArgument, "OOV floor must be finite");
  }
}

bool UnitScorer::extends_across_space(std::string_view) const { return false; }

WordUnitScorer::WordUnitScorer(std::shared_ptr<const NGramModel> lm, double oov_floor)
    : lm_(std::move(lm)), oov_floor_(oov_floor) {}

std::vector<WordId> WordUnitScorer::initial_history() const {
  if (!lm_) return {};
  return {lm_->begin_id()};
}

UnitScorer::Scored WordUnitScorer::score_unit(std::vector<WordId>& history,
                                              std::string_view unit) const {
  Scored scored{0.0, 0.0, 1};
  if (!lm_) return scored;
  WordId w = lm_->id(unit);
  scored.lm_log_prob = lm_->score_word(history, w, oov_floor_);
  history.push_back(w == kNoWord ? lm_->unk_id() : w);
  const auto keep = static_cast<std::size_t>(lm_->order() - 1);
  if (history.size() > keep) {
    history.erase(history.begin(), history.end() - static_cast<std::ptrdiff_t>(keep));
  }
  return scored;
}

double WordUnitScorer::score_end(std::span<const WordId> history) const {
  return lm_ ? lm_->score_word(history, lm_->end_id(), oov_floor_) : 0.0;
}

namespace {

constexpr std::int32_t kNone = -1;

// One node per distinct label prefix ever kept in the beam.
struct Node {
  std::int32_t parent = kNone;
  Index symbol = 0;
  std::vector<Index> labels;     // full prefix, root excluded
  std::string pending;           // characters of the unit still open
  std::vector<WordId> history;   // LM history after the completed units
  double lm = 0.0;
  double bonus = 0.0;
  std::size_t words = 0;
  std::vector<std::pair<Index, std::int32_t>> children;

  std::int32_t child(Index s) const {
    for (const auto& [sym, id] : children) {
      if (sym == s) return id;
    }
    return kNone;
  }
};

struct Candidate {
  std::int32_t node;    // existing node, or kNone for a new extension
  std::int32_t parent;  // for new extensions
  Index symbol;
  double p_blank = kLogZero;
  double p_nonblank = kLogZero;
  double fixed = 0.0;   // alpha * lm + beta * words + bonus of the prefix
  std::int32_t completion = kNone;
  double score = 0.0;
};

struct Completion {
  std::vector<WordId> history;
  UnitScorer::Scored scored;
};

class BeamSearch {
 public:
  BeamSearch(const Posteriorgram& pg, const Alphabet& alphabet, const DecodeConfig& config,
             const UnitScorer& scorer)
      : pg_(pg), alphabet_(alphabet), config_(config), scorer_(scorer),
        blank_(alphabet.blank_index()), space_(alphabet.index_of(' ')) {}

  DecodeResult run() {
    Node root;
    root.history = scorer_.initial_history();
    nodes_.push_back(std::move(root));
    struct Hyp {
      std::int32_t node;
      double p_blank, p_nonblank;
    };
    std::vector<Hyp> beam{{0, 0.0, kLogZero}};

    for (std::size_t t = 0; t < pg_.frames(); ++t) {
      const auto row = pg_.frame(t);
      candidates_.clear();
      completions_.clear();
      slot_.assign(nodes_.size(), kNone);
      for (const Hyp& h : beam) {
        const Node& node = nodes_[static_cast<std::size_t>(h.node)];
        const double total = log_add(h.p_blank, h.p_nonblank);
        add_blank(h.node, total + row[blank_]);
        for (Index v = 0; v < row.size(); ++v) {
          if (v == blank_ || row[v] == kLogZero) continue;
          double extend = total + row[v];
          if (h.node != 0 && v == node.symbol) {
            add_nonblank(h.node, h.p_nonblank + row[v]);
            extend = h.p_blank + row[v];
          }
          if (extend == kLogZero) continue;
          const std::int32_t child = node.child(v);
          if (child != kNone) {
            add_nonblank(child, extend);
          } else {
            add_extension(h.node, v, extend);
          }
        }
      }

      for (Candidate& c : candidates_) c.score = log_add(c.p_blank, c.p_nonblank) + c.fixed;
      const auto better = [this](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return labels_less(a, b);
      };
      if (candidates_.size() > config_.beam_width) {
        std::nth_element(candidates_.begin(),
                         candidates_.begin() + static_cast<std::ptrdiff_t>(config_.beam_width),
                         candidates_.end(), better);
        candidates_.resize(config_.beam_width);
      }
      std::sort(candidates_.begin(), candidates_.end(), better);

      beam.clear();
      for (const Candidate& c : candidates_) {
        const std::int32_t id = c.node != kNone ? c.node : materialize(c);
        beam.push_back({id, c.p_blank, c.p_nonblank});
      }
    }

    std::optional<DecodeResult> best;
    for (const Hyp& h : beam) {
      const Node& node = nodes_[static_cast<std::size_t>(h.node)];
      DecodeResult r;
      r.ctc_log_prob = log_add(h.p_blank, h.p_nonblank);
      r.lm_log_prob = node.lm;
      r.word_count = node.words;
      r.bonus = node.bonus;
      std::vector<WordId> history = node.history;
      if (!node.pending.empty()) {
        const auto s = scorer_.score_unit(history, node.pending);
        r.lm_log_prob += s.lm_log_prob;
        r.word_count += s.words;
        r.bonus += s.bonus;
      }
      r.lm_log_prob += scorer_.score_end(history);
      r.score = r.ctc_log_prob + config_.alpha * r.lm_log_prob +
                config_.beta * static_cast<double>(r.word_count) + r.bonus;
      r.labels = node.labels;
      if (!best || r.score > best->score ||
          (r.score == best->score && r.labels < best->labels)) {
        best = std::move(r);
      }
    }
    best->text = alphabet_.decode(best->labels);
    return std::move(*best);
  }

 private:
  double fixed_score(double lm, std::size_t words, double bonus) const {
    return config_.alpha * lm + config_.beta * static_cast<double>(words) + bonus;
  }

  Candidate& slot_for(std::int32_t node) {
    std::int32_t& slot = slot_[static_cast<std::size_t>(node)];
    if (slot == kNone) {
      const Node& n = nodes_[static_cast<std::size_t>(node)];
      slot = static_cast<std::int32_t>(candidates_.size());
      candidates_.push_back({node, kNone, 0, kLogZero, kLogZero, fixed_score(n.lm, n.words, n.bonus),
                             kNone, 0.0});
    }
    return candidates_[static_cast<std::size_t>(slot)];
  }

  void add_blank(std::int32_t node, double value) {
    if (value == kLogZero) return;
    Candidate& c = slot_for(node);
    c.p_blank = log_add(c.p_blank, value);
  }

  void add_nonblank(std::int32_t node, double value) {
    if (value == kLogZero) return;
    Candidate& c = slot_for(node);
    c.p_nonblank = log_add(c.p_nonblank, value);
  }

  // Extension of `parent` by `symbol` that has no node yet; unique per frame.
  void add_extension(std::int32_t parent, Index symbol, double value) {
    const Node& p = nodes_[static_cast<std::size_t>(parent)];
    Candidate c{kNone, parent, symbol, kLogZero, value, fixed_score(p.lm, p.words, p.bonus),
                kNone, 0.0};
    if (completes_unit(p, symbol)) {
      Completion done{p.history, {}};
      done.scored = scorer_.score_unit(done.history, p.pending);
      c.fixed = fixed_score(p.lm + done.scored.lm_log_prob, p.words + done.scored.words,
                            p.bonus + done.scored.bonus);
      c.completion = static_cast<std::int32_t>(completions_.size());
      completions_.push_back(std::move(done));
    }
    candidates_.push_back(c);
  }

  bool completes_unit(const Node& parent, Index symbol) const {
    return space_ && symbol == *space_ && !parent.pending.empty() &&
           !scorer_.extends_across_space(parent.pending);
  }

  std::int32_t materialize(const Candidate& c) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    Node child;
    {
      const Node& p = nodes_[static_cast<std::size_t>(c.parent)];
      child.parent = c.parent;
      child.symbol = c.symbol;
      child.labels.reserve(p.labels.size() + 1);
      child.labels = p.labels;
      child.labels.push_back(c.symbol);
      if (c.completion != kNone) {
        Completion& done = completions_[static_cast<std::size_t>(c.completion)];
        child.history = std::move(done.history);
        child.lm = p.lm + done.scored.lm_log_prob;
        child.words = p.words + done.scored.words;
        child.bonus = p.bonus + done.scored.bonus;
      } else {
        child.history = p.history;
        child.lm = p.lm;
        child.words = p.words;
        child.bonus = p.bonus;
        const bool leading_space = space_ && c.symbol == *space_ && p.pending.empty();
        if (!leading_space) {
          child.pending = p.pending;
          child.pending.push_back(alphabet_.symbol(c.symbol));
        }
      }
    }
    nodes_[static_cast<std::size_t>(c.parent)].children.emplace_back(c.symbol, id);
    nodes_.push_back(std::move(child));
    return id;
  }

  // Lexicographic order of the candidates' label sequences.
  bool labels_less(const Candidate& a, const Candidate& b) const {
    const auto& la = nodes_[static_cast<std::size_t>(a.node != kNone ? a.node : a.parent)].labels;
    const auto& lb = nodes_[static_cast<std::size_t>(b.node != kNone ? b.node : b.parent)].labels;
    const bool ea = a.node == kNone, eb = b.node == kNone;
    const std::size_t na = la.size() + (ea ? 1 : 0), nb = lb.size() + (eb ? 1 : 0);
    const std::size_t n = std::min(na, nb);
    for (std::size_t i = 0; i < n; ++i) {
      const Index x = i < la.size() ? la[i] : a.symbol;
      const Index y = i < lb.size() ? lb[i] : b.symbol;
      if (x != y) return x < y;
    }
    return na < nb;
  }

  const Posteriorgram& pg_;
  const Alphabet& alphabet_;
  const DecodeConfig& config_;
  const UnitScorer& scorer_;
  const Index blank_;
  const std::optional<Index> space_;

  std::vector<Node> nodes_;
  std::vector<Candidate> candidates_;
  std::vector<Completion> completions_;
  std::vector<std::int32_t> slot_;
};

}  // namespace

DecodeResult beam_search(const Posteriorgram& pg, const Alphabet& alphabet,
                         const DecodeConfig& config, const UnitScorer& scorer) {
  config.validate();
  if (pg.vocab_size() != alphabet.size()) {
    throw Error(ErrorCode::kShapeMismatch, "posteriorgram has " + std::to_string(pg.vocab_size()) +
                                               " symbols per frame, alphabet has " +
                                               std::to_string(alphabet.size()));
  }
  return BeamSearch(pg, alphabet, config, scorer).run();
}

DecodeResult prefix_beam_search(const Posteriorgram& pg, const Alphabet& alphabet,
                                const DecodeConfig& config) {
  const WordUnitScorer scorer(config.lm, config.oov_floor);
  return beam_search(pg, alphabet, config, scorer);
}

std::vector<DecodeResult> decode_batch(std::span<const Posteriorgram> pgs,
                                       const Alphabet& alphabet, const DecodeConfig& config,
                                       const UnitScorer& scorer, std::size_t jobs) {
  std::vector<DecodeResult> results(pgs.size());
  std::vector<std::exception_ptr> errors(pgs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pgs.size(); i = next++) {
      try {
        results[i] = beam_search(pgs[i], alphabet, config, scorer);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), pgs.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw e.with_item(i);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, e.what()).with_item(i);
    }
  }
  return results;
}

std::vector<DecodeResult> decode_batch(std::span<const Posteriorgram> pgs,
                                       const Alphabet& alphabet, const DecodeConfig& config,
                                       std::size_t jobs) {
  const WordUnitScorer scorer(config.lm, config.oov_floor);
  return decode_batch(pgs, alphabet, config, scorer, jobs);
}

}  // namespace entctc
