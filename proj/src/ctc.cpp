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

#include "entctc/ctc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entctc/error.hpp"
#include "log_math.hpp"

namespace entctc {

namespace {

std::vector<Index> extend_with_blanks(const Posteriorgram& pg, std::span<const Index> label,
                                      Index blank) {
  std::vector<Index> extended;
  extended.reserve(2 * label.size() + 1);
  extended.push_back(blank);
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == blank || label[i] >= pg.vocab_size()) {
      throw Error(ErrorCode::kInvalidLabel,
                  "label position " + std::to_string(i) + " holds invalid index " +
                      std::to_string(label[i]),
                  i);
    }
    extended.push_back(label[i]);
    extended.push_back(blank);
  }
  return extended;
}

// alpha[t][s]: log mass of prefixes of alignments ending at state s in frame t.
std::vector<double> forward(const Posteriorgram& pg, const std::vector<Index>& ext) {
  const std::size_t frames = pg.frames();
  const std::size_t states = ext.size();
  std::vector<double> alpha(frames * states, kLogZero);
  alpha[0] = pg.at(0, ext[0]);
  if (states > 1) alpha[1] = pg.at(0, ext[1]);
  for (std::size_t t = 1; t < frames; ++t) {
    const double* prev = &alpha[(t - 1) * states];
    double* cur = &alpha[t * states];
    for (std::size_t s = 0; s < states; ++s) {
      double sum = prev[s];
      if (s >= 1) sum = log_add(sum, prev[s - 1]);
      if (s >= 2 && ext[s] != ext[0] && ext[s] != ext[s - 2]) sum = log_add(sum, prev[s - 2]);
      cur[s] = sum + pg.at(t, ext[s]);
    }
  }
  return alpha;
}

// beta[t][s]: log mass of alignment suffixes after frame t, given state s at
// frame t. The frame-t emission itself is excluded.
std::vector<double> backward(const Posteriorgram& pg, const std::vector<Index>& ext) {
  const std::size_t frames = pg.frames();
  const std::size_t states = ext.size();
  std::vector<double> beta(frames * states, kLogZero);
  beta[(frames - 1) * states + states - 1] = 0.0;
  if (states > 1) beta[(frames - 1) * states + states - 2] = 0.0;
  for (std::size_t t = frames - 1; t-- > 0;) {
    const double* next = &beta[(t + 1) * states];
    double* cur = &beta[t * states];
    for (std::size_t s = 0; s < states; ++s) {
      double sum = next[s] + pg.at(t + 1, ext[s]);
      if (s + 1 < states) sum = log_add(sum, next[s + 1] + pg.at(t + 1, ext[s + 1]));
      if (s + 2 < states && ext[s + 2] != ext[0] && ext[s + 2] != ext[s]) {
        sum = log_add(sum, next[s + 2] + pg.at(t + 1, ext[s + 2]));
      }
      cur[s] = sum;
    }
  }
  return beta;
}

double forward_total(const std::vector<double>& alpha, std::size_t frames, std::size_t states) {
  const double* last = &alpha[(frames - 1) * states];
  return states > 1 ? log_add(last[states - 1], last[states - 2]) : last[0];
}

}  // namespace

double ctc_log_prob(const Posteriorgram& pg, std::span<const Index> label, Index blank) {
  const auto ext = extend_with_blanks(pg, label, blank);
  std::size_t needed = label.size();
  for (std::size_t i = 1; i < label.size(); ++i) needed += label[i] == label[i - 1];
  if (needed > pg.frames()) return kLogZero;
  return forward_total(forward(pg, ext), pg.frames(), ext.size());
}

CtcTotals ctc_forward_backward_totals(const Posteriorgram& pg, std::span<const Index> label,
                                      Index blank) {
  const auto ext = extend_with_blanks(pg, label, blank);
  const auto alpha = forward(pg, ext);
  const auto beta = backward(pg, ext);
  double back = beta[0] + pg.at(0, ext[0]);
  if (ext.size() > 1) back = log_add(back, beta[1] + pg.at(0, ext[1]));
  return {forward_total(alpha, pg.frames(), ext.size()), back};
}

CtcLossGrad ctc_loss_and_grad(const Posteriorgram& pg, std::span<const Index> label,
                              Index blank) {
  const auto ext = extend_with_blanks(pg, label, blank);
  const std::size_t frames = pg.frames();
  const std::size_t states = ext.size();
  const std::size_t vocab = pg.vocab_size();
  const auto alpha = forward(pg, ext);
  const double log_p = forward_total(alpha, frames, states);
  if (log_p == kLogZero) {
    throw Error(ErrorCode::kInfeasibleLabel, "label has zero probability under the posteriorgram");
  }
  const auto beta = backward(pg, ext);

  CtcLossGrad result{-log_p, std::vector<double>(frames * vocab, 0.0)};
  std::vector<double> occupancy(vocab);
  for (std::size_t t = 0; t < frames; ++t) {
    std::fill(occupancy.begin(), occupancy.end(), kLogZero);
    for (std::size_t s = 0; s < states; ++s) {
      occupancy[ext[s]] = log_add(occupancy[ext[s]], alpha[t * states + s] + beta[t * states + s]);
    }
    for (std::size_t v = 0; v < vocab; ++v) {
      result.grad[t * vocab + v] = -std::exp(occupancy[v] - log_p);
    }
  }
  return result;
}

std::vector<Index> greedy_path(const Posteriorgram& pg, Index blank) {
  std::vector<Index> out;
  std::optional<Index> previous;
  for (std::size_t t = 0; t < pg.frames(); ++t) {
    const auto row = pg.frame(t);
    const auto best = static_cast<Index>(std::max_element(row.begin(), row.end()) - row.begin());
    if (best != blank && best != previous) out.push_back(best);
    previous = best;
  }
  return out;
}

std::string greedy_decode(const Posteriorgram& pg, const Alphabet& alphabet) {
  return alphabet.decode(greedy_path(pg, alphabet.blank_index()));
}

Labeling brute_force_best_labeling(const Posteriorgram& pg, const Alphabet& alphabet,
                                   std::size_t max_len) {
  if (pg.vocab_size() > 6 || pg.frames() > 8) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exhaustive search is limited to V <= 6 and T <= 8");
  }
  if (pg.vocab_size() != alphabet.size()) {
    throw Error(ErrorCode::kShapeMismatch, "posteriorgram and alphabet sizes differ");
  }
  const Index blank = alphabet.blank_index();
  const std::size_t limit = std::min(max_len, pg.frames());
  std::vector<Index> symbols;
  for (Index v = 0; v < pg.vocab_size(); ++v) {
    if (v != blank) symbols.push_back(v);
  }

  Labeling best{{}, "", ctc_log_prob(pg, {}, blank)};
  std::vector<Index> current;
  // Depth-first in lexicographic order; strict improvement keeps the
  // smallest sequence on ties.
  auto visit = [&](auto&& self) -> void {
    if (current.size() == limit) return;
    for (Index v : symbols) {
      current.push_back(v);
      const double lp = ctc_log_prob(pg, current, blank);
      if (lp > best.log_prob) best = {current, {}, lp};
      self(self);
      current.pop_back();
    }
  };
  visit(visit);
  best.text = alphabet.decode(best.indices);
  return best;
}

}  // namespace entctc
