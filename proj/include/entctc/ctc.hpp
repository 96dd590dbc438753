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

#ifndef ENTCTC_CTC_HPP_
#define ENTCTC_CTC_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "entctc/alphabet.hpp"
#include "entctc/posteriorgram.hpp"

namespace entctc {

// All CTC routines treat the posteriorgram entries as free log-probability
// inputs: nothing is renormalized, so gradients are taken with respect to
// the stored entries themselves.

/// log P(label | pg), summing over every alignment that collapses to
/// `label`. Returns -inf when the label cannot fit in the available frames.
/// Throws kInvalidLabel if the label holds the blank or an index >= V.
double ctc_log_prob(const Posteriorgram& pg, std::span<const Index> label, Index blank);

/// Totals from the alpha and beta recursions separately; they agree up to
/// rounding.
struct CtcTotals {
  double forward;
  double backward;
};
CtcTotals ctc_forward_backward_totals(const Posteriorgram& pg, std::span<const Index> label,
                                      Index blank);

struct CtcLossGrad {
  double loss;                // -log P(label | pg)
  std::vector<double> grad;   // d loss / d log_prob[t][v], row-major T x V
};

/// Throws kInfeasibleLabel when P(label | pg) is zero.
CtcLossGrad ctc_loss_and_grad(const Posteriorgram& pg, std::span<const Index> label, Index blank);

/// Best path: frame argmax (lowest index wins ties), merge repeats, drop
/// blanks.
std::vector<Index> greedy_path(const Posteriorgram& pg, Index blank);
std::string greedy_decode(const Posteriorgram& pg, const Alphabet& alphabet);

struct Labeling {
  std::vector<Index> indices;
  std::string text;
  double log_prob;
};

/// Exhaustive search over every label sequence up to min(max_len, T)
/// symbols. Ties go to the lexicographically smallest index sequence. Throws
/// kInstanceTooLarge unless V <= 6 and T <= 8.
Labeling brute_force_best_labeling(const Posteriorgram& pg, const Alphabet& alphabet,
                                   std::size_t max_len);

}  // namespace entctc

#endif  // ENTCTC_CTC_HPP_
