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

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "entctc/ctc.hpp"
#include "entctc/error.hpp"
#include "test_util.hpp"

namespace entctc {
namespace {

using testing::enumerate_labelings;
using testing::pg_from_probs;
using testing::random_pg;

TEST_CASE("small hand cases") {
  const std::vector<Index> a{1}, aa{1, 1};
  CHECK(ctc_log_prob(pg_from_probs({{0.3, 0.7}}), a, 0) == doctest::Approx(std::log(0.7)));
  const auto uniform = pg_from_probs({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(ctc_log_prob(uniform, a, 0) == doctest::Approx(std::log(0.75)).epsilon(1e-12));
  CHECK(ctc_log_prob(uniform, aa, 0) == -INFINITY);
  CHECK(ctc_log_prob(pg_from_probs({{0.2, 0.8}, {0.9, 0.1}, {0.5, 0.5}}), aa, 0) ==
        doctest::Approx(std::log(0.8 * 0.9 * 0.5)));
  CHECK(ctc_log_prob(uniform, std::vector<Index>{}, 0) == doctest::Approx(std::log(0.25)));
  CHECK_THROWS_AS(ctc_log_prob(uniform, std::vector<Index>{0}, 0), Error);
  CHECK_THROWS_AS(ctc_log_prob(uniform, std::vector<Index>{2}, 0), Error);
}

TEST_CASE("forward recursion matches alignment enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t T = 1 + rng() % 5, V = 2 + rng() % 3;
    const auto pg = random_pg(T, V, rng);
    const Index blank = static_cast<Index>(rng() % V);
    for (const auto& [label, mass] : enumerate_labelings(pg, blank)) {
      CHECK(std::exp(ctc_log_prob(pg, label, blank)) == doctest::Approx(mass).epsilon(1e-10));
    }
  }
}

TEST_CASE("probabilities over all labelings sum to one") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t T = 1 + rng() % 6, V = 2 + rng() % 3;
    const auto pg = random_pg(T, V, rng);
    double total = 0.0;
    for (const auto& entry : enumerate_labelings(pg, 0)) {
      total += std::exp(ctc_log_prob(pg, entry.first, 0));
    }
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
}

TEST_CASE("forward and backward totals agree") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t T = 2 + rng() % 30, V = 2 + rng() % 6;
    const auto pg = random_pg(T, V, rng);
    std::vector<Index> label(rng() % (T / 2 + 1));
    for (auto& l : label) l = 1 + static_cast<Index>(rng() % (V - 1));
    const auto totals = ctc_forward_backward_totals(pg, label, 0);
    if (std::isinf(totals.forward)) {
      CHECK(std::isinf(totals.backward));
      continue;
    }
    CHECK(std::abs(totals.forward - totals.backward) <= 1e-10 * std::abs(totals.forward) + 1e-12);
  }
}

TEST_CASE("loss and gradient") {
  const auto sharp = pg_from_probs({{0.0, 1.0}});
  const std::vector<Index> a{1};
  CHECK(ctc_loss_and_grad(sharp, a, 0).loss == doctest::Approx(0.0));
  CHECK_THROWS_AS(ctc_loss_and_grad(pg_from_probs({{0.5, 0.5}, {0.5, 0.5}}),
                                    std::vector<Index>{1, 1}, 0),
                  Error);

  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pg = random_pg(4, 3, rng);
    std::vector<Index> label(1 + rng() % 2);
    for (auto& l : label) l = 1 + static_cast<Index>(rng() % 2);
    const auto lg = ctc_loss_and_grad(pg, label, 0);
    CHECK(lg.loss == doctest::Approx(-ctc_log_prob(pg, label, 0)).epsilon(1e-12));
    const double h = 1e-5;
    std::vector<double> values(pg.values().begin(), pg.values().end());
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto plus = values, minus = values;
      plus[i] += h;
      minus[i] -= h;
      const double fd = (-ctc_log_prob(Posteriorgram(4, 3, plus), label, 0) +
                         ctc_log_prob(Posteriorgram(4, 3, minus), label, 0)) /
                        (2 * h);
      CHECK(std::abs(fd - lg.grad[i]) <= 1e-5);
    }
  }
}

TEST_CASE("long inputs do not underflow") {
  // T = 10000 frames, every entry >= e^-30.
  const std::size_t T = 10000, V = 4;
  std::vector<double> values(T * V);
  for (std::size_t t = 0; t < T; ++t) {
    const double low = -30.0;
    const double high = std::log1p(-3 * std::exp(low));
    for (std::size_t v = 0; v < V; ++v) values[t * V + v] = low;
    values[t * V + (t % 7 == 0 ? 1 + (t / 7) % 3 : 0)] = high;
  }
  const Posteriorgram pg(T, V, values);
  std::vector<Index> label;
  for (std::size_t t = 0; t < T; t += 7) label.push_back(static_cast<Index>(1 + (t / 7) % 3));
  const double lp = ctc_log_prob(pg, label, 0);
  CHECK(std::isfinite(lp));
  CHECK(lp <= 0.0);
  const auto totals = ctc_forward_backward_totals(pg, label, 0);
  CHECK(std::abs(totals.forward - totals.backward) <= 1e-10 * std::abs(totals.forward));
  const auto lg = ctc_loss_and_grad(pg, label, 0);
  for (double g : lg.grad) CHECK(std::isfinite(g));
  // Label far from the dominant path is still finite.
  CHECK(std::isfinite(ctc_log_prob(pg, std::vector<Index>{3, 3, 3}, 0)));
}

TEST_CASE("greedy decoding") {
  const Alphabet ab = testing::small_alphabet("AB");
  const auto pg = pg_from_probs({{0.1, 0.8, 0.1}, {0.1, 0.8, 0.1}, {0.8, 0.1, 0.1}, {0.1, 0.1, 0.8}});
  CHECK(greedy_decode(pg, ab) == "AB");
  CHECK(greedy_decode(pg_from_probs({{0.8, 0.1, 0.1}}), ab).empty());
  // Ties go to the lowest index.
  CHECK(greedy_path(pg_from_probs({{0.2, 0.4, 0.4}}), 0) == std::vector<Index>{1});
}

TEST_CASE("brute force best labeling") {
  const Alphabet ab = testing::small_alphabet("AB");
  const Alphabet a1 = testing::small_alphabet("A");
  const Alphabet big("ABCDEFG", 0);
  const auto clean = pg_from_probs({{1e-9, 1 - 2e-9, 1e-9}, {1e-9, 1e-9, 1 - 2e-9}});
  const auto best = brute_force_best_labeling(clean, ab, 8);
  CHECK(best.text == "AB");
  CHECK(best.log_prob == doctest::Approx(0.0).epsilon(1e-6));

  const auto tie = brute_force_best_labeling(pg_from_probs({{0.5, 0.5}}), a1, 8);
  CHECK(tie.text.empty());
  CHECK(tie.log_prob == doctest::Approx(std::log(0.5)));

  CHECK_THROWS_AS(brute_force_best_labeling(Posteriorgram(1, 8, std::vector<double>(8, -std::log(8.0))), big, 8),
                  Error);
  CHECK_THROWS_AS(brute_force_best_labeling(random_pg(9, 3, *std::make_unique<std::mt19937_64>(1)), ab, 8),
                  Error);

  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t T = 1 + rng() % 6;
    const auto pg = random_pg(T, 3, rng);
    const auto result = brute_force_best_labeling(pg, ab, 8);
    const auto greedy = ab.encode(greedy_decode(pg, ab));
    CHECK(result.log_prob >= ctc_log_prob(pg, greedy, 0) - 1e-12);
    // Oracle: enumeration picks the same maximum.
    double max = -INFINITY;
    for (const auto& [label, mass] : enumerate_labelings(pg, 0)) max = std::max(max, mass);
    CHECK(std::exp(result.log_prob) == doctest::Approx(max).epsilon(1e-10));
  }
}

}  // namespace
}  // namespace entctc
