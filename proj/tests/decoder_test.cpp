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

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "entctc/ctc.hpp"
#include "entctc/decoder.hpp"
#include "entctc/error.hpp"
#include "entctc/ngram_lm.hpp"
#include "test_util.hpp"

namespace entctc {
namespace {

using testing::enumerate_labelings;
using testing::random_pg;

std::shared_ptr<const NGramModel> lm_from(const std::vector<std::string>& sentences, int order) {
  std::vector<std::vector<std::string>> corpus;
  for (const auto& s : sentences) corpus.push_back(tokenize(s));
  return std::make_shared<const NGramModel>(build_from_corpus(corpus, order));
}

// Q of a labeling computed from its parts.
double q_score(const Posteriorgram& pg, const Alphabet& alphabet, const std::string& text,
               const DecodeConfig& config) {
  const auto words = tokenize(text);
  double q = ctc_log_prob(pg, alphabet.encode(text), alphabet.blank_index()) +
             config.beta * static_cast<double>(words.size());
  if (config.lm) q += config.alpha * config.lm->score_sequence(words, config.oov_floor);
  return q;
}

DecodeConfig plain(double alpha, double beta, std::size_t beam) {
  DecodeConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.beam_width = beam;
  return c;
}

TEST_CASE("sharp input decodes exactly") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto pg = synth_generate("HI BOB", a, {0.0, 2, 5});
  CHECK(prefix_beam_search(pg, a, plain(0, 0, 16)).text == "HI BOB");
  CHECK(prefix_beam_search(pg, a, DecodeConfig{}).text == "HI BOB");
  const auto tagged = synth_generate("MEET |BOB] IN $PARIS]", a, {0.0, 3, 6});
  CHECK(prefix_beam_search(tagged, a, DecodeConfig{}).text == "MEET |BOB] IN $PARIS]");
}

TEST_CASE("exhaustive beam matches brute force without LM") {
  std::mt19937_64 rng(41);
  for (int seed = 0; seed < 50; ++seed) {
    const std::size_t T = 1 + rng() % 6, V = 2 + rng() % 3;
    const Alphabet alphabet = testing::small_alphabet(std::string("ABC").substr(0, V - 1));
    const auto pg = random_pg(T, V, rng);
    const auto expected = brute_force_best_labeling(pg, alphabet, T);
    const auto got = prefix_beam_search(pg, alphabet, plain(0, 0, 1000000));
    CHECK(got.text == expected.text);
    CHECK(got.score == doctest::Approx(expected.log_prob).epsilon(1e-9));
  }
}

TEST_CASE("exhaustive beam maximizes Q with an LM") {
  const Alphabet alphabet = testing::small_alphabet("AB ");
  const auto lm = lm_from({"A B", "A A B", "B", "B A", "A B A B"}, 2);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pg = random_pg(1 + rng() % 6, 4, rng, 1.0);
    DecodeConfig config = plain(0.5 + static_cast<double>(rng() % 3), static_cast<double>(rng() % 3) - 1.0,
                                1000000);
    config.lm = lm;
    double best = -INFINITY;
    std::string best_text;
    for (const auto& entry : enumerate_labelings(pg, 0)) {
      const std::string text = alphabet.decode(entry.first);
      const double q = q_score(pg, alphabet, text, config);
      if (q > best) {
        best = q;
        best_text = text;
      }
    }
    const auto got = prefix_beam_search(pg, alphabet, config);
    CHECK(got.score == doctest::Approx(best).epsilon(1e-9));
    CHECK(q_score(pg, alphabet, got.text, config) == doctest::Approx(best).epsilon(1e-9));
    CHECK(tokenize(got.text) == tokenize(best_text));
  }
}

TEST_CASE("reported score decomposes") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto lm = lm_from({"HELLO WORLD", "HELLO THERE", "GOOD MORNING"}, 3);
  DecodeConfig config;
  config.lm = lm;
  const auto pg = synth_generate("HELLO WORLD", a, {0.2, 2, 3});
  const auto r = prefix_beam_search(pg, a, config);
  CHECK(r.score == doctest::Approx(r.ctc_log_prob + config.alpha * r.lm_log_prob +
                                   config.beta * static_cast<double>(r.word_count) + r.bonus));
  CHECK(r.word_count == tokenize(r.text).size());
  CHECK(r.lm_log_prob == doctest::Approx(lm->score_sequence(tokenize(r.text))));
  CHECK(a.decode(r.labels) == r.text);
}

TEST_CASE("alpha zero ignores the LM") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto lm = lm_from({"THE CAT", "A DOG RAN"}, 3);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pg = synth_generate("THE DOG SAT", a, {0.4, 3, rng()});
    auto without = plain(0, 0, 64);
    auto with = without;
    with.lm = lm;
    const auto r1 = prefix_beam_search(pg, a, without);
    const auto r2 = prefix_beam_search(pg, a, with);
    CHECK(r1.text == r2.text);
    CHECK(r1.score == r2.score);
  }
}

TEST_CASE("word bonus breaks an exact tie toward the word") {
  const Alphabet a = testing::small_alphabet("A");
  const auto pg = testing::pg_from_probs({{0.5, 0.5}});
  CHECK(prefix_beam_search(pg, a, plain(0, 0, 8)).text.empty());
  CHECK(prefix_beam_search(pg, a, plain(0, 1.0, 8)).text == "A");
  CHECK(prefix_beam_search(pg, a, plain(0, -1.0, 8)).text.empty());
}

TEST_CASE("LM resolves an acoustically ambiguous word") {
  const Alphabet a = Alphabet::default_alphabet();
  // Clean HELLO, then blur the O frames toward A so HELLA wins slightly.
  const auto clean = synth_generate("HELLO", a, {0.0, 2, 17});
  std::vector<double> values(clean.values().begin(), clean.values().end());
  const Index o = *a.index_of('O'), a_idx = *a.index_of('A');
  const std::size_t V = a.size();
  for (std::size_t t = 0; t < clean.frames(); ++t) {
    if (values[t * V + o] > -1e-6) {
      for (std::size_t v = 0; v < V; ++v) values[t * V + v] = std::log(0.02 / 30.0);
      values[t * V + o] = std::log(0.48);
      values[t * V + a_idx] = std::log(0.50);
    }
  }
  const Posteriorgram pg(clean.frames(), V, values, a.checksum());
  const double hello = ctc_log_prob(pg, a.encode("HELLO"), 0);
  const double hella = ctc_log_prob(pg, a.encode("HELLA"), 0);
  REQUIRE(std::abs(hello - hella) < 0.1);
  REQUIRE(hella > hello);

  std::vector<std::string> sentences(20, "HELLO");
  sentences.push_back("HELLA");
  DecodeConfig config;
  config.lm = lm_from(sentences, 2);
  config.alpha = 0.0;
  CHECK(prefix_beam_search(pg, a, config).text == "HELLA");
  config.alpha = 1.96;
  const auto r = prefix_beam_search(pg, a, config);
  CHECK(r.text == "HELLO");
  CHECK(q_score(pg, a, "HELLO", config) > q_score(pg, a, "HELLA", config));
  CHECK(r.score == doctest::Approx(q_score(pg, a, "HELLO", config)).epsilon(1e-9));
}

TEST_CASE("wider beams never lower the returned score") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto lm = lm_from({"THE CAT SAT", "THE DOG", "A CAT RAN", "THE BAT SAT ON A MAT"}, 3);
  std::mt19937_64 rng(44);
  const std::vector<std::string> refs = {"THE CAT SAT", "A BAT", "THE MAT RAN", "DOG"};
  for (int trial = 0; trial < 12; ++trial) {
    const auto pg = synth_generate(refs[trial % refs.size()], a, {0.5, 2, rng()});
    DecodeConfig config;
    config.lm = lm;
    double previous = -INFINITY;
    for (std::size_t beam : {1, 2, 4, 8, 16, 64, 256}) {
      config.beam_width = beam;
      const double score = prefix_beam_search(pg, a, config).score;
      CHECK(score >= previous - 1e-9);
      previous = std::max(previous, score);
    }
  }
}

TEST_CASE("batch decoding") {
  const Alphabet a = Alphabet::default_alphabet();
  DecodeConfig config;
  config.lm = lm_from({"ONE TWO", "THREE FOUR FIVE", "TWO THREE"}, 3);
  config.beam_width = 32;
  std::vector<Posteriorgram> pgs;
  const std::vector<std::string> refs = {"ONE TWO", "THREE", "FOUR FIVE", "TWO THREE", "ONE"};
  for (std::size_t i = 0; i < refs.size(); ++i) {
    pgs.push_back(synth_generate(refs[i], a, {0.3, 3, i}));
  }
  const auto serial = decode_batch(pgs, a, config, 1);
  REQUIRE(serial.size() == pgs.size());
  for (std::size_t i = 0; i < pgs.size(); ++i) {
    const auto single = prefix_beam_search(pgs[i], a, config);
    CHECK(serial[i].text == single.text);
    CHECK(serial[i].score == single.score);
  }
  for (std::size_t jobs : {2, 3, 8}) {
    const auto parallel = decode_batch(pgs, a, config, jobs);
    for (std::size_t i = 0; i < pgs.size(); ++i) {
      CHECK(parallel[i].text == serial[i].text);
      CHECK(parallel[i].score == serial[i].score);
    }
  }
  std::vector<Posteriorgram> reversed(pgs.rbegin(), pgs.rend());
  const auto rev = decode_batch(reversed, a, config, 2);
  for (std::size_t i = 0; i < pgs.size(); ++i) CHECK(rev[i].text == serial[pgs.size() - 1 - i].text);
  CHECK(decode_batch(std::span<const Posteriorgram>(pgs.data(), 1), a, config)[0].text ==
        serial[0].text);

  pgs.insert(pgs.begin() + 2, Posteriorgram(1, 3, {std::log(0.2), std::log(0.3), std::log(0.5)}));
  try {
    (void)decode_batch(pgs, a, config, 3);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
    CHECK(e.item() == 2u);
  }
}

TEST_CASE("configuration checks") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto pg = synth_generate("A", a, {0.1, 1, 0});
  CHECK_THROWS_AS(prefix_beam_search(pg, a, plain(1, 1, 0)), Error);
  CHECK_THROWS_AS(prefix_beam_search(pg, a, plain(NAN, 1, 4)), Error);
  CHECK_THROWS_AS(prefix_beam_search(pg, Alphabet("AB", 0), DecodeConfig{}), Error);
}

}  // namespace
}  // namespace entctc
