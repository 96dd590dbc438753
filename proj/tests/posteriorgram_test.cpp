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
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "entctc/ctc.hpp"
#include "entctc/error.hpp"
#include "entctc/posteriorgram.hpp"
#include "test_util.hpp"

namespace entctc {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("entctc_pg_" + name);
}

// Float-exact copy so file round trips compare bit-for-bit.
Posteriorgram quantized(const Posteriorgram& pg) {
  std::vector<double> v(pg.values().begin(), pg.values().end());
  for (double& x : v) x = static_cast<float>(x);
  return Posteriorgram(pg.frames(), pg.vocab_size(), v, pg.alphabet_checksum());
}

TEST_CASE("serialized layout") {
  const Alphabet a = Alphabet::default_alphabet();
  std::vector<double> uniform(32, -std::log(32.0));
  const Posteriorgram pg(1, 32, uniform, a.checksum());
  const std::string bytes = serialize_posteriorgram(pg);
  REQUIRE(bytes.size() == 4 + 4 + 4 + 8 + 32 * 4);
  CHECK(bytes.substr(0, 4) == "LPG1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);
  CHECK(static_cast<unsigned char>(bytes[8]) == 32);
  std::uint64_t checksum = 0;
  for (int i = 7; i >= 0; --i) {
    checksum = (checksum << 8) | static_cast<unsigned char>(bytes[12 + static_cast<std::size_t>(i)]);
  }
  CHECK(checksum == a.checksum());
  float first = 0;
  std::memcpy(&first, bytes.data() + 20, 4);
  CHECK(first == static_cast<float>(-std::log(32.0)));
}

TEST_CASE("file round trip is the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pg = quantized(testing::random_pg(1 + rng() % 40, 2 + rng() % 31, rng, 2.0, rng()));
    const auto path = temp_path("rt.lpg");
    write_posteriorgram(pg, path.string());
    CHECK(read_posteriorgram(path.string()) == pg);
    fs::remove(path);
  }
}

TEST_CASE("format errors") {
  std::mt19937_64 rng(4);
  const auto pg = quantized(testing::random_pg(3, 4, rng));
  std::string bytes = serialize_posteriorgram(pg);
  auto code_of = [](const std::string& b) {
    try {
      (void)parse_posteriorgram(b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK(code_of(bad) == ErrorCode::kBadMagic);
  bad = bytes;
  bad[3] = '2';
  CHECK(code_of(bad) == ErrorCode::kVersionUnsupported);
  CHECK(code_of(bytes.substr(0, bytes.size() - 1)) == ErrorCode::kShapeMismatch);
  CHECK(code_of(bytes + "x") == ErrorCode::kShapeMismatch);
  CHECK(code_of("LPG") == ErrorCode::kBadMagic);

  // Two entries summing to 0.9, the rest -inf.
  std::vector<double> v(4, -INFINITY);
  v[0] = std::log(0.5);
  v[1] = std::log(0.4);
  const Posteriorgram unnormalized(1, 4, v);
  try {
    unnormalized.check_normalized();
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotNormalized);
    CHECK(e.position() == 0u);
  }
  CHECK_THROWS_AS(serialize_posteriorgram(unnormalized), Error);
  // Same defect written by hand: patch frame 1 of a valid file.
  std::string patched = bytes;
  const float low = -50.0f;
  for (std::size_t v = 0; v < 4; ++v) std::memcpy(patched.data() + 20 + (4 + v) * 4, &low, 4);
  try {
    (void)parse_posteriorgram(patched);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotNormalized);
    CHECK(e.position() == 1u);
  }
  CHECK_THROWS_AS(Posteriorgram(0, 32, {}), Error);
  CHECK_THROWS_AS(read_posteriorgram("/nonexistent/x.lpg"), Error);
}

TEST_CASE("alphabet binding") {
  const Alphabet a = Alphabet::default_alphabet();
  const auto pg = synth_generate("AB", a, {0.1, 2, 1});
  CHECK_NOTHROW(pg.check_alphabet(a));
  const Alphabet other("ABC", 0);
  try {
    pg.check_alphabet(other);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
  }
  const Alphabet reordered = Alphabet("BACDEFGHIJKLMNOPQRSTUVWXYZ |${]", 0);
  try {
    pg.check_alphabet(reordered);
    FAIL("expected ChecksumMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kChecksumMismatch);
  }
}

TEST_CASE("synth generator contract") {
  const Alphabet a = Alphabet::default_alphabet();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pg = synth_generate("A", a, {0.0, 1, seed});
    CHECK((pg.frames() == 1 || pg.frames() == 2));
    CHECK(greedy_decode(pg, a) == "A");
  }
  CHECK(greedy_decode(synth_generate("|BOB]", a, {0.0, 3, 9}), a) == "|BOB]");
  CHECK(synth_generate("", a, {0.2, 3, 1}).frames() >= 1);

  const SynthOptions noisy{0.3, 3, 42};
  CHECK(synth_generate("HELLO |WORLD]", a, noisy) == synth_generate("HELLO |WORLD]", a, noisy));
  CHECK_FALSE(synth_generate("HELLO", a, noisy) == synth_generate("HELLO", a, {0.3, 3, 43}));
  CHECK_THROWS_AS(synth_generate("A", a, {1.0, 1, 0}), Error);
  CHECK_THROWS_AS(synth_generate("A", a, {0.1, 0, 0}), Error);
  try {
    (void)synth_generate("A.B", a, {0.1, 1, 0});
    FAIL("expected UnknownSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownSymbol);
  }
}

TEST_CASE("synth properties over random references") {
  const Alphabet a = Alphabet::default_alphabet();
  std::mt19937_64 rng(8);
  const std::string chars = "ABBCZ  |${]";
  for (int trial = 0; trial < 200; ++trial) {
    std::string ref;
    const auto len = rng() % 20;
    for (std::size_t i = 0; i < len; ++i) ref += chars[rng() % chars.size()];
    const auto clean = synth_generate(ref, a, {0.0, 1 + static_cast<std::uint32_t>(rng() % 4), rng()});
    CHECK(greedy_decode(clean, a) == ref);
    const double eps = 0.05 * static_cast<double>(rng() % 19);
    const auto noisy = synth_generate(ref, a, {eps, 3, rng()});
    CHECK_NOTHROW(noisy.check_normalized());
    CHECK(noisy.alphabet_checksum() == a.checksum());
    // Designated symbol carries 1 - eps.
    for (std::size_t t = 0; t < noisy.frames(); ++t) {
      double best = -INFINITY;
      for (double x : noisy.frame(t)) best = std::max(best, x);
      CHECK(best == doctest::Approx(std::log1p(-eps)).epsilon(1e-6));
    }
  }
}

}  // namespace
}  // namespace entctc
