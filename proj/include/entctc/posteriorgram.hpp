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

#ifndef ENTCTC_POSTERIORGRAM_HPP_
#define ENTCTC_POSTERIORGRAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entctc/alphabet.hpp"

namespace entctc {

/// T x V matrix of per-frame natural-log probabilities over an alphabet,
/// stored row-major in double precision.
class Posteriorgram {
 public:
  /// Throws kShapeMismatch when frames or vocab is zero or the data size is
  /// not frames * vocab. Normalization is not checked here; see
  /// `check_normalized()`.
  Posteriorgram(std::size_t frames, std::size_t vocab, std::vector<double> log_probs,
                std::uint64_t alphabet_checksum = 0);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t vocab_size() const noexcept { return vocab_; }
  std::uint64_t alphabet_checksum() const noexcept { return checksum_; }

  std::span<const double> frame(std::size_t t) const noexcept {
    return {values_.data() + t * vocab_, vocab_};
  }
  double at(std::size_t t, std::size_t v) const noexcept { return values_[t * vocab_ + v]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Not persisted in LPG1 files; carried for callers that track timing.
  double frame_shift_ms() const noexcept { return frame_shift_ms_; }
  void set_frame_shift_ms(double ms);

  /// Throws kNotNormalized with the first frame whose logsumexp lies outside
  /// [-1e-3, 1e-3] (or that holds NaN / +inf).
  void check_normalized() const;

  /// Throws kShapeMismatch if the vocab differs from the alphabet size and
  /// kChecksumMismatch if the stored checksum differs from the alphabet's.
  void check_alphabet(const Alphabet& alphabet) const;

  friend bool operator==(const Posteriorgram& a, const Posteriorgram& b) {
    return a.frames_ == b.frames_ && a.vocab_ == b.vocab_ && a.checksum_ == b.checksum_ &&
           a.values_ == b.values_;
  }

 private:
  std::size_t frames_;
  std::size_t vocab_;
  std::vector<double> values_;
  std::uint64_t checksum_;
  double frame_shift_ms_ = 10.0;
};

inline constexpr double kNormalizationTolerance = 1e-3;

double log_sum_exp(std::span<const double> values) noexcept;

/// LPG1 binary: "LPG1", u32 T, u32 V, u64 alphabet checksum, then T*V
/// little-endian f32 natural-log probabilities, row-major.
Posteriorgram read_posteriorgram(const std::string& path);
void write_posteriorgram(const Posteriorgram& pg, const std::string& path);
Posteriorgram parse_posteriorgram(std::string_view bytes);
std::string serialize_posteriorgram(const Posteriorgram& pg);

struct SynthOptions {
  double noise = 0.0;          // mass spread evenly over the other symbols, in [0, 1)
  std::uint32_t max_duration = 1;  // frames per character drawn from {1..max_duration}
  std::uint64_t seed = 0;
};

/// Builds a CTC-consistent posteriorgram whose frame-wise argmax spells
/// `reference`. Blanks are forced between repeated characters and inserted
/// with probability 0.5 between other characters and after the last one.
/// Values are rounded through float so the result survives an LPG1 round trip
/// unchanged.
Posteriorgram synth_generate(std::string_view reference, const Alphabet& alphabet,
                             const SynthOptions& options);

}  // namespace entctc

#endif  // ENTCTC_POSTERIORGRAM_HPP_
