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

#include "entctc/posteriorgram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "entctc/error.hpp"

namespace entctc {

namespace {

constexpr char kMagic[4] = {'L', 'P', 'G', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8;

static_assert(std::endian::native == std::endian::little,
              "LPG1 I/O assumes a little-endian host");
static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << "0x" << std::hex << v;
  return out.str();
}

}  // namespace

double log_sum_exp(std::span<const double> values) noexcept {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : values) max = std::max(max, v);
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

Posteriorgram::Posteriorgram(std::size_t frames, std::size_t vocab, std::vector<double> log_probs,
                             std::uint64_t alphabet_checksum)
    : frames_(frames), vocab_(vocab), values_(std::move(log_probs)), checksum_(alphabet_checksum) {
  if (frames_ == 0 || vocab_ == 0) {
    throw Error(ErrorCode::kShapeMismatch, "posteriorgram needs at least one frame and symbol");
  }
  if (values_.size() != frames_ * vocab_) {
    throw Error(ErrorCode::kShapeMismatch,
                "posteriorgram data holds " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(frames_) + "x" + std::to_string(vocab_));
  }
}

void Posteriorgram::set_frame_shift_ms(double ms) {
  if (!(ms > 0.0)) throw Error(ErrorCode::kInvalidArgument, "frame shift must be positive");
  frame_shift_ms_ = ms;
}

void Posteriorgram::check_normalized() const {
  for (std::size_t t = 0; t < frames_; ++t) {
    const auto row = frame(t);
    const bool bad_value = std::any_of(row.begin(), row.end(), [](double v) {
      return std::isnan(v) || v == std::numeric_limits<double>::infinity();
    });
    const double total = bad_value ? std::numeric_limits<double>::quiet_NaN() : log_sum_exp(row);
    if (!(std::abs(total) <= kNormalizationTolerance)) {
      std::ostringstream msg;
      msg << "frame " << t << " is not normalized (logsumexp " << total << ")";
      throw Error(ErrorCode::kNotNormalized, msg.str(), t);
    }
  }
}

void Posteriorgram::check_alphabet(const Alphabet& alphabet) const {
  if (vocab_ != alphabet.size()) {
    throw Error(ErrorCode::kShapeMismatch, "posteriorgram has " + std::to_string(vocab_) +
                                               " symbols per frame, alphabet has " +
                                               std::to_string(alphabet.size()));
  }
  if (checksum_ != alphabet.checksum()) {
    throw Error(ErrorCode::kChecksumMismatch, "posteriorgram alphabet checksum " + hex(checksum_) +
                                                  " does not match alphabet " +
                                                  hex(alphabet.checksum()));
  }
}

std::string serialize_posteriorgram(const Posteriorgram& pg) {
  if (pg.frames() > std::numeric_limits<std::uint32_t>::max() ||
      pg.vocab_size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kShapeMismatch, "posteriorgram too large for LPG1");
  }
  pg.check_normalized();
  std::string out;
  out.reserve(kHeaderBytes + pg.values().size() * 4);
  out.append(kMagic, 4);
  put(out, static_cast<std::uint32_t>(pg.frames()));
  put(out, static_cast<std::uint32_t>(pg.vocab_size()));
  put(out, pg.alphabet_checksum());
  for (double v : pg.values()) put(out, static_cast<float>(v));
  return out;
}

Posteriorgram parse_posteriorgram(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 3) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an LPG posteriorgram (bad magic)");
  }
  if (bytes[3] != kMagic[3]) {
    throw Error(ErrorCode::kVersionUnsupported,
                std::string("unsupported LPG version '") + bytes[3] + "'");
  }
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::kShapeMismatch, "truncated LPG1 header");
  }
  const auto frames = get<std::uint32_t>(bytes, 4);
  const auto vocab = get<std::uint32_t>(bytes, 8);
  const auto checksum = get<std::uint64_t>(bytes, 12);
  const std::uint64_t count = std::uint64_t{frames} * vocab;
  if (bytes.size() - kHeaderBytes != count * 4) {
    throw Error(ErrorCode::kShapeMismatch,
                "LPG1 payload of " + std::to_string(bytes.size() - kHeaderBytes) +
                    " bytes does not hold " + std::to_string(frames) + "x" +
                    std::to_string(vocab) + " floats");
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = get<float>(bytes, kHeaderBytes + 4 * i);
  }
  Posteriorgram pg(frames, vocab, std::move(values), checksum);
  pg.check_normalized();
  return pg;
}

Posteriorgram read_posteriorgram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open posteriorgram " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path);
  return parse_posteriorgram(buffer.str());
}

void write_posteriorgram(const Posteriorgram& pg, const std::string& path) {
  const std::string bytes = serialize_posteriorgram(pg);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path);
}

Posteriorgram synth_generate(std::string_view reference, const Alphabet& alphabet,
                             const SynthOptions& options) {
  if (!(options.noise >= 0.0 && options.noise < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must lie in [0, 1)");
  }
  if (options.max_duration < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max duration must be at least 1");
  }
  if (alphabet.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "alphabet needs a symbol besides the blank");
  }
  const std::vector<Index> labels = alphabet.encode(reference);
  const Index blank = alphabet.blank_index();

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint32_t> duration(1, options.max_duration);
  std::bernoulli_distribution coin(0.5);

  std::vector<Index> designated;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0 && (labels[i] == labels[i - 1] || coin(rng))) designated.push_back(blank);
    const std::uint32_t d = duration(rng);
    designated.insert(designated.end(), d, labels[i]);
  }
  if (labels.empty() || coin(rng)) designated.push_back(blank);

  const std::size_t vocab = alphabet.size();
  const double on = static_cast<float>(std::log1p(-options.noise));
  const double off = static_cast<float>(
      options.noise > 0.0 ? std::log(options.noise / static_cast<double>(vocab - 1))
                          : -std::numeric_limits<double>::infinity());
  std::vector<double> values(designated.size() * vocab, off);
  for (std::size_t t = 0; t < designated.size(); ++t) values[t * vocab + designated[t]] = on;
  return Posteriorgram(designated.size(), vocab, std::move(values), alphabet.checksum());
}

}  // namespace entctc
