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

#include "entctc/entctc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "entctc/alphabet.hpp"
#include "entctc/ctc.hpp"
#include "entctc/decoder.hpp"
#include "entctc/error.hpp"
#include "entctc/evalkit.hpp"
#include "entctc/ngram_lm.hpp"
#include "entctc/posteriorgram.hpp"
#include "entctc/semlm.hpp"

using entctc::ErrorCode;

static_assert(ENTCTC_ERROR_INVALID_ARGUMENT == -static_cast<int>(ErrorCode::kInvalidArgument));
static_assert(ENTCTC_ERROR_CHECKSUM_MISMATCH == -static_cast<int>(ErrorCode::kChecksumMismatch));
static_assert(ENTCTC_ERROR_LENGTH_MISMATCH == -static_cast<int>(ErrorCode::kLengthMismatch));

namespace {

thread_local std::string g_last_error;

class BadHandle : public std::exception {
 public:
  const char* what() const noexcept override { return "invalid or destroyed handle"; }
};

class NullPointer : public std::exception {
 public:
  explicit NullPointer(const char* name) : message_(std::string("argument ") + name + " is NULL") {}
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::string message_;
};

// Handles start with a magic word so that stale or foreign pointers are
// rejected instead of dereferenced as the wrong type.
template <typename T, std::uint32_t kMagic>
struct Handle {
  static constexpr std::uint32_t kExpected = kMagic;
  explicit Handle(std::shared_ptr<T> v) : value(std::move(v)) {}
  ~Handle() { magic = 0; }
  std::uint32_t magic = kMagic;
  std::shared_ptr<T> value;
};

struct DecoderState {
  std::shared_ptr<const entctc::Alphabet> alphabet;
  entctc::DecodeConfig config;
  std::optional<entctc::ClassLmOptions> class_lm;
};

}  // namespace

struct entctc_alphabet_struct : Handle<const entctc::Alphabet, 0x414C5048> {
  using Handle::Handle;
};
struct entctc_pg_struct : Handle<const entctc::Posteriorgram, 0x4C504731> {
  using Handle::Handle;
};
struct entctc_lm_struct : Handle<const entctc::NGramModel, 0x4E47524D> {
  using Handle::Handle;
};
struct entctc_decoder_struct : Handle<DecoderState, 0x44454344> {
  using Handle::Handle;
};

namespace {

template <typename P>
P* require(P* p, const char* name) {
  if (p == nullptr) throw NullPointer(name);
  return p;
}

template <typename F>
int guard(F&& body) {
  try {
    body();
    return ENTCTC_OK;
  } catch (const entctc::Error& e) {
    g_last_error = e.what();
    return -static_cast<int>(e.code());
  } catch (const NullPointer& e) {
    g_last_error = e.what();
    return ENTCTC_ERROR_NULL_POINTER;
  } catch (const BadHandle& e) {
    g_last_error = e.what();
    return ENTCTC_ERROR_BAD_HANDLE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ENTCTC_ERROR_UNEXPECTED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ENTCTC_ERROR_UNEXPECTED;
  } catch (...) {
    g_last_error = "unknown exception";
    return ENTCTC_ERROR_UNEXPECTED;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename H>
const auto& checked(H* handle, const char* name) {
  if (handle == nullptr) throw NullPointer(name);
  if (handle->magic != H::kExpected) throw BadHandle();
  return handle->value;
}

const entctc::Alphabet& alphabet_of(entctc_alphabet_t h) { return *checked(h, "alphabet"); }
const entctc::Posteriorgram& pg_of(entctc_pg_t h) { return *checked(h, "pg"); }
std::shared_ptr<const entctc::NGramModel> lm_of(entctc_lm_t h) { return checked(h, "lm"); }
DecoderState& decoder_of(entctc_decoder_t h) { return *checked(h, "decoder"); }

std::vector<std::string> copy_lines(const char* const* lines, std::size_t count,
                                    const char* name) {
  if (count > 0) require(lines, name);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(require(lines[i], name));
  return out;
}

entctc::ClassMapping parse_mapping(const char* text) {
  entctc::ClassMapping mapping;
  if (text == nullptr) return mapping;
  mapping.categories.clear();
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const auto category = entctc::parse_category(item.substr(0, eq));
    if (!category) {
      throw entctc::Error(ErrorCode::kInvalidArgument,
                          "unknown category \"" + std::string(item.substr(0, eq)) + "\"");
    }
    mapping.categories.push_back(*category);
    if (eq != std::string_view::npos) {
      mapping.literals[static_cast<std::size_t>(*category)] = std::string(item.substr(eq + 1));
    }
  }
  if (mapping.categories.empty()) {
    throw entctc::Error(ErrorCode::kInvalidArgument, "no categories selected");
  }
  return mapping;
}

entctc::DecodeResult decode_one(const DecoderState& state, const entctc::Posteriorgram& pg) {
  if (state.class_lm) {
    return entctc::decode_with_class_lm(pg, *state.alphabet, state.config, *state.class_lm);
  }
  return entctc::prefix_beam_search(pg, *state.alphabet, state.config);
}

}  // namespace

extern "C" {

const char* entctc_version(void) { return "1.0.0"; }

const char* entctc_status_name(int status) {
  switch (status) {
    case ENTCTC_OK: return "OK";
    case ENTCTC_ERROR_NULL_POINTER: return "NullPointer";
    case ENTCTC_ERROR_BAD_HANDLE: return "BadHandle";
    case ENTCTC_ERROR_UNEXPECTED: return "Unexpected";
    default: break;
  }
  if (status < 0 && status >= ENTCTC_ERROR_LENGTH_MISMATCH) {
    return entctc::error_code_name(static_cast<ErrorCode>(-status));
  }
  return "UnknownStatus";
}

const char* entctc_last_error(void) { return g_last_error.c_str(); }

void entctc_string_free(char* str) { std::free(str); }

int entctc_alphabet_default(entctc_alphabet_t* out) {
  return guard([&] {
    require(out, "out");
    *out = new entctc_alphabet_struct(
        std::make_shared<const entctc::Alphabet>(entctc::Alphabet::default_alphabet()));
  });
}

int entctc_alphabet_load(entctc_alphabet_t* out, const char* path) {
  return guard([&] {
    require(out, "out");
    *out = new entctc_alphabet_struct(
        std::make_shared<const entctc::Alphabet>(entctc::Alphabet::load(require(path, "path"))));
  });
}

int entctc_alphabet_from_json(entctc_alphabet_t* out, const char* json) {
  return guard([&] {
    require(out, "out");
    *out = new entctc_alphabet_struct(
        std::make_shared<const entctc::Alphabet>(entctc::Alphabet::from_json(require(json, "json"))));
  });
}

int entctc_alphabet_to_json(entctc_alphabet_t alphabet, char** out) {
  return guard([&] { *require(out, "out") = copy_string(alphabet_of(alphabet).to_json()); });
}

int entctc_alphabet_size(entctc_alphabet_t alphabet, size_t* out) {
  return guard([&] { *require(out, "out") = alphabet_of(alphabet).size(); });
}

int entctc_alphabet_checksum(entctc_alphabet_t alphabet, uint64_t* out) {
  return guard([&] { *require(out, "out") = alphabet_of(alphabet).checksum(); });
}

int entctc_alphabet_destroy(entctc_alphabet_t alphabet) {
  return guard([&] {
    if (alphabet == nullptr) return;
    alphabet_of(alphabet);
    delete alphabet;
  });
}

int entctc_tag_map(entctc_alphabet_t alphabet, const char* bracket_text, char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(
        entctc::tag_map(require(bracket_text, "bracket_text"), alphabet_of(alphabet).tag_scheme()));
  });
}

int entctc_tag_unmap(entctc_alphabet_t alphabet, const char* symbol_text, int lenient,
                     char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(entctc::tag_unmap(require(symbol_text, "symbol_text"),
                                         alphabet_of(alphabet).tag_scheme(), lenient == 0));
  });
}

int entctc_strip_tags(entctc_alphabet_t alphabet, const char* text, char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(entctc::strip_tags(require(text, "text"), alphabet_of(alphabet).tag_scheme()));
  });
}

int entctc_pg_read(entctc_pg_t* out, const char* path) {
  return guard([&] {
    require(out, "out");
    *out = new entctc_pg_struct(std::make_shared<const entctc::Posteriorgram>(
        entctc::read_posteriorgram(require(path, "path"))));
  });
}

int entctc_pg_write(entctc_pg_t pg, const char* path) {
  return guard([&] { entctc::write_posteriorgram(pg_of(pg), require(path, "path")); });
}

int entctc_pg_synthesize(entctc_pg_t* out, entctc_alphabet_t alphabet, const char* reference,
                         double noise, uint32_t max_duration, uint64_t seed) {
  return guard([&] {
    require(out, "out");
    const entctc::SynthOptions options{noise, max_duration, seed};
    *out = new entctc_pg_struct(std::make_shared<const entctc::Posteriorgram>(
        entctc::synth_generate(require(reference, "reference"), alphabet_of(alphabet), options)));
  });
}

int entctc_pg_shape(entctc_pg_t pg, size_t* frames, size_t* vocab) {
  return guard([&] {
    const auto& p = pg_of(pg);
    *require(frames, "frames") = p.frames();
    *require(vocab, "vocab") = p.vocab_size();
  });
}

int entctc_pg_check_alphabet(entctc_pg_t pg, entctc_alphabet_t alphabet) {
  return guard([&] { pg_of(pg).check_alphabet(alphabet_of(alphabet)); });
}

int entctc_pg_destroy(entctc_pg_t pg) {
  return guard([&] {
    if (pg == nullptr) return;
    pg_of(pg);
    delete pg;
  });
}

int entctc_lm_load_arpa(entctc_lm_t* out, const char* path) {
  return guard([&] {
    require(out, "out");
    *out = new entctc_lm_struct(
        std::make_shared<const entctc::NGramModel>(entctc::load_arpa(require(path, "path"))));
  });
}

int entctc_lm_build(entctc_lm_t* out, const char* const* sentences, size_t count, uint32_t order,
                    double discount) {
  return guard([&] {
    require(out, "out");
    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(count);
    for (const auto& line : copy_lines(sentences, count, "sentences")) {
      corpus.push_back(entctc::tokenize(line));
    }
    *out = new entctc_lm_struct(std::make_shared<const entctc::NGramModel>(
        entctc::build_from_corpus(corpus, static_cast<int>(order), discount)));
  });
}

int entctc_lm_write_arpa(entctc_lm_t lm, const char* path) {
  return guard([&] { entctc::write_arpa(*lm_of(lm), require(path, "path")); });
}

int entctc_lm_order(entctc_lm_t lm, uint32_t* out) {
  return guard([&] { *require(out, "out") = static_cast<uint32_t>(lm_of(lm)->order()); });
}

int entctc_lm_vocab_size(entctc_lm_t lm, size_t* out) {
  return guard([&] { *require(out, "out") = lm_of(lm)->vocab_size(); });
}

int entctc_lm_ngram_count(entctc_lm_t lm, uint32_t n, size_t* out) {
  return guard([&] {
    const auto model = lm_of(lm);
    if (n < 1 || n > static_cast<uint32_t>(model->order())) {
      throw entctc::Error(ErrorCode::kInvalidArgument, "n outside the model order");
    }
    *require(out, "out") = model->count(static_cast<int>(n));
  });
}

int entctc_lm_score_sentence(entctc_lm_t lm, const char* sentence, double oov_floor,
                             double* log_prob, size_t* oov_count) {
  return guard([&] {
    const auto model = lm_of(lm);
    const auto tokens = entctc::tokenize(require(sentence, "sentence"));
    *require(log_prob, "log_prob") = model->score_sequence(tokens, oov_floor);
    if (oov_count) {
      *oov_count = 0;
      for (const auto& t : tokens) *oov_count += model->id(t) == entctc::kNoWord;
    }
  });
}

int entctc_lm_destroy(entctc_lm_t lm) {
  return guard([&] {
    if (lm == nullptr) return;
    lm_of(lm);
    delete lm;
  });
}

void entctc_decode_options_init(entctc_decode_options* options) {
  if (options == nullptr) return;
  const entctc::DecodeConfig defaults;
  options->alpha = defaults.alpha;
  options->beta = defaults.beta;
  options->beam_width = defaults.beam_width;
  options->oov_floor = defaults.oov_floor;
}

int entctc_decoder_create(entctc_decoder_t* out, entctc_alphabet_t alphabet, entctc_lm_t lm,
                          const entctc_decode_options* options) {
  return guard([&] {
    require(out, "out");
    require(options, "options");
    auto state = std::make_shared<DecoderState>();
    state->alphabet = checked(alphabet, "alphabet");
    state->config.alpha = options->alpha;
    state->config.beta = options->beta;
    state->config.beam_width = options->beam_width;
    state->config.oov_floor = options->oov_floor;
    if (lm != nullptr) state->config.lm = lm_of(lm);
    state->config.validate();
    *out = new entctc_decoder_struct(std::move(state));
  });
}

int entctc_decoder_enable_class_lm(entctc_decoder_t decoder, const char* categories,
                                   const char* name_dict_json, double gamma) {
  return guard([&] {
    DecoderState& state = decoder_of(decoder);
    entctc::ClassLmOptions options;
    options.mapping = parse_mapping(categories);
    if (name_dict_json) options.names = entctc::parse_name_dictionary(name_dict_json);
    options.gamma = gamma;
    // Validates literals and gamma.
    entctc::ClassUnitScorer probe(state.config.lm, state.config.oov_floor,
                                  state.alphabet->tag_scheme(), options);
    state.class_lm = std::move(options);
  });
}

int entctc_decoder_decode(entctc_decoder_t decoder, entctc_pg_t pg, char** transcript,
                          double* score) {
  return guard([&] {
    require(transcript, "transcript");
    const auto result = decode_one(decoder_of(decoder), pg_of(pg));
    if (score) *score = result.score;
    *transcript = copy_string(result.text);
  });
}

int entctc_decoder_decode_batch(entctc_decoder_t decoder, const entctc_pg_t* pgs, size_t count,
                                size_t jobs, char** transcripts, double* scores,
                                size_t* failed_index) {
  return guard([&] {
    const DecoderState& state = decoder_of(decoder);
    if (count > 0) {
      require(pgs, "pgs");
      require(transcripts, "transcripts");
    }
    std::vector<entctc::Posteriorgram> inputs;
    inputs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      try {
        inputs.push_back(pg_of(pgs[i]));
      } catch (...) {
        if (failed_index) *failed_index = i;
        throw;
      }
    }
    std::vector<entctc::DecodeResult> results;
    try {
      if (state.class_lm) {
        const entctc::ClassUnitScorer scorer(state.config.lm, state.config.oov_floor,
                                             state.alphabet->tag_scheme(), *state.class_lm);
        results = entctc::decode_batch(inputs, *state.alphabet, state.config, scorer, jobs);
      } else {
        results = entctc::decode_batch(inputs, *state.alphabet, state.config, jobs);
      }
    } catch (const entctc::Error& e) {
      if (failed_index && e.item()) *failed_index = *e.item();
      throw;
    }
    std::vector<char*> copies;
    copies.reserve(count);
    try {
      for (const auto& r : results) copies.push_back(copy_string(r.text));
    } catch (...) {
      for (char* c : copies) std::free(c);
      throw;
    }
    for (size_t i = 0; i < count; ++i) {
      transcripts[i] = copies[i];
      if (scores) scores[i] = results[i].score;
    }
  });
}

int entctc_decoder_destroy(entctc_decoder_t decoder) {
  return guard([&] {
    if (decoder == nullptr) return;
    decoder_of(decoder);
    delete decoder;
  });
}

int entctc_pg_greedy_decode(entctc_pg_t pg, entctc_alphabet_t alphabet, char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_string(entctc::greedy_decode(pg_of(pg), alphabet_of(alphabet)));
  });
}

int entctc_eval_ner(entctc_alphabet_t alphabet, const char* const* refs, const char* const* hyps,
                    size_t count, char** report_json, char** table) {
  return guard([&] {
    const auto report = entctc::evaluate_ner(copy_lines(refs, count, "refs"),
                                             copy_lines(hyps, count, "hyps"),
                                             alphabet_of(alphabet).tag_scheme());
    char* json = report_json ? copy_string(report.to_json()) : nullptr;
    try {
      if (table) *table = copy_string(report.to_table());
    } catch (...) {
      std::free(json);
      throw;
    }
    if (report_json) *report_json = json;
  });
}

int entctc_eval_wer(entctc_alphabet_t alphabet, const char* const* refs, const char* const* hyps,
                    size_t count, double* rate, size_t* edits, size_t* ref_words) {
  return guard([&] {
    const auto counts = entctc::wer_corpus(copy_lines(refs, count, "refs"),
                                           copy_lines(hyps, count, "hyps"),
                                           alphabet_of(alphabet).tag_scheme());
    *require(rate, "rate") = counts.rate();
    if (edits) *edits = counts.edits;
    if (ref_words) *ref_words = counts.ref_words;
  });
}

int entctc_semlm_transform(entctc_alphabet_t alphabet, const char* text, const char* categories,
                           char** out, size_t* half_labeled) {
  return guard([&] {
    require(out, "out");
    const auto& scheme = alphabet_of(alphabet).tag_scheme();
    const auto mapping = parse_mapping(categories);
    mapping.validate(scheme);
    std::size_t dropped = 0;
    *out = copy_string(entctc::transform_text(require(text, "text"), scheme, mapping, &dropped));
    if (half_labeled) *half_labeled = dropped;
  });
}

int entctc_oov_stats(entctc_alphabet_t alphabet, const char* const* train, size_t train_count,
                     const char* const* eval, size_t eval_count, char** report_json) {
  return guard([&] {
    require(report_json, "report_json");
    const auto& scheme = alphabet_of(alphabet).tag_scheme();
    const auto vocab = entctc::corpus_vocabulary(copy_lines(train, train_count, "train"), scheme);
    const auto stats = entctc::oov_stats(vocab, copy_lines(eval, eval_count, "eval"), scheme);
    *report_json = copy_string(stats.to_json());
  });
}

}  // extern "C"
