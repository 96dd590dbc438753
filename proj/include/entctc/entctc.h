/* Copyright 2026 The entctc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/*
 * C interface to libentctc.
 *
 * Objects are opaque handles created by *_create / *_load / *_build style
 * calls and released with the matching *_destroy. Every function returning
 * int reports ENTCTC_OK (0) or a negative ENTCTC_ERROR_* status; the
 * thread-local message for the most recent failure is available from
 * entctc_last_error(). Strings returned through char** are heap copies the
 * caller frees with entctc_string_free().
 *
 * Handles are immutable after creation and may be shared across threads.
 */

#ifndef ENTCTC_ENTCTC_H_
#define ENTCTC_ENTCTC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
  #define ENTCTC_API __declspec(dllexport)
#else
  #define ENTCTC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum entctc_status {
  ENTCTC_OK = 0,
  ENTCTC_ERROR_INVALID_ARGUMENT = -1,
  ENTCTC_ERROR_UNKNOWN_SYMBOL = -2,
  ENTCTC_ERROR_INDEX_OUT_OF_RANGE = -3,
  ENTCTC_ERROR_BLANK_IN_TEXT = -4,
  ENTCTC_ERROR_MALFORMED_BRACKET = -5,
  ENTCTC_ERROR_NESTED_SPAN = -6,
  ENTCTC_ERROR_HALF_LABELED = -7,
  ENTCTC_ERROR_INVALID_ALPHABET = -8,
  ENTCTC_ERROR_IO = -9,
  ENTCTC_ERROR_BAD_MAGIC = -10,
  ENTCTC_ERROR_VERSION_UNSUPPORTED = -11,
  ENTCTC_ERROR_SHAPE_MISMATCH = -12,
  ENTCTC_ERROR_NOT_NORMALIZED = -13,
  ENTCTC_ERROR_CHECKSUM_MISMATCH = -14,
  ENTCTC_ERROR_INVALID_LABEL = -15,
  ENTCTC_ERROR_INFEASIBLE_LABEL = -16,
  ENTCTC_ERROR_INSTANCE_TOO_LARGE = -17,
  ENTCTC_ERROR_PARSE = -18,
  ENTCTC_ERROR_COUNT_MISMATCH = -19,
  ENTCTC_ERROR_MISSING_SECTION = -20,
  ENTCTC_ERROR_EMPTY_CORPUS = -21,
  ENTCTC_ERROR_LENGTH_MISMATCH = -22,
  ENTCTC_ERROR_NULL_POINTER = -100,
  ENTCTC_ERROR_BAD_HANDLE = -101,
  ENTCTC_ERROR_UNEXPECTED = -102
};

typedef struct entctc_alphabet_struct* entctc_alphabet_t;
typedef struct entctc_pg_struct* entctc_pg_t;
typedef struct entctc_lm_struct* entctc_lm_t;
typedef struct entctc_decoder_struct* entctc_decoder_t;

ENTCTC_API const char* entctc_version(void);
ENTCTC_API const char* entctc_status_name(int status);
ENTCTC_API const char* entctc_last_error(void);
ENTCTC_API void entctc_string_free(char* str);

/* Alphabets carry the tag scheme used by all text operations. */
ENTCTC_API int entctc_alphabet_default(entctc_alphabet_t* out);
ENTCTC_API int entctc_alphabet_load(entctc_alphabet_t* out, const char* path);
ENTCTC_API int entctc_alphabet_from_json(entctc_alphabet_t* out, const char* json);
ENTCTC_API int entctc_alphabet_to_json(entctc_alphabet_t alphabet, char** out);
ENTCTC_API int entctc_alphabet_size(entctc_alphabet_t alphabet, size_t* out);
ENTCTC_API int entctc_alphabet_checksum(entctc_alphabet_t alphabet, uint64_t* out);
ENTCTC_API int entctc_alphabet_destroy(entctc_alphabet_t alphabet);

ENTCTC_API int entctc_tag_map(entctc_alphabet_t alphabet, const char* bracket_text, char** out);
/* lenient != 0 drops half-labeled tags instead of failing. */
ENTCTC_API int entctc_tag_unmap(entctc_alphabet_t alphabet, const char* symbol_text, int lenient,
                                char** out);
ENTCTC_API int entctc_strip_tags(entctc_alphabet_t alphabet, const char* text, char** out);

ENTCTC_API int entctc_pg_read(entctc_pg_t* out, const char* path);
ENTCTC_API int entctc_pg_write(entctc_pg_t pg, const char* path);
ENTCTC_API int entctc_pg_synthesize(entctc_pg_t* out, entctc_alphabet_t alphabet,
                                    const char* reference, double noise, uint32_t max_duration,
                                    uint64_t seed);
ENTCTC_API int entctc_pg_shape(entctc_pg_t pg, size_t* frames, size_t* vocab);
/* ENTCTC_ERROR_SHAPE_MISMATCH or ENTCTC_ERROR_CHECKSUM_MISMATCH on mismatch. */
ENTCTC_API int entctc_pg_check_alphabet(entctc_pg_t pg, entctc_alphabet_t alphabet);
ENTCTC_API int entctc_pg_greedy_decode(entctc_pg_t pg, entctc_alphabet_t alphabet, char** out);
ENTCTC_API int entctc_pg_destroy(entctc_pg_t pg);

ENTCTC_API int entctc_lm_load_arpa(entctc_lm_t* out, const char* path);
/* Sentences are whitespace-tokenized as given. */
ENTCTC_API int entctc_lm_build(entctc_lm_t* out, const char* const* sentences, size_t count,
                               uint32_t order, double discount);
ENTCTC_API int entctc_lm_write_arpa(entctc_lm_t lm, const char* path);
ENTCTC_API int entctc_lm_order(entctc_lm_t lm, uint32_t* out);
ENTCTC_API int entctc_lm_vocab_size(entctc_lm_t lm, size_t* out);
ENTCTC_API int entctc_lm_ngram_count(entctc_lm_t lm, uint32_t n, size_t* out);
/* Natural-log probability of the sentence including </s>. */
ENTCTC_API int entctc_lm_score_sentence(entctc_lm_t lm, const char* sentence, double oov_floor,
                                        double* log_prob, size_t* oov_count);
ENTCTC_API int entctc_lm_destroy(entctc_lm_t lm);

typedef struct entctc_decode_options {
  double alpha;
  double beta;
  size_t beam_width;
  double oov_floor;
} entctc_decode_options;

/* alpha 1.96, beta 6.0, beam 1024, floor ln(1e-10). */
ENTCTC_API void entctc_decode_options_init(entctc_decode_options* options);

/* lm may be NULL. The decoder keeps its own references to alphabet and lm. */
ENTCTC_API int entctc_decoder_create(entctc_decoder_t* out, entctc_alphabet_t alphabet,
                                     entctc_lm_t lm, const entctc_decode_options* options);
/*
 * Switches the decoder to class-token scoring. `categories` is a comma list
 * of CAT or CAT=LITERAL items (for example "PER" or "PER=<PERSON>,LOC");
 * `name_dict_json` may be NULL.
 */
ENTCTC_API int entctc_decoder_enable_class_lm(entctc_decoder_t decoder, const char* categories,
                                              const char* name_dict_json, double gamma);
ENTCTC_API int entctc_decoder_decode(entctc_decoder_t decoder, entctc_pg_t pg, char** transcript,
                                     double* score);
/*
 * Decodes `count` posteriorgrams on up to `jobs` threads. On success
 * transcripts[i] and scores[i] are filled for every item. On failure nothing
 * is allocated and *failed_index (if non-NULL) names the first failing item.
 */
ENTCTC_API int entctc_decoder_decode_batch(entctc_decoder_t decoder, const entctc_pg_t* pgs,
                                           size_t count, size_t jobs, char** transcripts,
                                           double* scores, size_t* failed_index);
ENTCTC_API int entctc_decoder_destroy(entctc_decoder_t decoder);

/* report_json and table may each be NULL when not wanted. */
ENTCTC_API int entctc_eval_ner(entctc_alphabet_t alphabet, const char* const* refs,
                               const char* const* hyps, size_t count, char** report_json,
                               char** table);
ENTCTC_API int entctc_eval_wer(entctc_alphabet_t alphabet, const char* const* refs,
                               const char* const* hyps, size_t count, double* rate,
                               size_t* edits, size_t* ref_words);

/* `categories` as for entctc_decoder_enable_class_lm; NULL selects "PER". */
ENTCTC_API int entctc_semlm_transform(entctc_alphabet_t alphabet, const char* text,
                                      const char* categories, char** out, size_t* half_labeled);
ENTCTC_API int entctc_oov_stats(entctc_alphabet_t alphabet, const char* const* train,
                                size_t train_count, const char* const* eval, size_t eval_count,
                                char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* ENTCTC_ENTCTC_H_ */
