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

// Command-line front end. Links only against the C interface of libentctc.

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "entctc/entctc.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitChecksum = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(int status) {
  switch (status) {
    case ENTCTC_ERROR_IO:
    case ENTCTC_ERROR_BAD_MAGIC:
    case ENTCTC_ERROR_VERSION_UNSUPPORTED:
    case ENTCTC_ERROR_SHAPE_MISMATCH:
    case ENTCTC_ERROR_NOT_NORMALIZED:
    case ENTCTC_ERROR_PARSE:
    case ENTCTC_ERROR_COUNT_MISMATCH:
    case ENTCTC_ERROR_MISSING_SECTION:
    case ENTCTC_ERROR_INVALID_ALPHABET:
      return kExitIo;
    case ENTCTC_ERROR_CHECKSUM_MISMATCH:
      return kExitChecksum;
    case ENTCTC_ERROR_NULL_POINTER:
    case ENTCTC_ERROR_BAD_HANDLE:
    case ENTCTC_ERROR_UNEXPECTED:
      return 1;
    default:
      return kExitUsage;
  }
}

// Throws Failure for a non-OK status; `context` prefixes the message.
void check(int status, const std::string& context) {
  if (status == ENTCTC_OK) return;
  std::string message = entctc_last_error();
  if (!context.empty()) message = context + ": " + message;
  throw Failure{exit_code_for(status), message + " [" + entctc_status_name(status) + "]"};
}

struct StringDeleter {
  void operator()(char* s) const { entctc_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct AlphabetDeleter {
  void operator()(entctc_alphabet_t a) const { entctc_alphabet_destroy(a); }
};
struct PgDeleter {
  void operator()(entctc_pg_t p) const { entctc_pg_destroy(p); }
};
struct LmDeleter {
  void operator()(entctc_lm_t l) const { entctc_lm_destroy(l); }
};
struct DecoderDeleter {
  void operator()(entctc_decoder_t d) const { entctc_decoder_destroy(d); }
};
using Alphabet = std::unique_ptr<entctc_alphabet_struct, AlphabetDeleter>;
using Pg = std::unique_ptr<entctc_pg_struct, PgDeleter>;
using Lm = std::unique_ptr<entctc_lm_struct, LmDeleter>;
using Decoder = std::unique_ptr<entctc_decoder_struct, DecoderDeleter>;

Alphabet load_alphabet(const std::string& path) {
  entctc_alphabet_t raw = nullptr;
  if (path.empty()) {
    check(entctc_alphabet_default(&raw), "default alphabet");
  } else {
    check(entctc_alphabet_load(&raw, path.c_str()), path);
  }
  return Alphabet(raw);
}

Lm load_lm(const std::string& path) {
  if (path.empty()) return nullptr;
  entctc_lm_t raw = nullptr;
  check(entctc_lm_load_arpa(&raw, path.c_str()), path);
  return Lm(raw);
}

std::string to_upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw Failure{kExitIo, "cannot open " + path};
    in = &file;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in->bad()) throw Failure{kExitIo, "error reading " + path};
  return lines;
}

// column 0 keeps the whole line; otherwise the 1-based TSV field.
std::vector<std::string> read_column(const std::string& path, int column) {
  auto lines = read_lines(path);
  if (column == 0) return lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_tabs(lines[i]);
    if (static_cast<std::size_t>(column) > fields.size()) {
      throw Failure{kExitUsage, path + ":" + std::to_string(i + 1) + ": no column " +
                                    std::to_string(column)};
    }
    lines[i] = fields[static_cast<std::size_t>(column) - 1];
  }
  return lines;
}

std::vector<const char*> c_strings(const std::vector<std::string>& lines) {
  std::vector<const char*> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(l.c_str());
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::trunc);
      if (!file_) throw Failure{kExitIo, "cannot create " + path};
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish(const std::string& path) {
    out_->flush();
    if (!*out_) throw Failure{kExitIo, "error writing " + (path.empty() ? "stdout" : path)};
  }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

struct ManifestRecord {
  std::string id;
  std::string pg_path;
  std::string reference;
};

std::vector<ManifestRecord> read_manifest(const std::string& path) {
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestRecord> records;
  std::set<std::string> seen;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_tabs(lines[i]);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
      throw Failure{kExitUsage, path + ":" + std::to_string(i + 1) +
                                    ": expected <id>\\t<posteriorgram>[\\t<reference>]"};
    }
    if (!seen.insert(fields[0]).second) {
      throw Failure{kExitUsage, path + ":" + std::to_string(i + 1) + ": duplicate id " + fields[0]};
    }
    fs::path pg = fields[1];
    if (pg.is_relative()) pg = base / pg;
    records.push_back({fields[0], pg.string(), fields.size() == 3 ? fields[2] : ""});
  }
  return records;
}

std::string format_score(double score) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", score);
  return buffer;
}

struct DecodeFlags {
  std::string manifest;
  std::string alphabet;
  std::string lm;
  std::string out;
  double alpha = 0;
  double beta = 0;
  std::size_t beam_width = 0;
  double oov_floor = 0;
  std::size_t jobs = 1;
  // class-LM decoding only
  std::string categories = "PER";
  std::string names;
  double gamma = 0.6931471805599453;
};

void add_decode_flags(CLI::App* cmd, DecodeFlags& f) {
  entctc_decode_options defaults;
  entctc_decode_options_init(&defaults);
  f.alpha = defaults.alpha;
  f.beta = defaults.beta;
  f.beam_width = defaults.beam_width;
  f.oov_floor = defaults.oov_floor;
  cmd->add_option("--manifest", f.manifest, "TSV of <id> <posteriorgram> [<reference>]")
      ->required();
  cmd->add_option("--alphabet", f.alphabet, "Alphabet JSON (default: built-in 32 symbols)");
  cmd->add_option("--lm", f.lm, "ARPA language model");
  cmd->add_option("--alpha", f.alpha, "LM weight")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Word insertion bonus")->capture_default_str();
  cmd->add_option("--beam-width", f.beam_width, "Beam width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--oov-floor", f.oov_floor, "Natural-log score of unknown words")
      ->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "Decoding threads")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
}

int run_decode(const DecodeFlags& f, bool class_lm) {
  const Alphabet alphabet = load_alphabet(f.alphabet);
  const Lm lm = load_lm(f.lm);
  const auto records = read_manifest(f.manifest);

  std::vector<Pg> pgs;
  pgs.reserve(records.size());
  for (const auto& r : records) {
    entctc_pg_t raw = nullptr;
    check(entctc_pg_read(&raw, r.pg_path.c_str()), "utterance " + r.id + " (" + r.pg_path + ")");
    pgs.emplace_back(raw);
    check(entctc_pg_check_alphabet(raw, alphabet.get()), "utterance " + r.id);
  }

  entctc_decode_options options;
  options.alpha = f.alpha;
  options.beta = f.beta;
  options.beam_width = f.beam_width;
  options.oov_floor = f.oov_floor;
  entctc_decoder_t raw_decoder = nullptr;
  check(entctc_decoder_create(&raw_decoder, alphabet.get(), lm.get(), &options), "decoder");
  const Decoder decoder(raw_decoder);
  if (class_lm) {
    std::string names_json;
    if (!f.names.empty()) {
      std::ifstream in(f.names);
      if (!in) throw Failure{kExitIo, "cannot open " + f.names};
      std::ostringstream buffer;
      buffer << in.rdbuf();
      names_json = buffer.str();
    }
    check(entctc_decoder_enable_class_lm(decoder.get(), f.categories.c_str(),
                                         f.names.empty() ? nullptr : names_json.c_str(), f.gamma),
          "class LM");
  }

  std::vector<entctc_pg_t> handles;
  for (const auto& p : pgs) handles.push_back(p.get());
  std::vector<char*> transcripts(records.size(), nullptr);
  std::vector<double> scores(records.size(), 0.0);
  std::size_t failed = 0;
  const int status = entctc_decoder_decode_batch(decoder.get(), handles.data(), handles.size(),
                                                 f.jobs, transcripts.data(), scores.data(),
                                                 &failed);
  check(status, status == ENTCTC_OK || failed >= records.size()
                    ? std::string()
                    : "utterance " + records[failed].id);
  std::vector<OwnedString> owned;
  for (char* t : transcripts) owned.emplace_back(t);

  Output out(f.out);
  for (std::size_t i = 0; i < records.size(); ++i) {
    out.stream() << records[i].id << '\t' << owned[i].get() << '\t' << format_score(scores[i])
                 << '\n';
  }
  out.finish(f.out);
  return 0;
}

struct SynthFlags {
  std::string refs;
  std::string alphabet;
  double noise = 0.0;
  std::uint32_t dur_max = 1;
  std::uint64_t seed = 0;
  std::string outdir;
  std::size_t jobs = 1;
};

std::uint64_t utterance_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 step over (seed, index)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int run_synth(const SynthFlags& f) {
  if (!(f.noise >= 0.0 && f.noise < 1.0)) {
    throw Failure{kExitUsage, "--noise must lie in [0, 1)"};
  }
  const Alphabet alphabet = load_alphabet(f.alphabet);
  const auto refs = read_lines(f.refs);
  std::error_code ec;
  fs::create_directories(f.outdir, ec);
  if (ec) throw Failure{kExitIo, "cannot create " + f.outdir + ": " + ec.message()};

  std::vector<std::string> ids(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "utt%06zu", i + 1);
    ids[i] = id;
  }

  std::vector<int> status(refs.size(), ENTCTC_OK);
  std::vector<std::string> messages(refs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < refs.size(); i = next++) {
      entctc_pg_t raw = nullptr;
      int s = entctc_pg_synthesize(&raw, alphabet.get(), refs[i].c_str(), f.noise, f.dur_max,
                                   utterance_seed(f.seed, i));
      const Pg pg(raw);
      if (s == ENTCTC_OK) {
        s = entctc_pg_write(raw, (fs::path(f.outdir) / (ids[i] + ".lpg")).string().c_str());
      }
      if (s != ENTCTC_OK) messages[i] = entctc_last_error();
      status[i] = s;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < f.jobs && t < refs.size(); ++t) pool.emplace_back(work);
    work();
  }
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (status[i] != ENTCTC_OK) {
      throw Failure{exit_code_for(status[i]), f.refs + ":" + std::to_string(i + 1) + " (" +
                                                  ids[i] + "): " + messages[i]};
    }
  }

  const std::string manifest = (fs::path(f.outdir) / "manifest.tsv").string();
  Output out(manifest);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out.stream() << ids[i] << '\t' << ids[i] << ".lpg\t" << to_upper(refs[i]) << '\n';
  }
  out.finish(manifest);
  std::cerr << "wrote " << refs.size() << " posteriorgrams and " << manifest << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-aware CTC decoding toolkit"};
  app.require_subcommand(1);

  DecodeFlags decode;
  auto* cmd_decode = app.add_subcommand("decode", "Prefix beam search over a manifest");
  add_decode_flags(cmd_decode, decode);

  DecodeFlags decode_class;
  auto* cmd_decode_class =
      app.add_subcommand("decode-class", "Decode with a class-token (semantic) LM");
  add_decode_flags(cmd_decode_class, decode_class);
  cmd_decode_class->add_option("--categories", decode_class.categories,
                               "Comma list of CAT or CAT=LITERAL")
      ->capture_default_str();
  cmd_decode_class->add_option("--names", decode_class.names, "Name dictionary JSON");
  cmd_decode_class->add_option("--gamma", decode_class.gamma, "Bonus for dictionary names")
      ->capture_default_str();

  std::string refs_path, hyps_path, alphabet_path, json_path;
  int ref_column = 0, hyp_column = 0;
  std::string format = "both";
  auto* cmd_eval_ner = app.add_subcommand("eval-ner", "Entity precision/recall/F1");
  cmd_eval_ner->add_option("--refs", refs_path, "Reference transcripts")->required();
  cmd_eval_ner->add_option("--hyps", hyps_path, "Hypothesis transcripts")->required();
  cmd_eval_ner->add_option("--ref-column", ref_column, "1-based TSV column of --refs (0: line)");
  cmd_eval_ner->add_option("--hyp-column", hyp_column, "1-based TSV column of --hyps (0: line)");
  cmd_eval_ner->add_option("--alphabet", alphabet_path, "Alphabet JSON supplying the tags");
  cmd_eval_ner->add_option("--format", format, "json, table or both")
      ->check(CLI::IsMember({"json", "table", "both"}));
  cmd_eval_ner->add_option("--json", json_path, "Also write the JSON report to this file");

  auto* cmd_eval_wer = app.add_subcommand("eval-wer", "Corpus word error rate");
  cmd_eval_wer->add_option("--refs", refs_path)->required();
  cmd_eval_wer->add_option("--hyps", hyps_path)->required();
  cmd_eval_wer->add_option("--ref-column", ref_column);
  cmd_eval_wer->add_option("--hyp-column", hyp_column);
  cmd_eval_wer->add_option("--alphabet", alphabet_path);

  SynthFlags synth;
  auto* cmd_synth = app.add_subcommand("synth", "Synthesize posteriorgrams from transcripts");
  cmd_synth->add_option("--refs", synth.refs, "Tagged transcripts, one per line")->required();
  cmd_synth->add_option("--alphabet", synth.alphabet);
  cmd_synth->add_option("--noise", synth.noise, "Off-target probability mass in [0, 1)");
  cmd_synth->add_option("--dur-max", synth.dur_max, "Maximum frames per character")
      ->check(CLI::PositiveNumber);
  cmd_synth->add_option("--seed", synth.seed);
  cmd_synth->add_option("--outdir", synth.outdir)->required();
  cmd_synth->add_option("--jobs", synth.jobs)->check(CLI::PositiveNumber);

  std::string corpus_path, lm_path, out_path, text_path;
  std::uint32_t order = 4;
  double discount = 0.4;
  bool keep_case = false;
  double oov_floor = -23.025850929940457;
  auto* cmd_lm_build = app.add_subcommand("lm-build", "Estimate an ARPA model from a corpus");
  cmd_lm_build->add_option("--corpus", corpus_path, "One sentence per line")->required();
  cmd_lm_build->add_option("--order", order)->capture_default_str();
  cmd_lm_build->add_option("--discount", discount)->capture_default_str();
  cmd_lm_build->add_option("--out", out_path)->required();
  cmd_lm_build->add_flag("--keep-case", keep_case, "Do not uppercase the corpus");

  auto* cmd_lm_score = app.add_subcommand("lm-score", "Score sentences (natural log)");
  cmd_lm_score->add_option("--lm", lm_path)->required();
  cmd_lm_score->add_option("--text", text_path, "Sentences (default: stdin)");
  cmd_lm_score->add_option("--oov-floor", oov_floor)->capture_default_str();
  cmd_lm_score->add_flag("--keep-case", keep_case);

  auto* cmd_lm_info = app.add_subcommand("lm-info", "Summarize an ARPA model");
  cmd_lm_info->add_option("--lm", lm_path)->required();

  bool lenient = false;
  std::string categories = "PER";
  auto* cmd_tag_map = app.add_subcommand("tag-map", "[PER x] bracket text to symbol text");
  auto* cmd_tag_unmap = app.add_subcommand("tag-unmap", "Symbol text to [PER x] bracket text");
  auto* cmd_strip = app.add_subcommand("strip", "Remove tag symbols");
  auto* cmd_transform =
      app.add_subcommand("semlm-transform", "Replace entity spans by class tokens");
  for (auto* cmd : {cmd_tag_map, cmd_tag_unmap, cmd_strip, cmd_transform}) {
    cmd->add_option("--in", text_path, "Input lines (default: stdin)");
    cmd->add_option("--alphabet", alphabet_path);
  }
  cmd_tag_unmap->add_flag("--lenient", lenient, "Drop half-labeled tags instead of failing");
  cmd_transform->add_option("--categories", categories)->capture_default_str();

  std::string train_path, eval_path, class_map;
  auto* cmd_oov = app.add_subcommand("oov-stats", "Out-of-vocabulary statistics");
  cmd_oov->add_option("--train", train_path, "Training transcripts")->required();
  cmd_oov->add_option("--eval", eval_path, "Evaluation transcripts")->required();
  cmd_oov->add_option("--alphabet", alphabet_path);
  cmd_oov->add_option("--class-map", class_map,
                      "Class-map both sides first (comma list of CAT or CAT=LITERAL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_decode) return run_decode(decode, false);
    if (*cmd_decode_class) return run_decode(decode_class, true);
    if (*cmd_synth) return run_synth(synth);

    if (*cmd_eval_ner || *cmd_eval_wer) {
      const Alphabet alphabet = load_alphabet(alphabet_path);
      const auto refs = read_column(refs_path, ref_column);
      const auto hyps = read_column(hyps_path, hyp_column);
      if (refs.size() != hyps.size()) {
        throw Failure{kExitUsage, refs_path + " has " + std::to_string(refs.size()) +
                                      " lines but " + hyps_path + " has " +
                                      std::to_string(hyps.size())};
      }
      const auto ref_ptrs = c_strings(refs), hyp_ptrs = c_strings(hyps);
      if (*cmd_eval_ner) {
        char* json = nullptr;
        char* table = nullptr;
        check(entctc_eval_ner(alphabet.get(), ref_ptrs.data(), hyp_ptrs.data(), refs.size(), &json,
                              &table),
              "eval-ner");
        const OwnedString json_owned(json), table_owned(table);
        if (format != "table") std::cout << json << '\n';
        if (format == "both") std::cout << '\n';
        if (format != "json") std::cout << table;
        if (!json_path.empty()) {
          Output out(json_path);
          out.stream() << json << '\n';
          out.finish(json_path);
        }
      } else {
        double rate = 0;
        std::size_t edits = 0, words = 0;
        check(entctc_eval_wer(alphabet.get(), ref_ptrs.data(), hyp_ptrs.data(), refs.size(), &rate,
                              &edits, &words),
              "eval-wer");
        std::printf("WER %.6f (%zu edits / %zu reference words)\n", rate, edits, words);
      }
      return 0;
    }

    if (*cmd_lm_build) {
      auto lines = read_lines(corpus_path);
      if (!keep_case) {
        for (auto& l : lines) l = to_upper(l);
      }
      const auto ptrs = c_strings(lines);
      entctc_lm_t raw = nullptr;
      check(entctc_lm_build(&raw, ptrs.data(), ptrs.size(), order, discount), "lm-build");
      const Lm lm(raw);
      check(entctc_lm_write_arpa(lm.get(), out_path.c_str()), out_path);
      return 0;
    }

    if (*cmd_lm_score) {
      const Lm lm = load_lm(lm_path);
      double total = 0.0;
      std::size_t total_oov = 0;
      for (auto line : read_lines(text_path)) {
        if (!keep_case) line = to_upper(line);
        double lp = 0.0;
        std::size_t oov = 0;
        check(entctc_lm_score_sentence(lm.get(), line.c_str(), oov_floor, &lp, &oov), "lm-score");
        std::printf("%.6f\t%zu\t%s\n", lp, oov, line.c_str());
        total += lp;
        total_oov += oov;
      }
      std::printf("total\t%.6f\toov\t%zu\n", total, total_oov);
      return 0;
    }

    if (*cmd_lm_info) {
      const Lm lm = load_lm(lm_path);
      std::uint32_t n = 0;
      std::size_t vocab = 0;
      check(entctc_lm_order(lm.get(), &n), "lm-info");
      check(entctc_lm_vocab_size(lm.get(), &vocab), "lm-info");
      std::printf("order\t%u\nvocab\t%zu\n", n, vocab);
      for (std::uint32_t k = 1; k <= n; ++k) {
        std::size_t count = 0;
        check(entctc_lm_ngram_count(lm.get(), k, &count), "lm-info");
        std::printf("ngram %u\t%zu\n", k, count);
      }
      return 0;
    }

    if (*cmd_tag_map || *cmd_tag_unmap || *cmd_strip || *cmd_transform) {
      const Alphabet alphabet = load_alphabet(alphabet_path);
      const auto lines = read_lines(text_path);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        char* out = nullptr;
        int status;
        if (*cmd_tag_map) {
          status = entctc_tag_map(alphabet.get(), lines[i].c_str(), &out);
        } else if (*cmd_tag_unmap) {
          status = entctc_tag_unmap(alphabet.get(), lines[i].c_str(), lenient ? 1 : 0, &out);
        } else if (*cmd_strip) {
          status = entctc_strip_tags(alphabet.get(), lines[i].c_str(), &out);
        } else {
          status = entctc_semlm_transform(alphabet.get(), lines[i].c_str(), categories.c_str(),
                                          &out, nullptr);
        }
        check(status, "line " + std::to_string(i + 1));
        const OwnedString owned(out);
        std::cout << out << '\n';
      }
      return 0;
    }

    if (*cmd_oov) {
      const Alphabet alphabet = load_alphabet(alphabet_path);
      auto train = read_lines(train_path);
      auto eval = read_lines(eval_path);
      if (!class_map.empty()) {
        for (auto* side : {&train, &eval}) {
          for (auto& line : *side) {
            char* out = nullptr;
            check(entctc_semlm_transform(alphabet.get(), line.c_str(), class_map.c_str(), &out,
                                         nullptr),
                  "oov-stats");
            const OwnedString owned(out);
            line = out;
          }
        }
      }
      const auto train_ptrs = c_strings(train), eval_ptrs = c_strings(eval);
      char* json = nullptr;
      check(entctc_oov_stats(alphabet.get(), train_ptrs.data(), train.size(), eval_ptrs.data(),
                             eval.size(), &json),
            "oov-stats");
      const OwnedString owned(json);
      std::cout << json << '\n';
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  }
  return 0;
}
