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

#include "entctc/evalkit.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "entctc/entities.hpp"
#include "entctc/error.hpp"
#include "entctc/ngram_lm.hpp"
#include "json.hpp"

namespace entctc {

namespace {

void check_lengths(std::size_t refs, std::size_t hyps) {
  if (refs != hyps) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(refs) + " references but " +
                                                std::to_string(hyps) + " hypotheses");
  }
}

nlohmann::ordered_json prf_json(const PrfScores& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = up;
    }
  }
  return row[b.size()];
}

}  // namespace

PrfScores prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  PrfScores s;
  if (tp + fp > 0) s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) s.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (s.precision + s.recall > 0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

PrfScores CategoryCounts::scores() const { return prf(tp, fp, fn); }

EvalReport evaluate_ner(std::span<const std::string> refs, std::span<const std::string> hyps,
                        const TagScheme& scheme) {
  check_lengths(refs.size(), hyps.size());
  EvalReport report;
  report.utterances = refs.size();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto ref = parse_tagged(to_upper(refs[i]), scheme, ParseMode::kLenient);
    const auto hyp = parse_tagged(to_upper(hyps[i]), scheme, ParseMode::kLenient);
    report.dropped_ref_tags += ref.dropped;
    report.dropped_hyp_tags += hyp.dropped;
    const EntitySet ref_set = to_entity_set(ref.spans);
    const EntitySet hyp_set = to_entity_set(hyp.spans);
    for (const auto& key : hyp_set) {
      auto& counts = report.per_category[static_cast<std::size_t>(key.first)];
      (ref_set.count(key) ? counts.tp : counts.fp) += 1;
    }
    for (const auto& key : ref_set) {
      if (!hyp_set.count(key)) report.per_category[static_cast<std::size_t>(key.first)].fn += 1;
    }
  }

  CategoryCounts pooled;
  std::size_t present = 0;
  for (const auto& c : report.per_category) {
    pooled.tp += c.tp;
    pooled.fp += c.fp;
    pooled.fn += c.fn;
    if (c.tp + c.fp + c.fn == 0) continue;
    const PrfScores s = c.scores();
    report.macro.precision += s.precision;
    report.macro.recall += s.recall;
    report.macro.f1 += s.f1;
    ++present;
  }
  if (present > 0) {
    report.macro.precision /= static_cast<double>(present);
    report.macro.recall /= static_cast<double>(present);
    report.macro.f1 /= static_cast<double>(present);
  }
  report.micro = pooled.scores();
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  auto& cats = doc["per_category"] = nlohmann::ordered_json::object();
  for (Category c : kAllCategories) {
    const auto& counts = this->counts(c);
    const PrfScores s = counts.scores();
    cats[std::string(category_name(c))] = {{"tp", counts.tp},          {"fp", counts.fp},
                                           {"fn", counts.fn},          {"precision", s.precision},
                                           {"recall", s.recall},       {"f1", s.f1}};
  }
  doc["micro"] = prf_json(micro);
  doc["macro"] = prf_json(macro);
  doc["utterances"] = utterances;
  doc["dropped_hyp_tags"] = dropped_hyp_tags;
  doc["dropped_ref_tags"] = dropped_ref_tags;
  return doc.dump(2);
}

std::string EvalReport::to_table() const {
  std::string out;
  char line[128];
  auto row = [&](const char* name, const PrfScores& s) {
    std::snprintf(line, sizeof line, "%-16s %9.2f %9.2f %9.2f\n", name, s.precision, s.recall,
                  s.f1);
    out += line;
  };
  std::snprintf(line, sizeof line, "%-16s %9s %9s %9s\n", "Category", "Precision", "Recall", "F1");
  out += line;
  row("Person", counts(Category::kPerson).scores());
  row("Location", counts(Category::kLocation).scores());
  row("Organization", counts(Category::kOrganization).scores());
  row("Micro average", micro);
  row("Macro average", macro);
  return out;
}

double WerCounts::rate() const {
  if (empty_reference) return static_cast<double>(edits);
  return static_cast<double>(edits) / static_cast<double>(ref_words);
}

WerCounts wer_counts(std::string_view ref, std::string_view hyp, const TagScheme& scheme) {
  const auto ref_words = tokenize(to_upper(strip_tags(ref, scheme)));
  const auto hyp_words = tokenize(to_upper(strip_tags(hyp, scheme)));
  WerCounts counts;
  counts.edits = edit_distance(ref_words, hyp_words);
  counts.ref_words = ref_words.size();
  counts.hyp_words = hyp_words.size();
  counts.empty_reference = ref_words.empty();
  return counts;
}

double wer(std::string_view ref, std::string_view hyp, const TagScheme& scheme) {
  return wer_counts(ref, hyp, scheme).rate();
}

WerCounts wer_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                     const TagScheme& scheme) {
  check_lengths(refs.size(), hyps.size());
  WerCounts total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const WerCounts c = wer_counts(refs[i], hyps[i], scheme);
    total.edits += c.edits;
    total.ref_words += c.ref_words;
    total.hyp_words += c.hyp_words;
  }
  total.empty_reference = total.ref_words == 0;
  return total;
}

}  // namespace entctc
