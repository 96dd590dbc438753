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

#include <string>
#include <vector>

#include "doctest.h"
#include "entctc/error.hpp"
#include "entctc/evalkit.hpp"
#include "json.hpp"

namespace entctc {
namespace {

const TagScheme kScheme;

TEST_CASE("identical transcripts score one") {
  const std::vector<std::string> refs = {
      "{T.C.S.] CEO |Rajesh Gopinathan] heads a meeting in their $Banglore] office.",
      "|BOB] went to $PARIS]"};
  const auto r = evaluate_ner(refs, refs, kScheme);
  CHECK(r.micro.precision == 1.0);
  CHECK(r.micro.recall == 1.0);
  CHECK(r.micro.f1 == 1.0);
  CHECK(r.macro.f1 == 1.0);
  CHECK(r.utterances == 2);
}

TEST_CASE("worked counts") {
  const std::vector<std::string> refs = {"|A] $B]"}, hyps = {"|A] |C]"};
  const auto r = evaluate_ner(refs, hyps, kScheme);
  const auto& per = r.counts(Category::kPerson);
  const auto& loc = r.counts(Category::kLocation);
  CHECK(per.tp == 1);
  CHECK(per.fp == 1);
  CHECK(per.fn == 0);
  CHECK(loc.tp == 0);
  CHECK(loc.fp == 0);
  CHECK(loc.fn == 1);
  CHECK(r.micro.precision == 0.5);
  CHECK(r.micro.recall == 0.5);
  CHECK(r.micro.f1 == 0.5);
  // Macro over PER and LOC, the categories present.
  CHECK(r.macro.precision == doctest::Approx((0.5 + 0.0) / 2));
  CHECK(r.macro.recall == doctest::Approx((1.0 + 0.0) / 2));
  CHECK(r.macro.f1 == doctest::Approx((2.0 / 3.0 + 0.0) / 2));
}

TEST_CASE("half-labeled hypothesis tags are not charged") {
  const std::vector<std::string> refs = {
      "{T.C.S.] CEO |Rajesh Gopinathan] heads a meeting in their $Banglore] office."};
  const std::vector<std::string> hyps = {
      "{T.C.S.] CEO |Rajesh Gopinathan heads a meeting in their $Banglore] office."};
  const auto r = evaluate_ner(refs, hyps, kScheme);
  CHECK(r.counts(Category::kPerson).fp == 0);
  CHECK(r.counts(Category::kPerson).fn == 1);
  CHECK(r.counts(Category::kOrganization).tp == 1);
  CHECK(r.counts(Category::kLocation).tp == 1);
  CHECK(r.dropped_hyp_tags == 1);
  CHECK(r.dropped_ref_tags == 0);
}

TEST_CASE("duplicates and case") {
  const std::vector<std::string> refs = {"|a] and |A]"}, hyps = {"|A]"};
  const auto r = evaluate_ner(refs, hyps, kScheme);
  CHECK(r.counts(Category::kPerson).tp == 1);
  CHECK(r.micro.f1 == 1.0);
}

TEST_CASE("report properties") {
  const std::vector<std::string> refs = {"|A] $B] {C]", "|D] X", "$E] $F]", ""};
  const std::vector<std::string> hyps = {"|A] $Q] {C]", "|D] |Z]", "$E] {F]", "|W]"};
  const auto r = evaluate_ner(refs, hyps, kScheme);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& c : r.per_category) {
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
  }
  const auto pooled = prf(tp, fp, fn);
  CHECK(r.micro.precision == pooled.precision);
  CHECK(r.micro.recall == pooled.recall);
  CHECK(r.micro.f1 == pooled.f1);

  const auto swapped = evaluate_ner(hyps, refs, kScheme);
  CHECK(swapped.micro.precision == doctest::Approx(r.micro.recall));
  CHECK(swapped.micro.recall == doctest::Approx(r.micro.precision));
  CHECK(swapped.micro.f1 == doctest::Approx(r.micro.f1));

  std::vector<std::string> refs2 = refs, hyps2 = hyps;
  refs2.insert(refs2.end(), refs.begin(), refs.end());
  hyps2.insert(hyps2.end(), hyps.begin(), hyps.end());
  const auto doubled = evaluate_ner(refs2, hyps2, kScheme);
  CHECK(doubled.micro.f1 == doctest::Approx(r.micro.f1));
  CHECK(doubled.macro.f1 == doctest::Approx(r.macro.f1));
  CHECK(doubled.macro.precision == doctest::Approx(r.macro.precision));
}

TEST_CASE("zero conventions and serialization") {
  CHECK(prf(0, 0, 0).f1 == 0.0);
  CHECK(prf(0, 3, 0).precision == 0.0);
  CHECK(prf(0, 0, 2).recall == 0.0);
  const std::vector<std::string> none;
  const auto empty = evaluate_ner(none, none, kScheme);
  CHECK(empty.utterances == 0);
  CHECK(empty.micro.f1 == 0.0);

  const std::vector<std::string> refs = {"|A] $B]"}, hyps = {"|A] |C]"};
  const auto r = evaluate_ner(refs, hyps, kScheme);
  const auto json = nlohmann::json::parse(r.to_json());
  CHECK(json["per_category"]["PER"]["tp"] == 1);
  CHECK(json["per_category"]["LOC"]["fn"] == 1);
  CHECK(json["micro"]["f1"] == 0.5);
  CHECK(json["utterances"] == 1);
  const std::string table = r.to_table();
  for (const char* row : {"Person", "Location", "Organization", "Micro average", "Macro average"}) {
    CHECK(table.find(row) != std::string::npos);
  }
  try {
    (void)evaluate_ner(refs, none, kScheme);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("word error rate") {
  CHECK(wer("A B C", "A B C", kScheme) == 0.0);
  CHECK(wer("A B C D", "A X C D", kScheme) == 0.25);
  CHECK(wer("A B C", "A C", kScheme) == doctest::Approx(1.0 / 3.0));
  CHECK(wer("", "", kScheme) == 0.0);
  const auto empty_ref = wer_counts("", "X Y", kScheme);
  CHECK(empty_ref.empty_reference);
  CHECK(empty_ref.rate() == 2.0);
  CHECK(wer("|bob] ran  to $paris]", "BOB RAN TO PARIS", kScheme) == 0.0);
  CHECK(wer("A   B", "A B", kScheme) == 0.0);
  CHECK(wer("A B", "B A", kScheme) == 1.0);
  CHECK(wer("A", "B C D", kScheme) == 3.0);

  const std::vector<std::string> refs = {"A B C D", "E F G H"}, hyps = {"A B C", "E F X H"};
  CHECK(wer_corpus(refs, hyps, kScheme).rate() == 0.25);
  const std::vector<std::string> r1 = {"A B C"}, h1 = {"A C"};
  CHECK(wer_corpus(r1, h1, kScheme).rate() == wer("A B C", "A C", kScheme));
  CHECK_THROWS_AS(wer_corpus(refs, h1, kScheme), Error);
}

}  // namespace
}  // namespace entctc
