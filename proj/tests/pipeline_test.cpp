// Copyright 2026 The pretzel-surgeon Authors
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

#include <set>
#include <sstream>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "pretzel/error.hpp"
#include "pretzel/pipeline.hpp"

using namespace pretzel;

namespace {

NormModel ModelFromEvidence(const KnotSpec& knot) {
  std::vector<Detection> d;
  for (const EvidenceItem& e : DetectionEvidence(knot)) {
    d.push_back({e.slope, e.ideal_points});
  }
  return AssembleConstraints(knot, d);
}

}  // namespace

TEST_CASE("classification outcomes") {
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}, {5, 11}, {11, 13}, {7, 21}}) {
    const Ledger l = Classify(p, q);
    CHECK_MESSAGE(l.conclusion == Conclusion::kNoNontrivialFinite, p << "," << q);
    CHECK(l.CountStatus(VerdictStatus::kNotExcluded) == 0);
    CHECK(l.CountStatus(VerdictStatus::kPaperAsserted) == 0);
    CHECK(ExitCodeFor(l) == 0);
  }
  for (auto [p, q, s] : {std::tuple{7, 9, 33}, {9, 9, 37}}) {
    const Ledger l = Classify(p, q);
    CHECK(l.conclusion == Conclusion::kInconclusive);
    CHECK(l.CountStatus(VerdictStatus::kPaperAsserted) == 1);
    REQUIRE(l.Find(Slope(s)) != nullptr);
    CHECK(l.Find(Slope(s))->status == VerdictStatus::kPaperAsserted);
    CHECK(ExitCodeFor(l) == 3);

    ClassifyOptions allow;
    allow.allow_asserted = true;
    const Ledger a = Classify(p, q, allow);
    CHECK(a.conclusion == Conclusion::kNoNontrivialFinite);
    CHECK(ExitCodeFor(a) == 0);
  }
  CHECK_THROWS_AS(Classify(5, 6), Error);
  CHECK_THROWS_AS(Classify(7, 5), Error);
}

TEST_CASE("every entry is a candidate and carries anchored reasons") {
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}, {7, 9}}) {
    const Ledger l = Classify(p, q);
    CHECK(l.entries.size() == l.candidates.entries.size());
    std::set<std::string> seen;
    for (const LedgerEntry& e : l.entries) {
      CHECK(l.candidates.Contains(e.slope));
      CHECK(seen.insert(e.slope.ToString()).second);
      REQUIRE_FALSE(e.reasons.empty());
      for (const Reason& r : e.reasons) {
        CHECK_FALSE(r.anchor.empty());
        CHECK_FALSE(r.text.empty());
      }
    }
  }
}

TEST_CASE("minimal norms are reproduced by brute force") {
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}}) {
    const KnotSpec knot(p, q);
    const NormModel model = ModelFromEvidence(knot);
    const Ledger l = Classify(p, q);
    CHECK(l.minimal_norm == MinimalNorm(knot));
    for (const LedgerEntry& e : l.entries) {
      if (!e.min_norm) continue;
      const MinNormResult b = MinNormBruteForce(model, e.slope);
      CHECK_MESSAGE(*e.min_norm == b.value, p << "," << q << " " << e.slope.ToString());
      REQUIRE(e.witness.has_value());
      CHECK(*e.witness == b.witness);
      CHECK(NormValue(model, *e.witness, e.slope) == *e.min_norm);
    }
  }
}

TEST_CASE("excluded verdicts respect their bounds") {
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}}) {
    const Ledger l = Classify(p, q);
    for (const LedgerEntry& e : l.entries) {
      if (e.status != VerdictStatus::kExcluded) continue;
      REQUIRE(e.min_norm.has_value());
      REQUIRE(e.bound.has_value());
      CHECK(*e.min_norm > *e.bound);
    }
  }
  const Ledger l59 = Classify(5, 9);
  const LedgerEntry* e22 = l59.Find(Slope(22));
  REQUIRE(e22 != nullptr);
  CHECK(e22->status == VerdictStatus::kExcludedByGroupTheory);
  CHECK(*e22->min_norm == 92);
}

TEST_CASE("emitted ledgers") {
  const Ledger l = Classify(5, 9);
  const std::string a = EmitLedger(l, "json");
  CHECK(a == EmitLedger(Classify(5, 9), "json"));
  const nlohmann::json j = nlohmann::json::parse(a);
  CHECK(j["knot"] == nlohmann::json::array({5, 9}));
  CHECK(j["conclusion"] == "no_nontrivial_finite");
  CHECK(j["entries"].size() == l.entries.size());
  for (const auto& e : j["entries"]) {
    CHECK(e.contains("slope"));
    CHECK(e.contains("status"));
    CHECK(e["reasons"].size() >= 1);
  }

  const std::string table = EmitLedger(l, "table");
  std::istringstream in(table);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  // Knot line, column header, one row per candidate, trivial row.
  CHECK(lines.size() == 2 + l.entries.size() + 1);
  CHECK(l.entries.size() == 11);
  CHECK(lines.back().rfind("1/0", 0) == 0);
  CHECK(lines.back().find("trivial") != std::string::npos);

  try {
    EmitLedger(l, "yaml");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("conclusion names") {
  CHECK(std::string(ConclusionName(Conclusion::kNoNontrivialFinite)) == "no_nontrivial_finite");
  CHECK(std::string(ConclusionName(Conclusion::kInconclusive)) == "inconclusive");
}
