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

#ifndef PRETZEL_PIPELINE_HPP_
#define PRETZEL_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pretzel/cusp_geometry.hpp"
#include "pretzel/group_theory.hpp"
#include "pretzel/norm_engine.hpp"

namespace pretzel {

struct Reason {
  std::string text;
  // Short stable identifier of the argument the step rests on.
  std::string anchor;
};

struct LedgerEntry {
  Slope slope{0};
  VerdictStatus status = VerdictStatus::kNotExcluded;
  std::vector<Reason> reasons;
  std::optional<int64_t> min_norm;
  std::optional<int64_t> bound;
  std::optional<std::vector<int64_t>> witness;
};

enum class Conclusion { kNoNontrivialFinite, kInconclusive };
const char* ConclusionName(Conclusion c);

struct EvidenceItem {
  Slope slope{0};
  int64_t ideal_points = 0;
  std::string source;
};

struct Ledger {
  KnotSpec knot;
  int64_t minimal_norm = 0;
  CandidateSet candidates;
  std::vector<EvidenceItem> detections;
  std::vector<LedgerEntry> entries;
  std::vector<std::string> notes;
  bool allow_asserted = false;
  Conclusion conclusion = Conclusion::kInconclusive;

  int CountStatus(VerdictStatus status) const;
  const LedgerEntry* Find(const Slope& s) const;
};

struct ClassifyOptions {
  bool allow_asserted = false;
  // Word-level searches for quotient maps and the C^5 identity. Searches
  // with max_steps == 0 are skipped; abelian checks always run.
  SearchOptions quotient_search{40, 0};
  SearchOptions derivation_search{};
};

// Detection evidence feeding the norm model for (5,5), (5,7), (5,9).
// Computed from the bundled triangulation and polynomial where available.
std::vector<EvidenceItem> DetectionEvidence(const KnotSpec& knot);

Ledger Classify(int p, int q, const ClassifyOptions& options = {});

// "json" (stable key order, schema 1) or "table".
std::string EmitLedger(const Ledger& ledger, const std::string& format);

// Exit code for a ledger: 0 when a conclusion is reached, 3 otherwise.
int ExitCodeFor(const Ledger& ledger);

}  // namespace pretzel

#endif  // PRETZEL_PIPELINE_HPP_
