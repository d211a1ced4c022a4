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

#include "pretzel/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pretzel/error.hpp"
#include "pretzel/ideal_points.hpp"
#include "pretzel/ohtsuki.hpp"

namespace pretzel {

namespace {

using Json = nlohmann::ordered_json;

constexpr char kAnchorNormBound[] = "finite-slope-norm-bound";
constexpr char kAnchorBoundary[] = "boundary-slope-not-finite";
constexpr char kAnchorEven[] = "even-surgery-quotient";
constexpr char kAnchorCoxeterInfinite[] = "cited:(2,p,q;2)-infinite";
constexpr char kAnchorGm5[] = "2(p+q)-1-quotient-G5pq";
constexpr char kAnchorGmInfinite[] = "cited:G^{m,p,q}-infinite";
constexpr char kAnchorGm3[] = "2(p+q)+1-quotient-G3pq";
constexpr char kAnchorRedundant[] = "2(p+q)-k-redundant-relator";
constexpr char kAnchorShift[] = "shift-identity-exclusion";
constexpr char kAnchorResidual[] = "residual-case-asserted";

std::string Join(const std::vector<int64_t>& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string QuotientSummary(const QuotientReport& r) {
  size_t proved = 0;
  for (const auto& c : r.relators) proved += c.status == RelatorStatus::kProved;
  std::string out = std::string("relator images vanish in H1 of the target: ") +
                    (r.abelian_ok ? "yes" : "no");
  out += "; word-level derivations " + std::to_string(proved) + "/" +
         std::to_string(r.relators.size());
  return out;
}

// Group-theoretic exclusion through one or two quotient presets.
void ExcludeByQuotient(LedgerEntry* entry, int p, int q,
                       const std::vector<std::string>& presets,
                       const std::string& anchor,
                       const std::string& infinite_text,
                       const std::string& infinite_anchor,
                       const ClassifyOptions& options) {
  bool ok = true;
  for (const auto& name : presets) {
    const QuotientPreset preset = MakeQuotientPreset(name, p, q);
    const QuotientReport report = QuotientConsistency(
        preset.source, preset.target, preset.images, options.quotient_search);
    entry->reasons.push_back(
        {preset.description + ": " + QuotientSummary(report), anchor});
    ok = ok && report.abelian_ok;
  }
  entry->reasons.push_back({infinite_text, infinite_anchor});
  entry->status = ok ? VerdictStatus::kExcludedByGroupTheory
                     : VerdictStatus::kNotExcluded;
}

void NormRoute(Ledger* ledger, const ClassifyOptions& options) {
  const KnotSpec& knot = ledger->knot;
  const BoundarySlopeTable table = BoundarySlopes(knot);
  ledger->detections = DetectionEvidence(knot);
  std::vector<Detection> detections;
  std::set<Slope> strict;
  for (const auto& d : ledger->detections) {
    detections.push_back({d.slope, d.ideal_points});
    if (d.slope.numerator() != 0 && d.ideal_points > 0) strict.insert(d.slope);
  }
  const int detected = static_cast<int>(strict.size());
  ledger->candidates = CandidateFiniteSlopes(knot, table, detected);
  const NormModel model = AssembleConstraints(table, detections);
  const int64_t S = ledger->minimal_norm;

  for (const CandidateEntry& c : ledger->candidates.entries) {
    LedgerEntry entry;
    entry.slope = c.slope;
    for (const auto& f : c.filters) entry.reasons.push_back({f, "candidate-filter"});
    const int64_t quick = NormLowerBound(model, c.slope, model.boundary);
    const MinNormResult best = MinNormOverFeasible(model, c.slope);
    const Verdict v = FiniteSlopeVerdict(model, c.slope, best.value);
    entry.min_norm = best.value;
    entry.bound = v.bound_used;
    entry.witness = best.witness;
    entry.reasons.push_back(
        {"detection lower bounds give ||" + c.slope.ToString() +
             "|| >= " + std::to_string(quick),
         "norm-lower-bound"});
    entry.reasons.push_back(
        {"exact minimum over feasible coefficients is " +
             std::to_string(best.value) + " at " + Join(best.witness) + "; bound " +
             (v.bound_kind == BoundKind::kTwoS ? "2S = " : "S+8 = ") +
             std::to_string(v.bound_used),
         kAnchorNormBound});
    entry.status = v.status;
    if (entry.status == VerdictStatus::kNotExcluded) {
      const int64_t k = knot.toroidal_slope() - c.slope.numerator();
      if (c.slope.is_integral() && k >= 1 && !(knot.p() == 5 && knot.q() == 5)) {
        const RedundancyReport redundancy =
            RedundantRelatorCheck(knot.p(), knot.q(), static_cast<int>(k),
                             options.derivation_search);
        if (redundancy.applies && redundancy.certificate.has_value()) {
          entry.reasons.push_back(
              {"s = 2(p+q) - " + std::to_string(k) +
                   ": adding x^(k-1) maps the surgered group onto G^{5," +
                   std::to_string(knot.p()) + "," + std::to_string(knot.q()) +
                   "}; C^" + std::to_string(k - 1) + " is trivial there (" +
                   redundancy.method + ", " +
                   std::to_string(redundancy.certificate->steps.size()) +
                   " certified steps)",
               kAnchorRedundant});
          entry.reasons.push_back(
              {"G^{5,p,q} is infinite for 5 <= p <= q, (p,q) != (5,5)",
               kAnchorGmInfinite});
          entry.status = VerdictStatus::kExcludedByGroupTheory;
        }
      }
    }
    (void)S;
    ledger->entries.push_back(std::move(entry));
  }
}

void SixTheoremRoute(Ledger* ledger, const ClassifyOptions& options) {
  const KnotSpec& knot = ledger->knot;
  const int p = knot.p();
  const int q = knot.q();
  const int64_t T = knot.toroidal_slope();
  const BoundarySlopeTable table = BoundarySlopes(knot);
  ledger->candidates = ExceptionalCandidatesSixTheorem(knot);

  std::optional<ShiftExclusionReport> shift;
  if (p == 5) shift = ShiftExclusion(q);

  for (const CandidateEntry& c : ledger->candidates.entries) {
    LedgerEntry entry;
    entry.slope = c.slope;
    for (const auto& f : c.filters) entry.reasons.push_back({f, "six-theorem-candidate"});
    const int64_t s = c.slope.numerator();
    if (IsBoundarySlope(table, c.slope) == Membership::kYes) {
      entry.status = VerdictStatus::kBoundarySlope;
      entry.reasons.push_back(
          {c.slope.ToString() + " is a boundary slope, hence not finite",
           kAnchorBoundary});
    } else if (c.slope.is_even_integer() && (p > 5 || q >= 11)) {
      ExcludeByQuotient(&entry, p, q, {"even", "even-coxeter"}, kAnchorEven,
                        "(2,p,q;2) is infinite under these hypotheses",
                        kAnchorCoxeterInfinite, options);
    } else if (s == T - 1) {
      ExcludeByQuotient(&entry, p, q, {"gm5"}, kAnchorGm5,
                        "G^{5,p,q} is infinite for 5 <= p <= q, (p,q) != (5,5)",
                        kAnchorGmInfinite, options);
    } else if (s == T + 1 && p >= 7) {
      const bool hypotheses = (p > 7 || q >= 21) && !(p == 9 && q == 9);
      if (hypotheses) {
        ExcludeByQuotient(&entry, p, q, {"gm3"}, kAnchorGm3,
                          "G^{3,p,q} is infinite under these hypotheses",
                          kAnchorGmInfinite, options);
      } else {
        entry.status = VerdictStatus::kPaperAsserted;
        entry.reasons.push_back(
            {"residual case: the exclusion is asserted by a norm argument "
             "whose boundary-slope data is not available here",
             kAnchorResidual});
      }
    } else if (shift.has_value() && (s == 2 * q + 11 || s == 2 * q + 13)) {
      const ShiftExclusionBranch& b = s == 2 * q + 11 ? shift->slope_2q11 : shift->slope_2q13;
      entry.min_norm = b.exact_min;
      entry.bound = b.verdict.bound_used;
      entry.witness = b.witness;
      entry.reasons.push_back(
          {"if a1..a4 vanish then ||2q+11|| = 2(a5+a6) = S, impossible "
           "next to the non-integral boundary slope",
           kAnchorShift});
      entry.reasons.push_back(
          {"otherwise ||" + c.slope.ToString() + "|| >= " +
               std::to_string(b.valid_bound) + " (exact minimum " +
               std::to_string(b.exact_min) + ") > S+8 = " +
               std::to_string(b.verdict.bound_used),
           kAnchorNormBound});
      entry.status = b.verdict.status;
    } else {
      entry.status = VerdictStatus::kNotExcluded;
      entry.reasons.push_back({"no exclusion argument applies", "none"});
    }
    ledger->entries.push_back(std::move(entry));
  }
}

std::string Pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

const char* ConclusionName(Conclusion c) {
  return c == Conclusion::kNoNontrivialFinite ? "no_nontrivial_finite"
                                              : "inconclusive";
}

int Ledger::CountStatus(VerdictStatus status) const {
  return static_cast<int>(std::count_if(
      entries.begin(), entries.end(),
      [&](const LedgerEntry& e) { return e.status == status; }));
}

const LedgerEntry* Ledger::Find(const Slope& s) const {
  for (const auto& e : entries) {
    if (e.slope == s) return &e;
  }
  return nullptr;
}

std::vector<EvidenceItem> DetectionEvidence(const KnotSpec& knot) {
  std::vector<EvidenceItem> out;
  if (knot.p() != 5 || knot.q() > 9) return out;
  if (knot.q() == 5) {
    const GluingSystem sys = Pretzel255System();
    std::set<Slope> scanned;
    for (const auto& rec : ScanDegenerations(sys)) scanned.insert(rec.slope);
    for (const Slope& s : scanned) {
      out.push_back({s, 1, "degeneration scan of the bundled triangulation"});
    }
    for (const char* name : {"slope20", "slope22"}) {
      const SubstitutionPlan plan = PlanByName(name);
      std::vector<double> volumes;
      Slope slope(0);
      for (size_t b = 0; b < plan.branch_guesses.size(); ++b) {
        const ContinuationResult r =
            ContinueToIdealPoint(sys, plan, static_cast<int>(b));
        slope = r.slope;
        volumes.push_back(BlochWignerVolume(r.limit_shapes, r.degenerate));
      }
      int64_t distinct = 1;
      if (volumes.size() == 2 && std::abs(volumes[0] - volumes[1]) > 1e-3) distinct = 2;
      out.push_back({slope, distinct,
                     std::string("continuation along plan ") + name +
                         (distinct == 2 ? " (branches of opposite volume)" : "")});
    }
    return out;
  }
  const std::string cited = "degeneration method on the census triangulation";
  out.push_back({Slope(14), 1, cited});
  out.push_back({Slope(15), 1, cited});
  if (knot.q() == 7) {
    out.push_back({Slope(37, 2), 1, cited});
    const RootSet roots = Roots(OhtsukiPolynomial());
    std::vector<std::complex<double>> ratios;
    for (const auto& z : roots.roots) ratios.push_back(CrossRatioValue(z));
    const ClusterReport clusters = CountDistinct(ratios);
    out.push_back({Slope(24), clusters.count,
                   "distinct cross ratios over the roots of the degree-16 "
                   "polynomial"});
  } else {
    out.push_back({Slope(67, 3), 1, cited});
  }
  return out;
}

Ledger Classify(int p, int q, const ClassifyOptions& options) {
  const KnotSpec knot(p, q);
  Ledger ledger{knot, MinimalNorm(knot), CandidateSet{knot, "", {}}, {}, {}, {},
                options.allow_asserted, Conclusion::kInconclusive};
  if (p == 5 && q <= 9) {
    NormRoute(&ledger, options);
  } else {
    SixTheoremRoute(&ledger, options);
  }
  ledger.notes.push_back("1/0 is the trivial surgery and is always finite");

  bool reached = true;
  for (const auto& e : ledger.entries) {
    switch (e.status) {
      case VerdictStatus::kExcluded:
      case VerdictStatus::kBoundarySlope:
      case VerdictStatus::kExcludedByGroupTheory:
        break;
      case VerdictStatus::kPaperAsserted:
        reached = reached && options.allow_asserted;
        break;
      case VerdictStatus::kNotExcluded:
        reached = false;
        break;
    }
  }
  ledger.conclusion =
      reached ? Conclusion::kNoNontrivialFinite : Conclusion::kInconclusive;
  return ledger;
}

std::string EmitLedger(const Ledger& ledger, const std::string& format) {
  if (format == "json") {
    Json j;
    j["schema"] = 1;
    j["knot"] = {ledger.knot.p(), ledger.knot.q()};
    j["minimal_norm"] = ledger.minimal_norm;
    j["candidate_method"] = ledger.candidates.method;
    Json cands = Json::array();
    for (const auto& s : ledger.candidates.slopes()) cands.push_back(s.ToString());
    j["candidates"] = cands;
    Json det = Json::array();
    for (const auto& d : ledger.detections) {
      det.push_back({{"slope", d.slope.ToString()},
                     {"ideal_points", d.ideal_points},
                     {"source", d.source}});
    }
    j["detections"] = det;
    Json entries = Json::array();
    for (const auto& e : ledger.entries) {
      Json je;
      je["slope"] = e.slope.ToString();
      je["status"] = VerdictStatusName(e.status);
      if (e.min_norm) je["min_norm"] = *e.min_norm;
      if (e.bound) je["bound"] = *e.bound;
      if (e.witness) je["witness"] = *e.witness;
      Json reasons = Json::array();
      for (const auto& r : e.reasons) {
        reasons.push_back({{"anchor", r.anchor}, {"text", r.text}});
      }
      je["reasons"] = reasons;
      entries.push_back(je);
    }
    j["entries"] = entries;
    j["notes"] = ledger.notes;
    j["paper_asserted"] = ledger.CountStatus(VerdictStatus::kPaperAsserted);
    j["allow_asserted"] = ledger.allow_asserted;
    j["conclusion"] = ConclusionName(ledger.conclusion);
    return j.dump(2) + "\n";
  }
  if (format == "table") {
    std::ostringstream out;
    out << "knot " << ledger.knot.ToString() << "  S = " << ledger.minimal_norm
        << "  conclusion: " << ConclusionName(ledger.conclusion) << "\n";
    out << Pad("slope", 8) << Pad("status", 26) << Pad("min_norm", 10)
        << Pad("bound", 8) << "basis\n";
    for (const auto& e : ledger.entries) {
      out << Pad(e.slope.ToString(), 8) << Pad(VerdictStatusName(e.status), 26)
          << Pad(e.min_norm ? std::to_string(*e.min_norm) : "-", 10)
          << Pad(e.bound ? std::to_string(*e.bound) : "-", 8)
          << (e.reasons.empty() ? "" : e.reasons.back().anchor) << "\n";
    }
    out << Pad("1/0", 8) << Pad("trivial", 26) << Pad("-", 10) << Pad("-", 8)
        << ledger.notes.front() << "\n";
    return out.str();
  }
  Fail(ErrorCode::kInvalidArgument, "unknown ledger format '" + format +
                                        "' (expected json or table)");
}

int ExitCodeFor(const Ledger& ledger) {
  return ledger.conclusion == Conclusion::kNoNontrivialFinite ? 0 : 3;
}

}  // namespace pretzel
