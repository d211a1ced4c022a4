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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pretzel/cusp_geometry.hpp"
#include "pretzel/group_theory.hpp"
#include "pretzel/ideal_points.hpp"
#include "pretzel/norm_engine.hpp"
#include "pretzel/ohtsuki.hpp"
#include "pretzel/pipeline.hpp"

using namespace pretzel;

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks for one criterion.
class Check {
 public:
  void That(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string Summary() const {
    std::string s;
    for (size_t i = 0; i < failures_.size() && i < 4; ++i) s += (i ? "; " : "") + failures_[i];
    if (failures_.size() > 4) s += "; ... (" + std::to_string(failures_.size()) + " total)";
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

int g_failed = 0;

void Report(int n, const std::string& title, const std::function<std::string(Check&)>& body) {
  Check c;
  std::string detail;
  try {
    detail = body(c);
  } catch (const std::exception& e) {
    c.That(false, std::string("exception: ") + e.what());
  }
  if (!c.ok()) ++g_failed;
  std::printf("%s criterion %d: %s", c.ok() ? "PASS" : "FAIL", n, title.c_str());
  if (!detail.empty()) std::printf(" [%s]", detail.c_str());
  if (!c.ok()) std::printf(" -- %s", c.Summary().c_str());
  std::printf("\n");
  std::fflush(stdout);
}

NormModel EvidenceModel(int p, int q) {
  const KnotSpec knot(p, q);
  std::vector<Detection> d;
  for (const EvidenceItem& e : DetectionEvidence(knot)) d.push_back({e.slope, e.ideal_points});
  return AssembleConstraints(knot, d);
}

std::string Str(const std::vector<Slope>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].ToString();
  return s + "}";
}

std::string IdealPointScan(Check& c) {
  struct Row {
    const char* type;
    std::vector<int64_t> d;
    Slope slope;
  };
  const std::vector<Row> rows = {
      {"(0,1,inf,0,0,inf,0)", {1, 2, 1, 1, 1, 1, 2}, 14},
      {"(inf,inf,0,0,inf,0,inf)", {2, 1, 1, 1, 1, 2, 1}, 14},
      {"(inf,1,inf,0,0,inf,0)", {1, 4, 2, 4, 3, 1, 6}, 15},
      {"(0,1,inf,inf,0,inf,0)", {4, 3, 1, 1, 1, 2, 1}, 15},
      {"(inf,1,0,0,inf,0,inf)", {4, 1, 3, 4, 2, 6, 1}, 15},
      {"(inf,inf,0,inf,inf,0,inf)", {3, 4, 1, 1, 1, 1, 2}, 15},
  };
  const auto start = Clock::now();
  const auto records = ScanDegenerations(Pretzel255System());
  const double secs = Since(start);
  c.That(records.size() == 6, "expected 6 records, got " + std::to_string(records.size()));
  std::map<std::string, const IdealPointRecord*> by_type;
  for (const auto& r : records) by_type[DegenerationString(r.type)] = &r;
  std::multiset<Slope> slopes;
  for (const auto& row : rows) {
    auto it = by_type.find(row.type);
    if (it == by_type.end()) {
      c.That(false, std::string("missing type ") + row.type);
      continue;
    }
    std::vector<int64_t> abs_d;
    for (int64_t x : it->second->d) abs_d.push_back(std::llabs(x));
    c.That(abs_d == row.d, std::string("d mismatch for ") + row.type);
    c.That(it->second->slope == row.slope, std::string("slope mismatch for ") + row.type);
    slopes.insert(it->second->slope);
  }
  c.That(slopes == std::multiset<Slope>{14, 14, 15, 15, 15, 15}, "slope multiset");
  c.That(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream o;
  o << records.size() << " records, " << secs * 1000 << " ms";
  return o.str();
}

std::string CandidateSets(Check& c) {
  const std::vector<std::pair<KnotSpec, std::vector<Slope>>> finite = {
      {KnotSpec(5, 5),
       {13, 16, 19, 21, 23, Slope(31, 2), Slope(39, 2), Slope(41, 2), Slope(43, 2), Slope(45, 2)}},
      {KnotSpec(5, 7),
       {16, 17, 18, 19, 20, 23, 25, 27, Slope(47, 2), Slope(49, 2), Slope(51, 2), Slope(53, 2)}},
      {KnotSpec(5, 9),
       {21, 22, 23, 24, 27, 29, 31, Slope(55, 2), Slope(57, 2), Slope(59, 2), Slope(61, 2)}},
  };
  std::string detail;
  for (const auto& [knot, expected] : finite) {
    const Ledger l = Classify(knot.p(), knot.q());
    std::vector<Slope> got = l.candidates.slopes();
    std::sort(got.begin(), got.end());
    std::vector<Slope> want = expected;
    std::sort(want.begin(), want.end());
    c.That(got == want, knot.ToString() + " got " + Str(got));
    detail += knot.ToString() + ":" + std::to_string(got.size()) + " ";
  }
  const std::vector<std::pair<KnotSpec, std::vector<Slope>>> six = {
      {KnotSpec(7, 9), {31, 32, 33, 34}},
      {KnotSpec(5, 11), {30, 31, 32, 33, 34, 35}},
  };
  for (const auto& [knot, expected] : six) {
    std::vector<Slope> got = ExceptionalCandidatesSixTheorem(knot).slopes();
    std::sort(got.begin(), got.end());
    c.That(got == expected, knot.ToString() + " got " + Str(got));
    detail += knot.ToString() + ":" + Str(got) + " ";
  }
  detail.pop_back();
  return detail;
}

std::string NormNumbers(Check& c) {
  c.That(MinimalNorm(KnotSpec(5, 5)) == 20, "S(5,5)");
  c.That(MinimalNorm(KnotSpec(5, 7)) == 34, "S(5,7)");
  c.That(MinimalNorm(KnotSpec(5, 9)) == 48, "S(5,9)");
  const NormModel m55 = EvidenceModel(5, 5), m57 = EvidenceModel(5, 7), m59 = EvidenceModel(5, 9);
  const MinNormResult r16 = MinNormOverFeasible(m55, Slope(16));
  c.That(r16.value == 44, "min ||16|| = " + std::to_string(r16.value));
  c.That(r16.witness == std::vector<int64_t>{0, 1, 6, 2, 1}, "witness of ||16||");
  c.That(MinNormOverFeasible(m59, Slope(21)).value == 124, "min ||21||");
  c.That(MinNormOverFeasible(m59, Slope(24)).value == 140, "min ||24||");

  // Each quick bound must hold as stated and must not exceed the exact minimum.
  struct Quick {
    const NormModel* m;
    Slope s;
    std::vector<Slope> subset;
    int64_t bound;
  };
  const std::vector<Slope> a = {14, 15}, b = {14, 15, 20, 22}, c57 = {14, 15, Slope(37, 2)},
                           d = {24}, e = {14, 15, Slope(37, 2), 24}, f = {14, 15, Slope(67, 3)};
  const std::vector<Quick> quick = {
      {&m55, Slope(39, 2), a, 58}, {&m55, Slope(31, 2), b, 72}, {&m55, 21, a, 38},
      {&m55, 13, b, 56},           {&m55, 19, b, 36},           {&m57, Slope(47, 2), c57, 186},
      {&m57, 23, c57, 86},         {&m57, 19, d, 80},           {&m57, 18, d, 96},
      {&m57, 20, e, 108},          {&m59, Slope(55, 2), f, 278}, {&m59, 23, f, 58},
  };
  for (const Quick& qb : quick) {
    const int64_t lb = NormLowerBound(*qb.m, qb.s, qb.subset);
    const int64_t exact = MinNormOverFeasible(*qb.m, qb.s).value;
    c.That(lb == qb.bound, "bound at " + qb.s.ToString() + " = " + std::to_string(lb));
    c.That(qb.bound <= exact, "bound exceeds minimum at " + qb.s.ToString());
  }
  for (Slope s : {Slope(27), Slope(29), Slope(31)}) {
    c.That(MinNormOverFeasible(m59, s).value > 130, "||" + s.ToString() + "|| > 130");
  }
  int verdicts = 0;
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}}) {
    const Ledger l = Classify(p, q);
    for (const LedgerEntry& en : l.entries) {
      ++verdicts;
      const bool group = p == 5 && q == 9 && en.slope == Slope(22);
      const VerdictStatus want =
          group ? VerdictStatus::kExcludedByGroupTheory : VerdictStatus::kExcluded;
      c.That(en.status == want, l.knot.ToString() + " " + en.slope.ToString() + " is " +
                                    VerdictStatusName(en.status));
    }
  }
  return std::to_string(quick.size() + 3) + " bounds, " + std::to_string(verdicts) + " verdicts";
}

std::string NormIdentities(Check& c) {
  std::mt19937_64 rng(2026);
  int samples = 0, first_ok = 0, quoted_ok = 0, term_ok = 0;
  for (int q = 11; q <= 31; q += 2) {
    const NormModel m = FivePretzelModel(q);
    for (int i = 0; i < 100; ++i) {
      const NormShiftReport r = NormShiftIdentity(q, SampleFeasible(m, rng));
      ++samples;
      first_ok += r.first.holds();
      quoted_ok += r.second_quoted.holds();
      term_ok += r.second.holds();
    }
  }
  c.That(first_ok == samples, "S - 4a6 failed on " + std::to_string(samples - first_ok));
  c.That(quoted_ok == samples,
         "3S - 4a6 failed on " + std::to_string(samples - quoted_ok) + "/" +
             std::to_string(samples) + " samples");
  std::ostringstream o;
  o << "S-4a6 " << first_ok << "/" << samples << ", 3S-4a6 " << quoted_ok << "/" << samples
    << ", 3S-8a6 " << term_ok << "/" << samples;
  return o.str();
}

std::string SlopeLengths(Check& c) {
  using Pairs = std::vector<std::pair<int64_t, int64_t>>;
  auto sorted = [](Pairs v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const Pairs knot = sorted(ShortSlopes(KnotCuspLattice()));
  const Pairs rescaled = sorted(ShortSlopes(RescaledKnotCuspLattice()));
  c.That(knot == Pairs{{0, 1}, {1, -1}, {1, 0}, {1, 1}, {1, 2}}, "knot cusp set");
  c.That(rescaled.size() == 7, "rescaled cusp has " + std::to_string(rescaled.size()));
  // Boundary cases are exact: length^2 compared with 36 as a rational.
  for (const auto& [m, n] : knot) {
    c.That(SlopeLengthSquared(KnotCuspLattice(), m, n) <= Rational(36), "length of short slope");
  }
  return std::to_string(knot.size()) + " and " + std::to_string(rescaled.size()) + " slopes";
}

std::string Limits(Check& c) {
  const GluingSystem sys = Pretzel255System();
  const ContinuationResult r22 = ContinueToIdealPoint(sys, Slope22Plan());
  c.That(std::abs(r22.limit[0] - Complex(0.5, 0)) < 1e-6, "z4 limit");
  c.That(std::abs(r22.limit[1] - Complex(-1, 0)) < 1e-6, "z6 limit");
  c.That(r22.slope == Slope(22), "slope 22 valuations");
  c.That(r22.t_schedule.back() <= 1e-4, "schedule reaches 1e-4");
  const double s3 = std::sqrt(3.0);
  for (int branch = 0; branch < 2; ++branch) {
    const ContinuationResult r = ContinueToIdealPoint(sys, Slope20Plan(), branch);
    const double sg = branch == 0 ? 1.0 : -1.0;
    const std::vector<Complex> want{-1.0, Complex(1.5, sg * s3 / 2), Complex(0.5, sg * s3 / 6),
                                    Complex(-0.5, sg * s3 / 2), -1.0};
    for (size_t i = 0; i < want.size(); ++i) {
      c.That(std::abs(r.limit[i] - want[i]) < 1e-6,
             "slope-20 branch " + std::to_string(branch) + " coordinate " + std::to_string(i));
    }
    c.That(r.slope == Slope(20), "slope 20 valuations");
  }
  const auto v = PlanValuations(sys, Slope20Plan());
  c.That(Slope(-v[1], v[0]) == Slope(20), "slope 20 from plan valuations");
  return "22 and 20 (two branches)";
}

std::string Volume(Check& c) {
  const GluingSystem sys = Pretzel255System();
  std::vector<double> vols;
  for (int branch = 0; branch < 2; ++branch) {
    const ContinuationResult r = ContinueToIdealPoint(sys, Slope20Plan(), branch);
    vols.push_back(BlochWignerVolume(r.limit_shapes, r.degenerate));
  }
  c.That(std::abs(std::abs(vols[0]) - 2.029883) < 1e-4, "branch 0 volume");
  c.That(std::abs(vols[0] + vols[1]) < 1e-4, "branches have opposite volume");
  const double regular = BlochWigner(std::polar(1.0, std::acos(-1.0) / 3));
  c.That(std::abs(regular - 1.0149416) < 1e-7, "regular tetrahedron");
  std::ostringstream o;
  o.precision(8);
  o << vols[0] << ", " << vols[1] << "; regular " << regular;
  return o.str();
}

std::string Ohtsuki(Check& c) {
  const RootSet roots = Roots(OhtsukiPolynomial(), 1e-10);
  c.That(roots.roots.size() == 16, "root count");
  for (double r : roots.residuals) c.That(r < 1e-10, "residual " + std::to_string(r));
  std::vector<std::complex<double>> values;
  for (const auto& z : roots.roots) values.push_back(CrossRatioValue(z));
  const ClusterReport cl = CountDistinct(values, 1e-6);
  c.That(cl.count == 8, "distinct values " + std::to_string(cl.count));
  c.That(cl.min_gap > 1e-5, "gap");
  std::ostringstream o;
  o << roots.roots.size() << " roots, max residual " << roots.max_residual << ", " << cl.count
    << " values, min gap " << cl.min_gap;
  return o.str();
}

std::string Groups(Check& c) {
  const std::vector<std::tuple<int, int, int>> samples = {
      {5, 5, 16}, {5, 7, 18}, {5, 9, 22}, {5, 5, 13}, {5, 7, 23},
      {5, 9, 27}, {7, 9, 31}, {5, 11, 33}, {7, 9, -3}, {11, 13, 49}};
  for (auto [p, q, s] : samples) {
    const AbelianInvariants a = Abelianization(SurgeredPresentation(p, q, Slope(s)));
    c.That(a.free_rank == 0 && a.torsion == std::vector<int64_t>{std::abs(s)},
           "H1 of (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(s) +
               ") is " + a.ToString());
  }
  const Presentation pres = CoxeterC5Precursor(5, 7);
  std::string detail = std::to_string(samples.size()) + " abelianizations";
  for (const char* text : {"C^5", "(ABC)^2"}) {
    const auto start = Clock::now();
    const SearchResult r = DerivationSearch(pres, ParseWord(text, pres.generators));
    const double secs = Since(start);
    c.That(r.found(), std::string(text) + " not derived");
    if (r.found()) c.That(ReplayCertificate(pres, *r.certificate), std::string(text) + " replay");
    c.That(secs < 10.0, std::string(text) + " took " + std::to_string(secs) + " s");
    std::ostringstream o;
    o.precision(3);
    o << "; " << text << " " << (r.found() ? r.certificate->steps.size() : 0) << " steps in "
      << secs << " s";
    detail += o.str();
  }
  return detail;
}

std::string EndToEnd(Check& c, Clock::time_point suite_start) {
  std::string detail;
  for (auto [p, q] : {std::pair{5, 5}, {5, 7}, {5, 9}, {5, 11}, {11, 13}}) {
    const Ledger l = Classify(p, q);
    c.That(l.conclusion == Conclusion::kNoNontrivialFinite, l.knot.ToString() + " inconclusive");
    c.That(l.CountStatus(VerdictStatus::kPaperAsserted) == 0,
           l.knot.ToString() + " has paper_asserted entries");
  }
  const Ledger l79 = Classify(7, 9);
  std::vector<Slope> got = l79.candidates.slopes();
  std::sort(got.begin(), got.end());
  c.That(got == std::vector<Slope>{31, 32, 33, 34}, "(7,9) candidates");
  auto status = [&](int s) {
    const LedgerEntry* e = l79.Find(Slope(s));
    return e ? e->status : VerdictStatus::kNotExcluded;
  };
  c.That(status(31) == VerdictStatus::kExcludedByGroupTheory, "(7,9) slope 31");
  c.That(status(32) == VerdictStatus::kBoundarySlope, "(7,9) slope 32");
  c.That(status(33) == VerdictStatus::kPaperAsserted, "(7,9) slope 33");
  c.That(status(34) == VerdictStatus::kBoundarySlope, "(7,9) slope 34");
  c.That(l79.CountStatus(VerdictStatus::kPaperAsserted) == 1, "(7,9) paper_asserted count");
  c.That(l79.conclusion == Conclusion::kInconclusive, "(7,9) conclusion");
  const double secs = Since(suite_start);
  c.That(secs < 120.0, "suite took " + std::to_string(secs) + " s");
  std::ostringstream o;
  o.precision(3);
  o << "acceptance run " << secs << " s";
  return o.str();
}

}  // namespace

int main() {
  const auto start = Clock::now();
  Report(1, "ideal points of the (-2,5,5) triangulation", IdealPointScan);
  Report(2, "candidate slope sets", CandidateSets);
  Report(3, "minimal norms, quick bounds and verdicts", NormNumbers);
  Report(4, "norm shift identities for 2q+11 and 2q+13", NormIdentities);
  Report(5, "short slopes on the cusp lattices", SlopeLengths);
  Report(6, "ideal point limits by continuation", Limits);
  Report(7, "Bloch-Wigner volumes", Volume);
  Report(8, "cross ratios from the degree-16 polynomial", Ohtsuki);
  Report(9, "abelianizations and derivation certificates", Groups);
  Report(10, "end-to-end classification",
         [&](Check& c) { return EndToEnd(c, start); });
  std::printf("%d of 10 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
