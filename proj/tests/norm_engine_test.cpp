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

#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "pretzel/error.hpp"
#include "pretzel/norm_engine.hpp"

using namespace pretzel;

namespace {

std::vector<Detection> Detections55() { return {{14, 1}, {15, 1}, {20, 2}, {22, 1}}; }
std::vector<Detection> Detections57() {
  return {{14, 1}, {15, 1}, {Slope(37, 2), 1}, {24, 8}};
}
std::vector<Detection> Detections59() { return {{14, 1}, {15, 1}, {Slope(67, 3), 1}}; }

NormModel Model(int q) {
  const KnotSpec knot(5, q);
  if (q == 5) return AssembleConstraints(knot, Detections55());
  if (q == 7) return AssembleConstraints(knot, Detections57());
  return AssembleConstraints(knot, Detections59());
}

// Independent enumeration: every vector with sum a_j w_j = total, a_j >=
// lower_j with the parity rule, visited in lexicographic order.
void Enumerate(const NormModel& m, const std::function<void(const std::vector<int64_t>&)>& f) {
  std::vector<int64_t> a(m.size());
  std::function<void(size_t, int64_t)> rec = [&](size_t j, int64_t left) {
    if (j == m.size()) {
      if (left == 0) f(a);
      return;
    }
    for (int64_t v = m.lower[j]; v * m.weight[j] <= left; ++v) {
      if (m.parity_even[j] && v % 2 != 0) continue;
      a[j] = v;
      rec(j + 1, left - v * m.weight[j]);
    }
  };
  rec(0, m.total);
}

// ||s|| evaluated straight from the definition.
int64_t DirectNorm(const NormModel& m, const std::vector<int64_t>& a, const Slope& s) {
  int64_t sum = 0;
  for (size_t j = 0; j < m.size(); ++j) {
    const Slope& b = m.boundary[j];
    sum += a[j] * std::abs(s.numerator() * b.denominator() - s.denominator() * b.numerator());
  }
  return 2 * sum;
}

}  // namespace

TEST_CASE("minimal norm") {
  CHECK(MinimalNorm(KnotSpec(5, 5)) == 20);
  CHECK(MinimalNorm(KnotSpec(5, 7)) == 34);
  CHECK(MinimalNorm(KnotSpec(5, 9)) == 48);
  for (int p = 5; p <= 21; p += 2) {
    for (int q = p; q <= 31; q += 2) {
      const int64_t S = MinimalNorm(KnotSpec(p, q));
      CHECK(S == 2 * p * q - 3 * (p + q));
      CHECK(S % 2 == 0);
      CHECK(S > 0);
    }
  }
}

TEST_CASE("constraint assembly") {
  const NormModel m55 = Model(5);
  CHECK(m55.lower == std::vector<int64_t>{0, 1, 2, 2, 1});
  CHECK(m55.total == 10);
  CHECK(m55.weight == std::vector<int64_t>{1, 1, 1, 1, 1});
  const NormModel m57 = Model(7);
  CHECK(m57.lower == std::vector<int64_t>{0, 1, 2, 2, 8, 0});
  CHECK(m57.total == 17);
  CHECK(m57.weight == std::vector<int64_t>{1, 1, 1, 2, 1, 1});
  const NormModel m59 = Model(9);
  CHECK(m59.lower == std::vector<int64_t>{0, 1, 2, 2, 0, 0});
  CHECK(m59.total == 24);
  CHECK(m59.weight == std::vector<int64_t>{1, 1, 1, 3, 1, 1});
  // Parity: odd numerators force even coefficients.
  CHECK(m59.parity_even == std::vector<bool>{false, false, true, true, false, false});
  CHECK_THROWS_AS(AssembleConstraints(KnotSpec(5, 5), {{16, 1}}), Error);
  try {
    AssembleConstraints(KnotSpec(7, 9), {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPartialData);
  }
}

TEST_CASE("norm values") {
  const NormModel m55 = Model(5);
  CHECK(NormValue(m55, {0, 1, 6, 2, 1}, Slope(16)) == 44);
  CHECK(NormValue(m55, {0, 0, 0, 0, 0}, Slope(16)) == 0);
  CHECK(NormValue(Model(9), {0, 2, 4, 6, 0, 0}, Slope(21)) == 124);
  CHECK_THROWS_AS(NormValue(m55, {1, 2}, Slope(16)), Error);
}

TEST_CASE("the meridian has norm S on every feasible vector") {
  for (int q : {5, 7, 9}) {
    const NormModel m = Model(q);
    const int64_t S = MinimalNorm(m.knot);
    uint64_t count = 0;
    Enumerate(m, [&](const std::vector<int64_t>& a) {
      ++count;
      CHECK(m.IsFeasible(a));
      CHECK(NormValue(m, a, Slope::Meridian()) == S);
      for (size_t j = 0; j < m.size(); ++j) {
        if (m.parity_even[j]) CHECK(a[j] % 2 == 0);
      }
    });
    CHECK(CountFeasible(m) == count);
  }
}

TEST_CASE("known minimizers") {
  const auto r16 = MinNormOverFeasible(Model(5), Slope(16));
  CHECK(r16.value == 44);
  CHECK(r16.witness == std::vector<int64_t>{0, 1, 6, 2, 1});
  const auto r24 = MinNormOverFeasible(Model(9), Slope(24));
  CHECK(r24.value == 140);
  CHECK(r24.witness == std::vector<int64_t>{0, 1, 2, 6, 3, 0});
  // 124 is attained by several vectors; the lexicographic one is reported.
  const auto r21 = MinNormOverFeasible(Model(9), Slope(21));
  CHECK(r21.value == 124);
  CHECK(r21.witness == std::vector<int64_t>{0, 1, 4, 6, 1, 0});
  CHECK(Model(9).IsFeasible({0, 2, 4, 6, 0, 0}));
}

TEST_CASE("pruned search agrees with brute force and a direct oracle") {
  for (int q : {5, 7, 9}) {
    const NormModel m = Model(q);
    for (int64_t num = 2 * m.knot.toroidal_slope() - 24; num <= 2 * m.knot.toroidal_slope() + 24;
         ++num) {
      const Slope s(num, 2);
      const auto fast = MinNormOverFeasible(m, s);
      const auto slow = MinNormBruteForce(m, s);
      CHECK(fast.value == slow.value);
      CHECK(fast.witness == slow.witness);
      int64_t best = INT64_MAX;
      std::vector<int64_t> arg;
      Enumerate(m, [&](const std::vector<int64_t>& a) {
        const int64_t v = DirectNorm(m, a, s);
        if (v < best) {
          best = v;
          arg = a;
        }
      });
      CHECK(fast.value == best);
      CHECK(fast.witness == arg);
    }
  }
}

TEST_CASE("infeasible models are reported") {
  NormModel m = Model(5);
  m.lower = {0, 1, 2, 2, 7};
  try {
    MinNormOverFeasible(m, Slope(16));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
  CHECK(CountFeasible(m) == 0);
}

TEST_CASE("scaling bounds and total by two") {
  // 2a is feasible for the doubled model, so its minimum is at most twice
  // the original; the (5,5) model attains equality with a doubled witness.
  // On (5,9) the doubled model admits strictly cheaper vectors.
  for (int q : {5, 9}) {
    NormModel m = Model(q);
    NormModel doubled = m;
    for (auto& l : doubled.lower) l *= 2;
    doubled.total *= 2;
    for (const Slope s : {Slope(16), Slope(21), Slope(45, 2), Slope(31)}) {
      const auto a = MinNormOverFeasible(m, s);
      const auto b = MinNormOverFeasible(doubled, s);
      std::vector<int64_t> twice = a.witness;
      for (auto& x : twice) x *= 2;
      CHECK(doubled.IsFeasible(twice));
      CHECK(b.value <= 2 * a.value);
      if (q == 5) {
        CHECK(b.value == 2 * a.value);
      }
    }
  }
  NormModel m = Model(9);
  for (auto& l : m.lower) l *= 2;
  m.total *= 2;
  CHECK(MinNormOverFeasible(m, Slope(21)).value < 2 * MinNormOverFeasible(Model(9), Slope(21)).value);
}

TEST_CASE("quick lower bounds") {
  const NormModel m55 = Model(5), m57 = Model(7), m59 = Model(9);
  CHECK(NormLowerBound(m55, Slope(39, 2), {14, 15}) == 58);
  CHECK(NormLowerBound(m55, Slope(31, 2), {14, 15, 20, 22}) == 72);
  CHECK(NormLowerBound(m55, Slope(21), {14, 15}) == 38);
  CHECK(NormLowerBound(m55, Slope(13), {14, 15, 20, 22}) == 56);
  CHECK(NormLowerBound(m55, Slope(19), {14, 15, 20, 22}) == 36);
  CHECK(NormLowerBound(m57, Slope(47, 2), {14, 15, Slope(37, 2)}) == 186);
  CHECK(NormLowerBound(m57, Slope(23), {14, 15, Slope(37, 2)}) == 86);
  CHECK(NormLowerBound(m57, Slope(19), {24}) == 80);
  CHECK(NormLowerBound(m57, Slope(17), {24}) == 112);
  CHECK(NormLowerBound(m57, Slope(18), {24}) == 96);
  CHECK(NormLowerBound(m57, Slope(20), {14, 15, Slope(37, 2), 24}) == 108);
  CHECK(NormLowerBound(m59, Slope(55, 2), {14, 15, Slope(67, 3)}) == 278);
  CHECK(NormLowerBound(m59, Slope(27), {14, 15, Slope(67, 3)}) == 130);
  CHECK(NormLowerBound(m59, Slope(23), {14, 15, Slope(67, 3)}) == 58);
  CHECK_THROWS_AS(NormLowerBound(m55, Slope(16), {17}), Error);
}

TEST_CASE("lower bounds never exceed the exact minimum") {
  for (int q : {5, 7, 9}) {
    const NormModel m = Model(q);
    for (int64_t num = 20; num <= 70; ++num) {
      const Slope s(num, 2);
      const int64_t exact = MinNormOverFeasible(m, s).value;
      CHECK(NormLowerBound(m, s, m.boundary) <= exact);
      for (const Slope& b : m.boundary) CHECK(NormLowerBound(m, s, {b}) <= exact);
    }
  }
}

TEST_CASE("finite-slope verdicts") {
  const NormModel m55 = Model(5), m57 = Model(7);
  const Verdict v16 = FiniteSlopeVerdict(m55, Slope(16), 44);
  CHECK(v16.bound_kind == BoundKind::kTwoS);
  CHECK(v16.bound_used == 40);
  CHECK(v16.status == VerdictStatus::kExcluded);
  const Verdict v20 = FiniteSlopeVerdict(m57, Slope(20), 108);
  CHECK(v20.bound_used == 68);
  CHECK(v20.status == VerdictStatus::kExcluded);
  const Verdict v19 = FiniteSlopeVerdict(m55, Slope(19), 36);
  CHECK(v19.bound_kind == BoundKind::kSPlus8);
  CHECK(v19.bound_used == 28);
  CHECK(v19.status == VerdictStatus::kExcluded);
  CHECK(FiniteSlopeVerdict(m55, Slope(19), 28).status == VerdictStatus::kNotExcluded);
  CHECK(FiniteSlopeVerdict(m55, Slope(33, 2), 30).bound_kind == BoundKind::kSPlus8);
  CHECK(std::string(VerdictStatusName(VerdictStatus::kExcludedByGroupTheory)) ==
        "excluded_by_group_theory");
}

TEST_CASE("shift identities") {
  // (0,0,0,0,12,12) does not satisfy the weight equation for q = 11.
  CHECK_THROWS_AS(NormShiftIdentity(11, {0, 0, 0, 0, 12, 12}), Error);
  const NormShiftReport r = NormShiftIdentity(11, {0, 0, 0, 0, 19, 12});
  CHECK(r.s_norm == 62);
  CHECK(r.first.holds());
  CHECK(r.first.rhs == 62 - 48);
  CHECK(r.second.holds());
  CHECK_FALSE(r.second_quoted.holds());
  const NormShiftReport zero = NormShiftIdentity(11, {0, 0, 0, 0, 31, 0});
  CHECK(zero.first.lhs == 62);
  std::mt19937_64 rng(13);
  for (int q = 11; q <= 31; q += 2) {
    const NormModel m = FivePretzelModel(q);
    for (int i = 0; i < 100; ++i) {
      const auto a = SampleFeasible(m, rng);
      CHECK(m.IsFeasible(a));
      const NormShiftReport s = NormShiftIdentity(q, a);
      CHECK(s.first.holds());
      CHECK(s.second.holds());
      // The quoted form differs by exactly 4 a6.
      CHECK(s.second_quoted.rhs - s.second_quoted.lhs == 4 * a[5]);
    }
  }
}

TEST_CASE("exclusion of 2q+11 and 2q+13") {
  const ShiftExclusionReport r = ShiftExclusion(11);
  CHECK(r.s_norm == 62);
  CHECK(r.slope_2q11.slope == Slope(33));
  CHECK(r.slope_2q11.zero_case_norm == 62);
  CHECK(r.slope_2q11.quoted_bound == 96);
  CHECK(r.slope_2q11.quoted_bound_valid);
  CHECK(r.slope_2q11.verdict.status == VerdictStatus::kExcluded);
  CHECK(r.slope_2q13.quoted_bound == 220);
  // The quoted 3S + 2(2q-5) overshoots: the exact minimum is S + 4q - 4.
  CHECK_FALSE(r.slope_2q13.quoted_bound_valid);
  CHECK(r.slope_2q13.exact_min == 62 + 44 - 4);
  CHECK(r.slope_2q13.verdict.status == VerdictStatus::kExcluded);
  for (int q = 11; q <= 31; q += 2) {
    const ShiftExclusionReport t = ShiftExclusion(q);
    const int64_t S = t.s_norm;
    CHECK(t.slope_2q11.zero_case_norm == S);
    CHECK(t.slope_2q11.exact_min == S + 4 * q - 8);
    CHECK(t.slope_2q13.exact_min == S + 4 * q - 4);
    CHECK(t.slope_2q11.valid_bound <= t.slope_2q11.exact_min);
    CHECK(t.slope_2q13.valid_bound <= t.slope_2q13.exact_min);
    CHECK(t.slope_2q11.valid_bound > S + 8);
    CHECK(t.slope_2q13.valid_bound > S + 8);
  }
  CHECK_THROWS_AS(ShiftExclusion(9), Error);
}
