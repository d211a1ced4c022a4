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

#include "pretzel/norm_engine.hpp"

#include <algorithm>
#include <limits>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

constexpr int64_t kUnset = std::numeric_limits<int64_t>::max();

int64_t RoundUpEven(int64_t v) { return v % 2 == 0 ? v : v + 1; }

struct Enumerator {
  const NormModel& model;
  std::vector<int64_t> dist;   // Distance(s, boundary[j]).
  std::vector<int64_t> min_weight_suffix;  // sum_{i>=j} lower[i]*weight[i].
  std::vector<int64_t> lb_suffix;          // sum_{i>=j} 2*lower[i]*dist[i].
  std::vector<int64_t> cost_num;  // Cheapest 2*dist/weight over i >= j, as
  std::vector<int64_t> cost_den;  // a fraction num/den.
  bool prune;
  std::vector<int64_t> current;
  MinNormResult best{kUnset, {}, 0};

  Enumerator(const NormModel& m, const Slope& s, bool use_pruning)
      : model(m), prune(use_pruning) {
    const size_t n = m.size();
    dist.resize(n);
    for (size_t j = 0; j < n; ++j) dist[j] = Distance(s, m.boundary[j]);
    min_weight_suffix.assign(n + 1, 0);
    lb_suffix.assign(n + 1, 0);
    cost_num.assign(n + 1, kUnset);
    cost_den.assign(n + 1, 1);
    for (size_t j = n; j-- > 0;) {
      min_weight_suffix[j] = min_weight_suffix[j + 1] + m.lower[j] * m.weight[j];
      lb_suffix[j] = lb_suffix[j + 1] + 2 * m.lower[j] * dist[j];
      const int64_t num = 2 * dist[j];
      const int64_t den = m.weight[j];
      if (cost_num[j + 1] == kUnset ||
          static_cast<__int128>(num) * cost_den[j + 1] <
              static_cast<__int128>(cost_num[j + 1]) * den) {
        cost_num[j] = num;
        cost_den[j] = den;
      } else {
        cost_num[j] = cost_num[j + 1];
        cost_den[j] = cost_den[j + 1];
      }
    }
    current.assign(n, 0);
  }

  // Lower bound on the cost of coordinates >= j given `remaining` weight.
  int64_t SuffixBound(size_t j, int64_t remaining) const {
    const int64_t extra = remaining - min_weight_suffix[j];
    if (extra <= 0 || cost_num[j] == kUnset) return lb_suffix[j];
    return lb_suffix[j] + extra * cost_num[j] / cost_den[j];
  }

  void Visit(size_t j, int64_t remaining, int64_t partial) {
    const size_t n = model.size();
    const int64_t w = model.weight[j];
    const int64_t step = model.parity_even[j] ? 2 : 1;
    if (j + 1 == n) {
      if (remaining % w != 0) return;
      const int64_t a = remaining / w;
      if (a < model.lower[j]) return;
      if (model.parity_even[j] && a % 2 != 0) return;
      current[j] = a;
      ++best.nodes;
      const int64_t value = partial + 2 * a * dist[j];
      if (value < best.value) {
        best.value = value;
        best.witness = current;
      }
      return;
    }
    for (int64_t a = model.lower[j];
         a * w + min_weight_suffix[j + 1] <= remaining; a += step) {
      const int64_t next_partial = partial + 2 * a * dist[j];
      const int64_t next_remaining = remaining - a * w;
      if (prune && best.value != kUnset &&
          next_partial + SuffixBound(j + 1, next_remaining) >= best.value) {
        continue;
      }
      current[j] = a;
      Visit(j + 1, next_remaining, next_partial);
    }
  }

  MinNormResult Run() {
    model.Validate();
    Visit(0, model.total, 0);
    if (best.value == kUnset) {
      Fail(ErrorCode::kInfeasible,
           "norm model for " + model.knot.ToString() + " has no feasible vector");
    }
    return best;
  }
};

uint64_t CountFrom(const NormModel& m, size_t j, int64_t remaining) {
  const int64_t w = m.weight[j];
  if (j + 1 == m.size()) {
    if (remaining % w != 0) return 0;
    const int64_t a = remaining / w;
    if (a < m.lower[j] || (m.parity_even[j] && a % 2 != 0)) return 0;
    return 1;
  }
  uint64_t count = 0;
  const int64_t step = m.parity_even[j] ? 2 : 1;
  for (int64_t a = m.lower[j]; a * w <= remaining; a += step) {
    count += CountFrom(m, j + 1, remaining - a * w);
  }
  return count;
}

}  // namespace

void NormModel::Validate() const {
  const size_t n = boundary.size();
  Require(n > 0, "norm model has no boundary slopes");
  Require(lower.size() == n && parity_even.size() == n && weight.size() == n,
          "norm model dimension mismatch");
  Require(total > 0, "norm model total must be positive");
  for (size_t j = 0; j < n; ++j) {
    Require(lower[j] >= 0, "negative lower bound");
    Require(weight[j] > 0, "boundary slope weight must be positive");
    Require(!parity_even[j] || lower[j] % 2 == 0,
            "lower bound violates parity at " + boundary[j].ToString());
  }
}

bool NormModel::IsFeasible(const std::vector<int64_t>& a) const {
  if (a.size() != size()) return false;
  int64_t sum = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] < lower[j]) return false;
    if (parity_even[j] && a[j] % 2 != 0) return false;
    sum += a[j] * weight[j];
  }
  return sum == total;
}

int64_t MinimalNorm(const KnotSpec& knot) {
  const int64_t p = knot.p();
  const int64_t q = knot.q();
  return 2 * p * q - 3 * (p + q);
}

int64_t NormValue(const NormModel& model, const std::vector<int64_t>& a,
                  const Slope& s) {
  Require(a.size() == model.size(),
          "coefficient vector has " + std::to_string(a.size()) +
              " entries, model has " + std::to_string(model.size()));
  int64_t sum = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    Require(a[j] >= 0, "coefficients must be non-negative");
    sum += a[j] * Distance(s, model.boundary[j]);
  }
  return 2 * sum;
}

NormModel AssembleConstraints(const BoundarySlopeTable& table,
                              const std::vector<Detection>& detections) {
  if (!table.complete) {
    Fail(ErrorCode::kPartialData, "norm model needs a complete boundary table for " +
                                      table.knot.ToString());
  }
  NormModel model{table.knot, table.slopes, {}, {}, {}, 0};
  const size_t n = table.slopes.size();
  model.lower.assign(n, 0);
  model.parity_even.assign(n, false);
  model.weight.assign(n, 0);
  for (size_t j = 0; j < n; ++j) {
    const Slope& b = table.slopes[j];
    model.parity_even[j] = b.numerator() % 2 != 0;
    model.weight[j] = Distance(Slope::Meridian(), b);
  }
  for (const Detection& d : detections) {
    Require(d.ideal_points >= 0, "ideal point count must be non-negative");
    auto it = std::find(table.slopes.begin(), table.slopes.end(), d.slope);
    Require(it != table.slopes.end(),
            "detected slope " + d.slope.ToString() +
                " is not a boundary slope of " + table.knot.ToString());
    const size_t j = static_cast<size_t>(it - table.slopes.begin());
    model.lower[j] = std::max(model.lower[j], d.ideal_points);
  }
  for (size_t j = 0; j < n; ++j) {
    if (model.parity_even[j]) model.lower[j] = RoundUpEven(model.lower[j]);
  }
  model.total = MinimalNorm(table.knot) / 2;
  return model;
}

NormModel AssembleConstraints(const KnotSpec& knot,
                              const std::vector<Detection>& detections) {
  return AssembleConstraints(BoundarySlopes(knot), detections);
}

MinNormResult MinNormOverFeasible(const NormModel& model, const Slope& s) {
  return Enumerator(model, s, true).Run();
}

MinNormResult MinNormBruteForce(const NormModel& model, const Slope& s) {
  return Enumerator(model, s, false).Run();
}

uint64_t CountFeasible(const NormModel& model) {
  model.Validate();
  return CountFrom(model, 0, model.total);
}

int64_t NormLowerBound(const NormModel& model, const Slope& s,
                       const std::vector<Slope>& subset) {
  int64_t sum = 0;
  for (const Slope& b : subset) {
    auto it = std::find(model.boundary.begin(), model.boundary.end(), b);
    Require(it != model.boundary.end(),
            "slope " + b.ToString() + " is not in the norm model");
    const size_t j = static_cast<size_t>(it - model.boundary.begin());
    sum += model.lower[j] * Distance(s, b);
  }
  return 2 * sum;
}

const char* VerdictStatusName(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kExcluded:
      return "excluded";
    case VerdictStatus::kNotExcluded:
      return "not_excluded";
    case VerdictStatus::kExcludedByGroupTheory:
      return "excluded_by_group_theory";
    case VerdictStatus::kBoundarySlope:
      return "boundary_slope";
    case VerdictStatus::kPaperAsserted:
      return "paper_asserted";
  }
  return "unknown";
}

Verdict FiniteSlopeVerdict(const NormModel& model, const Slope& s,
                           int64_t min_norm) {
  const int64_t S = MinimalNorm(model.knot);
  Verdict v{s, min_norm, BoundKind::kSPlus8, S + 8, VerdictStatus::kNotExcluded};
  if (s.is_even_integer()) {
    v.bound_kind = BoundKind::kTwoS;
    v.bound_used = 2 * S;
  }
  if (min_norm > v.bound_used) v.status = VerdictStatus::kExcluded;
  return v;
}

std::vector<int64_t> SampleFeasible(const NormModel& model, std::mt19937_64& rng,
                                    int max_attempts) {
  model.Validate();
  const size_t n = model.size();
  std::vector<int64_t> a(n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    int64_t remaining = model.total;
    for (size_t j = 0; j < n; ++j) remaining -= model.lower[j] * model.weight[j];
    if (remaining < 0) break;
    std::vector<size_t> order(n);
    for (size_t j = 0; j < n; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t i = 0; i + 1 < n; ++i) {
      const size_t j = order[i];
      const int64_t step = model.parity_even[j] ? 2 : 1;
      const int64_t extra_max = remaining / model.weight[j] / step;
      std::uniform_int_distribution<int64_t> pick(0, extra_max);
      const int64_t extra = pick(rng) * step;
      a[j] = model.lower[j] + extra;
      remaining -= extra * model.weight[j];
    }
    const size_t last = order.back();
    if (remaining % model.weight[last] != 0) continue;
    a[last] = model.lower[last] + remaining / model.weight[last];
    if (model.IsFeasible(a)) return a;
  }
  Fail(ErrorCode::kInfeasible, "no feasible coefficient vector sampled");
}

NormModel FivePretzelModel(int q) {
  return AssembleConstraints(KnotSpec(5, q), {});
}

NormShiftReport NormShiftIdentity(int q, const std::vector<int64_t>& a) {
  Require(q >= 11 && q % 2 != 0, "shift identities need odd q >= 11");
  const NormModel model = FivePretzelModel(q);
  Require(a.size() == 6, "coefficient vector must have 6 entries");
  int64_t weighted = 0;
  for (size_t j = 0; j < 6; ++j) {
    Require(a[j] >= 0, "coefficients must be non-negative");
    weighted += a[j] * model.weight[j];
  }
  if (weighted != model.total) {
    Fail(ErrorCode::kInvalidArgument,
         "weight equation violated: sum a_j w_j = " + std::to_string(weighted) +
             ", expected S/2 = " + std::to_string(model.total));
  }
  const int64_t S = MinimalNorm(model.knot);
  const int64_t n10 = NormValue(model, a, Slope(2 * q + 10));
  const int64_t n11 = NormValue(model, a, Slope(2 * q + 11));
  const int64_t n13 = NormValue(model, a, Slope(2 * q + 13));
  NormShiftReport r;
  r.q = q;
  r.s_norm = S;
  r.first = {"||2q+11|| - ||2q+10|| = S - 4a6", n11 - n10, S - 4 * a[5]};
  r.second_quoted = {"||2q+13|| - ||2q+10|| = 3S - 4a6", n13 - n10,
                     3 * S - 4 * a[5]};
  r.second = {"||2q+13|| - ||2q+10|| = 3S - 8a6", n13 - n10, 3 * S - 8 * a[5]};
  return r;
}

namespace {

ShiftExclusionBranch ExcludeNear(const NormModel& model, const Slope& s,
                        int64_t quoted_bound) {
  const int64_t S = MinimalNorm(model.knot);
  ShiftExclusionBranch b;
  b.slope = s;
  b.quoted_bound = quoted_bound;
  std::vector<int64_t> zero(model.size(), 0);
  zero[5] = model.total;
  b.zero_case_norm = NormValue(model, zero, s);

  // Some a_i with i <= 4 is positive: minimize over each choice.
  b.exact_min = kUnset;
  b.valid_bound = kUnset;
  for (size_t i = 0; i < 4; ++i) {
    NormModel forced = model;
    forced.lower[i] = std::max<int64_t>(forced.lower[i], forced.parity_even[i] ? 2 : 1);
    const MinNormResult r = MinNormOverFeasible(forced, s);
    if (r.value < b.exact_min ||
        (r.value == b.exact_min && r.witness < b.witness)) {
      b.exact_min = r.value;
      b.witness = r.witness;
    }
    // ||s|| - S = 2 sum_j a_j (Distance(s, b_j) - w_j) with every term >= 0.
    const int64_t excess = Distance(s, model.boundary[i]) - model.weight[i];
    b.valid_bound = std::min(b.valid_bound, S + 2 * forced.lower[i] * excess);
  }
  for (size_t j = 0; j < model.size(); ++j) {
    if (Distance(s, model.boundary[j]) < model.weight[j]) {
      Fail(ErrorCode::kInternal, "excess term negative at " +
                                     model.boundary[j].ToString());
    }
  }
  b.quoted_bound_valid = b.quoted_bound <= b.exact_min;
  b.verdict = FiniteSlopeVerdict(model, s, b.exact_min);
  return b;
}

}  // namespace

ShiftExclusionReport ShiftExclusion(int q) {
  Require(q >= 11 && q % 2 != 0, "needs odd q >= 11");
  const NormModel model = FivePretzelModel(q);
  const int64_t S = MinimalNorm(model.knot);
  ShiftExclusionReport r;
  r.q = q;
  r.s_norm = S;
  r.slope_2q11 = ExcludeNear(model, Slope(2 * q + 11), S + 2 * (2 * q - 5));
  r.slope_2q13 = ExcludeNear(model, Slope(2 * q + 13), 3 * S + 2 * (2 * q - 5));
  return r;
}

}  // namespace pretzel
