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

#ifndef PRETZEL_NORM_ENGINE_HPP_
#define PRETZEL_NORM_ENGINE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <random>
#include <vector>

#include "pretzel/slope.hpp"

namespace pretzel {

// Linear model of the total Culler-Shalen norm
//   ||g|| = 2 * sum_j a_j * Distance(g, boundary[j])
// with a_j >= lower[j], a_j even where parity_even[j], and
//   sum_j a_j * weight[j] = total,  weight[j] = Distance(1/0, boundary[j]).
struct NormModel {
  KnotSpec knot;
  std::vector<Slope> boundary;
  std::vector<int64_t> lower;
  std::vector<bool> parity_even;
  std::vector<int64_t> weight;
  int64_t total = 0;

  size_t size() const { return boundary.size(); }
  // Throws on inconsistent dimensions or bounds.
  void Validate() const;
  bool IsFeasible(const std::vector<int64_t>& a) const;
};

struct Detection {
  Slope slope;
  int64_t ideal_points;
};

// S = 2pq - 3(p+q).
int64_t MinimalNorm(const KnotSpec& knot);

int64_t NormValue(const NormModel& model, const std::vector<int64_t>& a,
                  const Slope& s);

// Builds the model from the complete boundary table: lower bounds from the
// detections, rounded up to even where the slope's numerator is odd.
NormModel AssembleConstraints(const KnotSpec& knot,
                              const std::vector<Detection>& detections);
// Same, over an explicit table (used by tests with modified data).
NormModel AssembleConstraints(const BoundarySlopeTable& table,
                              const std::vector<Detection>& detections);

struct MinNormResult {
  int64_t value = 0;
  // Lexicographically smallest minimizer.
  std::vector<int64_t> witness;
  // Feasible vectors visited before pruning removed the rest.
  uint64_t nodes = 0;
};

// Exact minimum of NormValue over all feasible vectors, by depth-first
// enumeration with a partial lower-bound cut. Throws kInfeasible when the
// feasible set is empty.
MinNormResult MinNormOverFeasible(const NormModel& model, const Slope& s);

// Reference minimizer: plain enumeration without pruning.
MinNormResult MinNormBruteForce(const NormModel& model, const Slope& s);

// Number of feasible coefficient vectors.
uint64_t CountFeasible(const NormModel& model);

// A random feasible vector: coordinates drawn in a random order from their
// admissible ranges, the last one solved from the weight equation, retrying on
// failure. Throws kInfeasible after `max_attempts` misses.
std::vector<int64_t> SampleFeasible(const NormModel& model, std::mt19937_64& rng,
                                    int max_attempts = 100000);

// 2 * sum over `subset` of lower[j] * Distance(s, boundary[j]).
int64_t NormLowerBound(const NormModel& model, const Slope& s,
                       const std::vector<Slope>& subset);

enum class VerdictStatus {
  kExcluded,
  kNotExcluded,
  kExcludedByGroupTheory,
  kBoundarySlope,
  kPaperAsserted,
};

const char* VerdictStatusName(VerdictStatus status);

enum class BoundKind { kSPlus8, kTwoS };

struct Verdict {
  Slope slope{0};
  int64_t min_norm = 0;
  BoundKind bound_kind = BoundKind::kSPlus8;
  int64_t bound_used = 0;
  VerdictStatus status = VerdictStatus::kNotExcluded;
};

// Compares against 2S for even integers and S+8 otherwise.
Verdict FiniteSlopeVerdict(const NormModel& model, const Slope& s,
                           int64_t min_norm);

// The (5, q) model with no detection lower bounds, q >= 11 odd.
NormModel FivePretzelModel(int q);

struct ShiftIdentity {
  std::string label;
  int64_t lhs = 0;
  int64_t rhs = 0;
  bool holds() const { return lhs == rhs; }
};

struct NormShiftReport {
  int q = 0;
  int64_t s_norm = 0;
  // ||2q+11|| - ||2q+10|| = S - 4 a6.
  ShiftIdentity first;
  // ||2q+13|| - ||2q+10|| = 3S - 4 a6, in the form it is usually quoted.
  ShiftIdentity second_quoted;
  // ||2q+13|| - ||2q+10|| = 3S - 8 a6, which follows term by term.
  ShiftIdentity second;
};

// Evaluates both shift identities on `a`, which must satisfy the (5, q)
// weight equation.
NormShiftReport NormShiftIdentity(int q, const std::vector<int64_t>& a);

struct ShiftExclusionBranch {
  Slope slope{0};
  // Value of ||slope|| when a1 = ... = a4 = 0: always S for 2q+11.
  int64_t zero_case_norm = 0;
  // The inequality as usually quoted: S + 2(2q-5) for 2q+11 and
  // 3S + 2(2q-5) for 2q+13.
  int64_t quoted_bound = 0;
  // Whether quoted_bound <= exact_min.
  bool quoted_bound_valid = false;
  // A bound valid whenever some a_i, i <= 4, is positive.
  int64_t valid_bound = 0;
  // Exact minimum under the same condition, with its witness.
  int64_t exact_min = 0;
  std::vector<int64_t> witness;
  Verdict verdict;
};

struct ShiftExclusionReport {
  int q = 0;
  int64_t s_norm = 0;
  ShiftExclusionBranch slope_2q11;
  ShiftExclusionBranch slope_2q13;
};

// Excludes 2q+11 and 2q+13 on (-2,5,q), q >= 11: the all-zero branch forces
// ||2q+11|| = S, which is ruled out by a non-integral boundary slope near
// 2q+11; otherwise the exact minimum exceeds S+8.
ShiftExclusionReport ShiftExclusion(int q);

}  // namespace pretzel

#endif  // PRETZEL_NORM_ENGINE_HPP_
