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

#ifndef PRETZEL_IDEAL_POINTS_HPP_
#define PRETZEL_IDEAL_POINTS_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pretzel/slope.hpp"

namespace pretzel {

using Complex = std::complex<double>;

// Exponents (e, e', e'') of z_k, z'_k, z''_k for every tetrahedron k, where
// z' = 1/(1-z) and z'' = 1 - 1/z.
using ExponentRow = std::vector<std::array<int64_t, 3>>;

struct GluingSystem {
  int n = 0;
  // One row per edge; all n are kept, and one is dropped when solving.
  std::vector<ExponentRow> equations;
  ExponentRow meridian;
  ExponentRow longitude;

  void Validate() const;
  // Componentwise sum of all edge rows, as (e, e', e'') per tetrahedron.
  ExponentRow EdgeSum() const;
};

// The same monomial in (z, 1-z) form: sign * prod z^r1 (1-z)^r2.
struct ConvertedRow {
  std::vector<int64_t> r1;
  std::vector<int64_t> r2;
  int sign = 1;
};

ConvertedRow Convert(const ExponentRow& row);

enum class Degeneration { kZero = 0, kOne = 1, kInfinity = 2 };

using DegenerationType = std::vector<Degeneration>;

std::string DegenerationString(const DegenerationType& type);
DegenerationType ParseDegeneration(const std::string& text);

using IntMatrix = std::vector<std::vector<int64_t>>;

// Rows r(I)_j over the retained equations: r2 where I_k is one, r1 where it
// is zero, and -r1-r2 at infinity. `dropped` selects the omitted equation.
IntMatrix DegenerationMatrix(const GluingSystem& sys,
                             const DegenerationType& type, int dropped = -1);

// Exact determinant by fraction-free elimination.
int64_t Determinant(IntMatrix m);

// d_k = (-1)^k * (minor omitting column k) of an (n-1) x n matrix, with
// columns numbered from 1.
std::vector<int64_t> DVector(const IntMatrix& matrix);

// v(word) for the valuation v(z_k) = d_k; rejects d of mixed sign.
int64_t PeripheralValuation(const GluingSystem& sys,
                            const DegenerationType& type,
                            const std::vector<int64_t>& d,
                            const ExponentRow& word);

struct IdealPointRecord {
  DegenerationType type;
  // Normalized so every entry is positive.
  std::vector<int64_t> d;
  // Sign of the minors before normalization.
  int raw_sign = 1;
  int64_t v_meridian = 0;
  int64_t v_longitude = 0;
  Slope slope{0};
};

// All 3^n degeneration types whose d-vector is strictly one-signed and whose
// meridian valuation is nonzero, in lexicographic order of the type
// (zero < one < infinity).
std::vector<IdealPointRecord> ScanDegenerations(const GluingSystem& sys,
                                                int dropped = -1);

// The bundled 7-tetrahedron triangulation of the (-2,5,5) complement.
GluingSystem Pretzel255System();

struct SolveOptions {
  double tolerance = 1e-12;
  int max_iterations = 100;
};

struct CompleteSolution {
  std::vector<Complex> shapes;
  double residual = 0.0;
  int iterations = 0;
  // Log holonomies of the peripheral words at the solution.
  Complex log_meridian;
  Complex log_longitude;
};

// Damped Newton on the log-form system: every retained edge sums to 2*pi*i
// and the meridian log-holonomy vanishes. Shapes stay in the upper
// half-plane.
CompleteSolution SolveComplete(const GluingSystem& sys,
                               const std::vector<Complex>& initial,
                               const SolveOptions& options = {});

enum class DegenerateKind { kZero, kOne };

struct PlanEntry {
  int tetrahedron = 0;  // 0-based.
  DegenerateKind kind = DegenerateKind::kZero;
  int order = 1;
  std::string coefficient;
};

// z_k = c * t^order (zero) or 1 - c * t^order (one) for each entry; the
// first entry's coefficient is fixed to 1.
struct SubstitutionPlan {
  std::string name;
  std::vector<PlanEntry> entries;
  // Starting values for the unknowns (non-degenerate shapes in index order,
  // then the free coefficients) at the first t, per branch.
  std::vector<std::vector<Complex>> branch_guesses;
};

SubstitutionPlan Slope20Plan();
SubstitutionPlan Slope22Plan();
SubstitutionPlan PlanByName(const std::string& name);

struct ContinuationResult {
  std::string plan;
  int branch = 0;
  std::vector<std::string> unknowns;
  std::vector<double> t_schedule;
  std::vector<std::vector<Complex>> path;
  std::vector<Complex> limit;
  // max |limit - value at the smallest t|.
  double drift = 0.0;
  double final_residual = 0.0;
  // Full shape vector at the limit, degenerate shapes set to 0 or 1.
  std::vector<Complex> limit_shapes;
  std::vector<bool> degenerate;
  int64_t v_meridian = 0;
  int64_t v_longitude = 0;
  Slope slope{0};
};

std::vector<double> DefaultSchedule();

// Follows one branch of `plan` along the decreasing schedule and
// extrapolates the non-degenerate values to t = 0.
ContinuationResult ContinueToIdealPoint(
    const GluingSystem& sys, const SubstitutionPlan& plan, int branch = 0,
    const std::vector<double>& schedule = DefaultSchedule(),
    const SolveOptions& options = {});

// Valuations (v(M), v(L)) for the plan's degeneration orders.
std::array<int64_t, 2> PlanValuations(const GluingSystem& sys,
                                      const SubstitutionPlan& plan);

// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1-z) log|z|.
double BlochWigner(Complex z);

// Sum of D over the non-degenerate shapes.
double BlochWignerVolume(const std::vector<Complex>& shapes,
                         const std::vector<bool>& degenerate = {});

}  // namespace pretzel

#endif  // PRETZEL_IDEAL_POINTS_HPP_
