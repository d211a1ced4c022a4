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

#ifndef PRETZEL_CUSP_GEOMETRY_HPP_
#define PRETZEL_CUSP_GEOMETRY_HPP_

#include <string>
#include <utility>
#include <vector>

#include "pretzel/rational.hpp"
#include "pretzel/slope.hpp"

namespace pretzel {

// A point a + b*sqrt(3)*i of the Eisenstein-like field every bundled cusp
// lives in. The true translation is sqrt(scale_squared) times this value.
struct LatticePoint {
  Rational re;
  Rational im_sqrt3;
};

// Euclidean cusp cross-section lattice. n counts meridians and m counts
// copies of the second translation, which realizes `second_label`.
struct CuspLattice {
  std::string name;
  Rational scale_squared{1};
  LatticePoint meridian;
  LatticePoint second;
  Slope second_label{0};

  // Throws unless the translations are independent over the reals.
  void Validate() const;
  CuspLattice Scaled(const Rational& factor_squared) const;
};

// Squared length of n*meridian + m*second; exact.
Rational SlopeLengthSquared(const CuspLattice& lattice, int64_t m, int64_t n);
// Rejects (0, 0) and non-primitive pairs.
double SlopeLength(const CuspLattice& lattice, int64_t m, int64_t n);

// The slope realized by n*meridian + m*second: (n + m*u)/(m*v) for a second
// label u/v.
Slope LatticeSlope(const Slope& second_label, int64_t m, int64_t n);

// All primitive (m, n), one per +- pair (m > 0, or m == 0 and n == 1), whose
// length is at most `bound`. Decided exactly as length^2 <= bound^2.
std::vector<std::pair<int64_t, int64_t>> ShortSlopes(
    const CuspLattice& lattice, const Rational& bound = Rational(6));

// Bundled lattices of the three-cusped parent link. The knot cusp's second
// translation is labelled 4/1; twisting relabels it to 2(p+q).
CuspLattice KnotCuspLattice();
CuspLattice RescaledKnotCuspLattice();
CuspLattice TrivialComponentLattice();
CuspLattice ExpandedTrivialComponentLattice();
CuspLattice ContractedTrivialComponentLattice();
std::vector<CuspLattice> BundledLattices();

struct CandidateEntry {
  Slope slope;
  // Filters the slope passed, in the order applied.
  std::vector<std::string> filters;
};

struct CandidateSet {
  KnotSpec knot;
  std::string method;
  std::vector<CandidateEntry> entries;

  std::vector<Slope> slopes() const;
  bool Contains(const Slope& s) const;
};

// Six-theorem candidates for p >= 7, or p == 5 with q >= 11. Picks the cusp
// normalization under which both twist-region fillings are longer than 6 and
// rejects the knot when neither works. The meridian is not included.
CandidateSet ExceptionalCandidatesSixTheorem(const KnotSpec& knot);

// Integral or half-integral slopes within distance 10 of 2(p+q) that sit near
// a strict (nonzero) boundary slope and are not boundary slopes themselves.
// Proximity |s - r| < 2/b is strict unless exactly two strict slopes are
// detected. Partial tables are refused.
CandidateSet CandidateFiniteSlopes(const KnotSpec& knot,
                                   const BoundarySlopeTable& table,
                                   int detected_count);

}  // namespace pretzel

#endif  // PRETZEL_CUSP_GEOMETRY_HPP_
