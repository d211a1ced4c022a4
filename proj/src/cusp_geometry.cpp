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

#include "pretzel/cusp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

LatticePoint Point(int64_t re_num, int64_t re_den, int64_t im_num,
                   int64_t im_den) {
  return {Rational(re_num, re_den), Rational(im_num, im_den)};
}

// Length^2 of x*meridian + y*second over the unscaled field.
Rational UnscaledNorm(const CuspLattice& lattice, int64_t m, int64_t n) {
  const Rational re = Rational(n) * lattice.meridian.re +
                      Rational(m) * lattice.second.re;
  const Rational im = Rational(n) * lattice.meridian.im_sqrt3 +
                      Rational(m) * lattice.second.im_sqrt3;
  return re * re + Rational(3) * im * im;
}

double Abs(const LatticePoint& z) {
  const double re = z.re.ToDouble();
  const double im = z.im_sqrt3.ToDouble() * std::sqrt(3.0);
  return std::hypot(re, im);
}

}  // namespace

void CuspLattice::Validate() const {
  Require(scale_squared > Rational(0), "lattice scale must be positive");
  const Rational cross =
      meridian.re * second.im_sqrt3 - second.re * meridian.im_sqrt3;
  Require(cross != Rational(0),
          "lattice '" + name + "' translations are linearly dependent");
}

CuspLattice CuspLattice::Scaled(const Rational& factor_squared) const {
  CuspLattice out = *this;
  out.scale_squared = scale_squared * factor_squared;
  return out;
}

Rational SlopeLengthSquared(const CuspLattice& lattice, int64_t m, int64_t n) {
  return lattice.scale_squared * UnscaledNorm(lattice, m, n);
}

double SlopeLength(const CuspLattice& lattice, int64_t m, int64_t n) {
  Require(m != 0 || n != 0, "(m, n) = (0, 0) is not a slope");
  Require(std::gcd(m, n) == 1, "(m, n) must be primitive");
  return std::sqrt(SlopeLengthSquared(lattice, m, n).ToDouble());
}

Slope LatticeSlope(const Slope& second_label, int64_t m, int64_t n) {
  return Slope(n + m * second_label.numerator(),
               m * second_label.denominator());
}

std::vector<std::pair<int64_t, int64_t>> ShortSlopes(const CuspLattice& lattice,
                                                     const Rational& bound) {
  lattice.Validate();
  const Rational bound_sq = bound * bound;
  // |n*mu + m*sigma| >= |m| * height, height = covolume / |mu|.
  const double scale = std::sqrt(lattice.scale_squared.ToDouble());
  const double mu = Abs(lattice.meridian) * scale;
  const double cross = std::abs(
      (lattice.meridian.re * lattice.second.im_sqrt3 -
       lattice.second.re * lattice.meridian.im_sqrt3)
          .ToDouble()) *
      std::sqrt(3.0) * lattice.scale_squared.ToDouble();
  const double height = cross / mu;
  const double b = bound.ToDouble();
  const int64_t m_max = static_cast<int64_t>(std::floor(b / height)) + 1;
  // Projection of sigma onto mu, in units of mu.
  const double shift =
      ((lattice.meridian.re * lattice.second.re).ToDouble() +
       3.0 * (lattice.meridian.im_sqrt3 * lattice.second.im_sqrt3).ToDouble()) *
      lattice.scale_squared.ToDouble() / (mu * mu);
  const int64_t n_radius = static_cast<int64_t>(std::ceil(b / mu)) + 1;

  std::vector<std::pair<int64_t, int64_t>> out;
  for (int64_t m = 0; m <= m_max; ++m) {
    const int64_t center = static_cast<int64_t>(std::llround(-m * shift));
    for (int64_t n = center - n_radius; n <= center + n_radius; ++n) {
      if (m == 0 && n <= 0) continue;
      if (std::gcd(m, n) != 1) continue;
      if (SlopeLengthSquared(lattice, m, n) <= bound_sq) out.emplace_back(m, n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CuspLattice KnotCuspLattice() {
  return {"knot", Rational(1), Point(2, 1, 0, 1), Point(-1, 1, 3, 1),
          Slope(4)};
}

CuspLattice RescaledKnotCuspLattice() {
  CuspLattice l = KnotCuspLattice().Scaled(Rational(1, 2));
  l.name = "knot-rescaled";
  return l;
}

CuspLattice TrivialComponentLattice() {
  // Meridian sqrt(3)i, longitude 2.
  return {"trivial", Rational(1), Point(0, 1, 1, 1), Point(2, 1, 0, 1),
          Slope(0)};
}

CuspLattice ExpandedTrivialComponentLattice() {
  CuspLattice l = TrivialComponentLattice().Scaled(Rational(2));
  l.name = "trivial-expanded";
  return l;
}

CuspLattice ContractedTrivialComponentLattice() {
  CuspLattice l = TrivialComponentLattice().Scaled(Rational(1, 2));
  l.name = "trivial-contracted";
  return l;
}

std::vector<CuspLattice> BundledLattices() {
  return {KnotCuspLattice(), RescaledKnotCuspLattice(),
          TrivialComponentLattice(), ExpandedTrivialComponentLattice(),
          ContractedTrivialComponentLattice()};
}

std::vector<Slope> CandidateSet::slopes() const {
  std::vector<Slope> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.slope);
  return out;
}

bool CandidateSet::Contains(const Slope& s) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const CandidateEntry& e) { return e.slope == s; });
}

namespace {

// -1/k filling on a twist-region cusp: n = -1 meridians, m = k longitudes.
bool TwistFillingIsLong(const CuspLattice& lattice, int64_t k) {
  return SlopeLengthSquared(lattice, k, -1) > Rational(36);
}

}  // namespace

CandidateSet ExceptionalCandidatesSixTheorem(const KnotSpec& knot) {
  const int64_t k = (knot.p() - 1) / 2;
  const int64_t l = (knot.q() - 1) / 2;

  CuspLattice knot_cusp;
  std::string method;
  if (TwistFillingIsLong(TrivialComponentLattice(), k) &&
      TwistFillingIsLong(TrivialComponentLattice(), l)) {
    knot_cusp = KnotCuspLattice();
    method = "six-theorem, standard cusps";
  } else if (TwistFillingIsLong(ExpandedTrivialComponentLattice(), k) &&
             TwistFillingIsLong(ContractedTrivialComponentLattice(), l)) {
    knot_cusp = RescaledKnotCuspLattice();
    method = "six-theorem, p-twist cusp expanded by sqrt(2)";
  } else {
    Fail(ErrorCode::kInvalidArgument,
         "six-theorem does not apply to " + knot.ToString() +
             ": a twist-region filling has length <= 6 under every bundled "
             "cusp normalization");
  }

  const Slope label(knot.toroidal_slope());
  CandidateSet out{knot, method, {}};
  for (const auto& [m, n] : ShortSlopes(knot_cusp)) {
    const Slope s = LatticeSlope(label, m, n);
    if (s.is_meridian()) continue;
    out.entries.push_back(
        {s,
         {"length <= 6 on " + knot_cusp.name + " cusp at (m,n)=(" +
          std::to_string(m) + "," + std::to_string(n) + ")"}});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) { return a.slope < b.slope; });
  return out;
}

CandidateSet CandidateFiniteSlopes(const KnotSpec& knot,
                                   const BoundarySlopeTable& table,
                                   int detected_count) {
  if (!table.complete) {
    Fail(ErrorCode::kPartialData,
         "candidate_finite_slopes needs a complete boundary-slope table for " +
             knot.ToString());
  }
  Require(table.knot == knot, "boundary table belongs to a different knot");
  Require(detected_count >= 0, "detected_count must be non-negative");
  const bool strict = detected_count != 2;
  const Slope toroidal(knot.toroidal_slope());
  CandidateSet out{knot,
                   strict ? "norm filters, strict proximity"
                          : "norm filters, non-strict proximity",
                   {}};

  std::vector<Slope> raw;
  for (int64_t a = 2 * toroidal.numerator() - 20;
       a <= 2 * toroidal.numerator() + 20; ++a) {
    const Slope s = (a % 2 == 0) ? Slope(a / 2) : Slope(a, 2);
    if (Distance(s, toroidal) > 10) continue;
    raw.push_back(s);
  }
  for (const Slope& s : raw) {
    CandidateEntry entry{s, {}};
    entry.filters.push_back(s.is_integral() ? "integral" : "half-integral");
    entry.filters.push_back("distance " + std::to_string(Distance(s, toroidal)) +
                            " <= 10 from toroidal " + toroidal.ToString());
    // |s - r| < 2/b  <=>  Distance(s, r) < 2 * den(r).
    const Slope* near = nullptr;
    for (const Slope& r : table.slopes) {
      if (r.numerator() == 0) continue;
      const int64_t d = Distance(s, r);
      const int64_t limit = 2 * r.denominator();
      if (strict ? d < limit : d <= limit) {
        near = &r;
        break;
      }
    }
    if (near == nullptr) continue;
    entry.filters.push_back(std::string("within ") + (strict ? "<" : "<=") +
                            " 2/b of strict boundary slope " +
                            near->ToString());
    if (IsBoundarySlope(table, s) == Membership::kYes) continue;
    entry.filters.push_back("not a boundary slope");
    out.entries.push_back(std::move(entry));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.slope.denominator() != b.slope.denominator()) {
                return a.slope.denominator() < b.slope.denominator();
              }
              return a.slope < b.slope;
            });
  return out;
}

}  // namespace pretzel
