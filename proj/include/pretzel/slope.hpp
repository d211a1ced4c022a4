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

#ifndef PRETZEL_SLOPE_HPP_
#define PRETZEL_SLOPE_HPP_

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pretzel {

// A surgery slope a/b in lowest terms, including the meridian 1/0. The sign
// lives in the numerator so that equality is structural.
class Slope {
 public:
  // Reduces (numerator, denominator). (x, 0) with x != 0 becomes 1/0;
  // (0, 0) is rejected.
  Slope(int64_t numerator, int64_t denominator = 1);

  static Slope Meridian() { return Slope(1, 0); }
  // Accepts "a/b", "a", and "1/0".
  static Slope Parse(std::string_view text);

  int64_t numerator() const { return numerator_; }
  int64_t denominator() const { return denominator_; }

  bool is_meridian() const { return denominator_ == 0; }
  bool is_integral() const { return denominator_ == 1; }
  bool is_even_integer() const {
    return denominator_ == 1 && numerator_ % 2 == 0;
  }
  double ToDouble() const;
  std::string ToString() const;

  friend bool operator==(const Slope&, const Slope&) = default;
  // Orders by rational value with 1/0 above every finite slope.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  int64_t numerator_;
  int64_t denominator_;
};

// Intersection number |ad - bc| of a/b and c/d.
int64_t Distance(const Slope& s1, const Slope& s2);

// The (-2, p, q) pretzel knot with p, q odd and 5 <= p <= q.
class KnotSpec {
 public:
  KnotSpec(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  // The toroidal slope 2(p+q).
  int64_t toroidal_slope() const { return 2 * (int64_t{p_} + q_); }
  std::string ToString() const;

  friend bool operator==(const KnotSpec&, const KnotSpec&) = default;

 private:
  int p_;
  int q_;
};

// True when (p, q) names a knot this library treats.
bool IsValidKnot(int p, int q);

struct BoundarySlopeTable {
  KnotSpec knot;
  std::vector<Slope> slopes;
  bool complete = false;
};

// Bundled boundary-slope data. Complete for (5, q); only {2(p+q), 2(p+q)+2}
// is known for p >= 7 and the table is flagged partial.
BoundarySlopeTable BoundarySlopes(const KnotSpec& knot);

enum class Membership { kNo = 0, kYes = 1, kUnknown = 2 };

Membership IsBoundarySlope(const BoundarySlopeTable& table, const Slope& s);
Membership IsBoundarySlope(const KnotSpec& knot, const Slope& s);

}  // namespace pretzel

#endif  // PRETZEL_SLOPE_HPP_
