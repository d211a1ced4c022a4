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

#include "pretzel/slope.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "pretzel/error.hpp"

namespace pretzel {

Slope::Slope(int64_t numerator, int64_t denominator) {
  Require(numerator != 0 || denominator != 0, "slope 0/0 is undefined");
  if (denominator == 0) {
    numerator_ = 1;
    denominator_ = 0;
    return;
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const int64_t g = std::gcd(numerator, denominator);
  numerator_ = numerator / g;
  denominator_ = denominator / g;
}

namespace {

int64_t ParseInt(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    Fail(ErrorCode::kParse, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Slope Slope::Parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Slope(ParseInt(text), 1);
  return Slope(ParseInt(text.substr(0, slash)),
               ParseInt(text.substr(slash + 1)));
}

double Slope::ToDouble() const {
  if (is_meridian()) return HUGE_VAL;
  return static_cast<double>(numerator_) / static_cast<double>(denominator_);
}

std::string Slope::ToString() const {
  if (denominator_ == 1) return std::to_string(numerator_);
  return std::to_string(numerator_) + "/" + std::to_string(denominator_);
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.is_meridian() || b.is_meridian()) {
    return a.is_meridian() <=> b.is_meridian();
  }
  const __int128 lhs = static_cast<__int128>(a.numerator_) * b.denominator_;
  const __int128 rhs = static_cast<__int128>(b.numerator_) * a.denominator_;
  return lhs <=> rhs;
}

int64_t Distance(const Slope& s1, const Slope& s2) {
  const __int128 ad = static_cast<__int128>(s1.numerator()) * s2.denominator();
  const __int128 bc = static_cast<__int128>(s1.denominator()) * s2.numerator();
  const __int128 d = ad - bc;
  return static_cast<int64_t>(d < 0 ? -d : d);
}

bool IsValidKnot(int p, int q) {
  return p % 2 != 0 && q % 2 != 0 && p >= 5 && p <= q;
}

KnotSpec::KnotSpec(int p, int q) : p_(p), q_(q) {
  Require(IsValidKnot(p, q), "knot parameters must be odd with 5 <= p <= q, got (" +
                                 std::to_string(p) + "," + std::to_string(q) + ")");
}

std::string KnotSpec::ToString() const {
  return "(-2," + std::to_string(p_) + "," + std::to_string(q_) + ")";
}

BoundarySlopeTable BoundarySlopes(const KnotSpec& knot) {
  BoundarySlopeTable table{knot, {}, true};
  const int64_t q = knot.q();
  if (knot.p() == 5) {
    table.slopes = {Slope(0), Slope(14), Slope(15)};
    if (q == 5) {
      table.slopes.insert(table.slopes.end(), {Slope(20), Slope(22)});
    } else if (q == 7) {
      table.slopes.insert(table.slopes.end(),
                          {Slope(37, 2), Slope(24), Slope(26)});
    } else if (q == 9) {
      table.slopes.insert(table.slopes.end(),
                          {Slope(67, 3), Slope(28), Slope(30)});
    } else {
      table.slopes.insert(table.slopes.end(),
                          {Slope(q * q - q - 5, (q - 3) / 2), Slope(2 * q + 10),
                           Slope(2 * q + 12)});
    }
    return table;
  }
  table.slopes = {Slope(knot.toroidal_slope()),
                  Slope(knot.toroidal_slope() + 2)};
  table.complete = false;
  return table;
}

Membership IsBoundarySlope(const BoundarySlopeTable& table, const Slope& s) {
  for (const Slope& b : table.slopes) {
    if (b == s) return Membership::kYes;
  }
  return table.complete ? Membership::kNo : Membership::kUnknown;
}

Membership IsBoundarySlope(const KnotSpec& knot, const Slope& s) {
  return IsBoundarySlope(BoundarySlopes(knot), s);
}

}  // namespace pretzel
