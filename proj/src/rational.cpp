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

#include "pretzel/rational.hpp"

#include <charconv>
#include <limits>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

__int128 Gcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(int64_t numerator, int64_t denominator) {
  Require(denominator != 0, "rational with zero denominator");
  *this = FromWide(numerator, denominator);
}

Rational Rational::FromWide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = std::numeric_limits<int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    Fail(ErrorCode::kInternal, "rational overflow");
  }
  return Rational(Raw{}, static_cast<int64_t>(num), static_cast<int64_t>(den));
}

Rational Rational::Parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      Fail(ErrorCode::kParse, "not a rational: '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) Fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::FromWide(static_cast<__int128>(a.num_) * b.den_ +
                                static_cast<__int128>(b.num_) * a.den_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::FromWide(static_cast<__int128>(a.num_) * b.num_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  Require(b.num_ != 0, "rational division by zero");
  return Rational::FromWide(static_cast<__int128>(a.num_) * b.den_,
                            static_cast<__int128>(a.den_) * b.num_);
}

}  // namespace pretzel
