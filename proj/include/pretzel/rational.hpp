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

#ifndef PRETZEL_RATIONAL_HPP_
#define PRETZEL_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace pretzel {

// Small exact rational with int64 storage and 128-bit intermediates. Only
// used for lattice arithmetic where magnitudes stay tiny.
class Rational {
 public:
  Rational(int64_t numerator = 0, int64_t denominator = 1);

  static Rational Parse(std::string_view text);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  std::string ToString() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=>
           static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  struct Raw {};
  Rational(Raw, int64_t num, int64_t den) : num_(num), den_(den) {}
  static Rational FromWide(__int128 num, __int128 den);

  int64_t num_;
  int64_t den_;
};

}  // namespace pretzel

#endif  // PRETZEL_RATIONAL_HPP_
