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

#ifndef PRETZEL_OHTSUKI_HPP_
#define PRETZEL_OHTSUKI_HPP_

#include <complex>
#include <cstdint>
#include <vector>

namespace pretzel {

// Integer polynomial with ascending coefficients and nonzero leading term.
class IntegerPolynomial {
 public:
  explicit IntegerPolynomial(std::vector<int64_t> coefficients);

  const std::vector<int64_t>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  std::complex<long double> Evaluate(std::complex<long double> z) const;
  // Euclidean norm of the coefficient vector.
  double Norm() const;

  friend IntegerPolynomial operator*(const IntegerPolynomial& a,
                                     const IntegerPolynomial& b);
  friend bool operator==(const IntegerPolynomial&,
                         const IntegerPolynomial&) = default;

 private:
  std::vector<int64_t> coefficients_;
};

struct RootSet {
  std::vector<std::complex<double>> roots;
  // |p(root)| / ||p|| per root.
  std::vector<double> residuals;
  double max_residual = 0.0;
  int iterations = 0;
};

// All roots by Aberth simultaneous iteration in extended precision, then
// polished with Newton steps. Fails unless every residual is below `tol`.
RootSet Roots(const IntegerPolynomial& poly, double tol = 1e-10);

// Cross ratio of the fixed points once t_1^- = 0, t_1^+ = 1 and
// t_3^+ = t_2^+ + 1 = 2 + zeta: equals -zeta (2 + zeta).
std::complex<double> CrossRatioValue(std::complex<double> zeta);

struct ClusterReport {
  int count = 0;
  // Number of values in each cluster, in order of first appearance.
  std::vector<int> sizes;
  std::vector<std::complex<double>> representatives;
  // Smallest distance between values in different clusters.
  double min_gap = 0.0;
};

// Single-linkage clusters under |u - v| < tol. Fails when two clusters come
// closer than 10 * tol, where the count would depend on the tolerance.
ClusterReport CountDistinct(const std::vector<std::complex<double>>& values,
                            double tol = 1e-6);

// The two degree-8 factors whose product vanishes at the ideal points.
IntegerPolynomial OhtsukiFactorA();
IntegerPolynomial OhtsukiFactorB();
IntegerPolynomial OhtsukiPolynomial();

}  // namespace pretzel

#endif  // PRETZEL_OHTSUKI_HPP_
