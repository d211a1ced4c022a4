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

#include "pretzel/ohtsuki.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

using LComplex = std::complex<long double>;

// p(z) and p'(z) by Horner.
std::pair<LComplex, LComplex> EvaluateWithDerivative(
    const std::vector<int64_t>& c, LComplex z) {
  LComplex p = 0.0L;
  LComplex dp = 0.0L;
  for (size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + static_cast<long double>(c[i]);
  }
  return {p, dp};
}

}  // namespace

IntegerPolynomial::IntegerPolynomial(std::vector<int64_t> coefficients)
    : coefficients_(std::move(coefficients)) {
  Require(!coefficients_.empty() && coefficients_.back() != 0,
          "polynomial leading coefficient must be nonzero");
}

std::complex<long double> IntegerPolynomial::Evaluate(
    std::complex<long double> z) const {
  return EvaluateWithDerivative(coefficients_, z).first;
}

double IntegerPolynomial::Norm() const {
  double sum = 0.0;
  for (int64_t c : coefficients_) sum += static_cast<double>(c) * c;
  return std::sqrt(sum);
}

IntegerPolynomial operator*(const IntegerPolynomial& a,
                            const IntegerPolynomial& b) {
  std::vector<int64_t> out(a.coefficients_.size() + b.coefficients_.size() - 1, 0);
  for (size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (size_t j = 0; j < b.coefficients_.size(); ++j) {
      out[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return IntegerPolynomial(std::move(out));
}

RootSet Roots(const IntegerPolynomial& poly, double tol) {
  Require(poly.degree() >= 1, "root finding needs degree >= 1");
  Require(tol > 0.0, "tolerance must be positive");
  const auto& c = poly.coefficients();
  const int n = poly.degree();
  const long double lead = static_cast<long double>(c.back());

  // Cauchy bound on the root moduli.
  long double radius = 0.0L;
  for (int i = 0; i < n; ++i) {
    radius = std::max(radius, std::abs(static_cast<long double>(c[i]) / lead));
  }
  radius += 1.0L;

  std::vector<LComplex> z(n);
  for (int k = 0; k < n; ++k) {
    const long double angle =
        2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(radius * 0.5L, angle);
  }

  RootSet out;
  constexpr int kMaxIterations = 1000;
  for (; out.iterations < kMaxIterations; ++out.iterations) {
    long double max_step = 0.0L;
    for (int k = 0; k < n; ++k) {
      const auto [p, dp] = EvaluateWithDerivative(c, z[k]);
      if (p == LComplex(0.0L)) continue;
      const LComplex ratio = p / dp;
      LComplex repulsion = 0.0L;
      for (int j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0L / (z[k] - z[j]);
      }
      const LComplex step = ratio / (1.0L - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    // Horner rounding near the roots caps the attainable step size; the
    // Newton polish below recovers the remaining digits.
    if (max_step < 1e-12L) break;
  }
  if (out.iterations == kMaxIterations) {
    Fail(ErrorCode::kNotConverged, "Aberth iteration did not converge");
  }

  const double norm = poly.Norm();
  for (LComplex& root : z) {
    for (int polish = 0; polish < 3; ++polish) {
      const auto [p, dp] = EvaluateWithDerivative(c, root);
      if (dp == LComplex(0.0L)) break;
      root -= p / dp;
    }
    const double residual =
        static_cast<double>(std::abs(poly.Evaluate(root))) / norm;
    out.roots.emplace_back(static_cast<double>(root.real()),
                           static_cast<double>(root.imag()));
    out.residuals.push_back(residual);
    out.max_residual = std::max(out.max_residual, residual);
  }
  if (out.max_residual >= tol) {
    Fail(ErrorCode::kNotConverged, "root residual " + std::to_string(out.max_residual) +
                                       " exceeds tolerance");
  }
  // Deterministic order: by real part, then imaginary part.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& ra = out.roots[a];
    const auto& rb = out.roots[b];
    if (std::abs(ra.real() - rb.real()) > 1e-12) return ra.real() < rb.real();
    return ra.imag() < rb.imag();
  });
  RootSet sorted;
  sorted.iterations = out.iterations;
  sorted.max_residual = out.max_residual;
  for (size_t i : order) {
    sorted.roots.push_back(out.roots[i]);
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

std::complex<double> CrossRatioValue(std::complex<double> zeta) {
  if (std::abs(zeta + 2.0) < 1e-14) {
    Fail(ErrorCode::kInvalidArgument, "cross ratio undefined at zeta = -2");
  }
  return -zeta * (2.0 + zeta);
}

ClusterReport CountDistinct(const std::vector<std::complex<double>>& values,
                            double tol) {
  Require(tol > 0.0, "tolerance must be positive");
  const size_t n = values.size();
  for (const auto& v : values) {
    Require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "values must be finite");
  }
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) < tol) parent[find(i)] = find(j);
    }
  }
  ClusterReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  std::vector<int> label(n, -1);
  std::vector<size_t> roots_seen;
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    auto it = std::find(roots_seen.begin(), roots_seen.end(), r);
    if (it == roots_seen.end()) {
      roots_seen.push_back(r);
      report.sizes.push_back(0);
      report.representatives.push_back(values[i]);
      it = roots_seen.end() - 1;
    }
    const int l = static_cast<int>(it - roots_seen.begin());
    label[i] = l;
    ++report.sizes[l];
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (label[i] != label[j]) {
        report.min_gap = std::min(report.min_gap, std::abs(values[i] - values[j]));
      }
    }
  }
  report.count = static_cast<int>(roots_seen.size());
  if (report.count > 1 && report.min_gap <= 10.0 * tol) {
    Fail(ErrorCode::kInvalidArgument,
         "ambiguous clustering: clusters " + std::to_string(report.min_gap) +
             " apart at tolerance " + std::to_string(tol));
  }
  return report;
}

IntegerPolynomial OhtsukiFactorA() {
  return IntegerPolynomial({1, 2, 5, -20, -19, 14, 21, 8, 1});
}

IntegerPolynomial OhtsukiFactorB() {
  return IntegerPolynomial({-1, 6, 7, -20, -19, 14, 21, 8, 1});
}

IntegerPolynomial OhtsukiPolynomial() {
  return OhtsukiFactorA() * OhtsukiFactorB();
}

}  // namespace pretzel
