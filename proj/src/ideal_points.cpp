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

#include "pretzel/ideal_points.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * kPi);

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

int ResolveDropped(const GluingSystem& sys, int dropped) {
  if (dropped < 0) dropped = sys.n - 1;
  Require(dropped < sys.n, "dropped equation index out of range");
  return dropped;
}

std::vector<ConvertedRow> RetainedRows(const GluingSystem& sys, int dropped) {
  std::vector<ConvertedRow> rows;
  for (int j = 0; j < sys.n; ++j) {
    if (j != dropped) rows.push_back(Convert(sys.equations[j]));
  }
  return rows;
}

std::array<int64_t, 2> KindValuation(Degeneration kind, int64_t d) {
  switch (kind) {
    case Degeneration::kZero:
      return {d, 0};
    case Degeneration::kOne:
      return {0, d};
    case Degeneration::kInfinity:
      return {-d, -d};
  }
  return {0, 0};
}

int64_t WordValuation(const ExponentRow& word,
                      const std::vector<std::array<int64_t, 2>>& v) {
  const ConvertedRow c = Convert(word);
  int64_t total = 0;
  for (size_t k = 0; k < v.size(); ++k) {
    total += c.r1[k] * v[k][0] + c.r2[k] * v[k][1];
  }
  return total;
}

ExponentRow MakeRow(int n, std::initializer_list<std::array<int64_t, 3>> terms) {
  // Each term is (tetrahedron 1-based, which of z/z'/z'', exponent).
  ExponentRow row(n, {0, 0, 0});
  for (const auto& t : terms) row[t[0] - 1][t[1]] += t[2];
  return row;
}

}  // namespace

void GluingSystem::Validate() const {
  Require(n >= 2, "gluing system needs at least two tetrahedra");
  Require(static_cast<int>(equations.size()) == n,
          "gluing system needs one equation per tetrahedron");
  auto check = [&](const ExponentRow& row, const std::string& what) {
    Require(static_cast<int>(row.size()) == n,
            what + " has " + std::to_string(row.size()) + " entries, expected " +
                std::to_string(n));
  };
  for (size_t j = 0; j < equations.size(); ++j) {
    check(equations[j], "equation " + std::to_string(j + 1));
  }
  check(meridian, "meridian word");
  check(longitude, "longitude word");
}

ExponentRow GluingSystem::EdgeSum() const {
  ExponentRow sum(n, {0, 0, 0});
  for (const auto& row : equations) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < 3; ++i) sum[k][i] += row[k][i];
    }
  }
  return sum;
}

ConvertedRow Convert(const ExponentRow& row) {
  ConvertedRow c;
  c.r1.resize(row.size());
  c.r2.resize(row.size());
  int64_t flips = 0;
  for (size_t k = 0; k < row.size(); ++k) {
    const auto [e, e1, e2] = row[k];
    // z' = (1-z)^-1 and z'' = -(1-z) z^-1.
    c.r1[k] = e - e2;
    c.r2[k] = e2 - e1;
    flips += e2;
  }
  c.sign = (flips % 2 == 0) ? 1 : -1;
  return c;
}

std::string DegenerationString(const DegenerationType& type) {
  std::string out = "(";
  for (size_t k = 0; k < type.size(); ++k) {
    if (k > 0) out += ",";
    switch (type[k]) {
      case Degeneration::kZero:
        out += "0";
        break;
      case Degeneration::kOne:
        out += "1";
        break;
      case Degeneration::kInfinity:
        out += "inf";
        break;
    }
  }
  return out + ")";
}

DegenerationType ParseDegeneration(const std::string& text) {
  DegenerationType out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "0") {
      out.push_back(Degeneration::kZero);
    } else if (token == "1") {
      out.push_back(Degeneration::kOne);
    } else if (token == "inf" || token == "oo" || token == "i") {
      out.push_back(Degeneration::kInfinity);
    } else {
      Fail(ErrorCode::kParse, "bad degeneration entry '" + token + "'");
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == ' ') continue;
    if (ch == ',') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  return out;
}

IntMatrix DegenerationMatrix(const GluingSystem& sys,
                             const DegenerationType& type, int dropped) {
  Require(static_cast<int>(type.size()) == sys.n,
          "degeneration type length must equal the tetrahedron count");
  dropped = ResolveDropped(sys, dropped);
  IntMatrix m;
  for (const ConvertedRow& row : RetainedRows(sys, dropped)) {
    std::vector<int64_t> out(sys.n);
    for (int k = 0; k < sys.n; ++k) {
      switch (type[k]) {
        case Degeneration::kOne:
          out[k] = row.r2[k];
          break;
        case Degeneration::kZero:
          out[k] = row.r1[k];
          break;
        case Degeneration::kInfinity:
          out[k] = -row.r1[k] - row.r2[k];
          break;
      }
    }
    m.push_back(std::move(out));
  }
  return m;
}

int64_t Determinant(IntMatrix m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (size_t i = 0; i < n; ++i) {
    Require(m[i].size() == n, "determinant needs a square matrix");
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  __int128 sign = 1;
  __int128 prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return static_cast<int64_t>(sign * a[n - 1][n - 1]);
}

std::vector<int64_t> DVector(const IntMatrix& matrix) {
  const size_t rows = matrix.size();
  const size_t cols = rows + 1;
  for (const auto& r : matrix) {
    Require(r.size() == cols, "d-vector needs an (n-1) x n matrix");
  }
  std::vector<int64_t> d(cols);
  for (size_t k = 0; k < cols; ++k) {
    IntMatrix minor(rows, std::vector<int64_t>(rows));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0, c = 0; j < cols; ++j) {
        if (j != k) minor[i][c++] = matrix[i][j];
      }
    }
    const int64_t det = Determinant(std::move(minor));
    // Columns are numbered from 1 in the sign (-1)^k.
    d[k] = (k % 2 == 1) ? det : -det;
  }
  return d;
}

int64_t PeripheralValuation(const GluingSystem& sys,
                            const DegenerationType& type,
                            const std::vector<int64_t>& d,
                            const ExponentRow& word) {
  Require(static_cast<int>(d.size()) == sys.n &&
              static_cast<int>(type.size()) == sys.n,
          "valuation inputs must have one entry per tetrahedron");
  const bool positive = std::all_of(d.begin(), d.end(), [](int64_t x) { return x > 0; });
  const bool negative = std::all_of(d.begin(), d.end(), [](int64_t x) { return x < 0; });
  Require(positive || negative, "d-vector must be strictly one-signed");
  std::vector<std::array<int64_t, 2>> v(sys.n);
  for (int k = 0; k < sys.n; ++k) v[k] = KindValuation(type[k], d[k]);
  return WordValuation(word, v);
}

std::vector<IdealPointRecord> ScanDegenerations(const GluingSystem& sys,
                                                int dropped) {
  sys.Validate();
  dropped = ResolveDropped(sys, dropped);
  std::vector<IdealPointRecord> out;
  DegenerationType type(sys.n, Degeneration::kZero);
  int64_t total = 1;
  for (int k = 0; k < sys.n; ++k) total *= 3;
  for (int64_t code = 0; code < total; ++code) {
    int64_t c = code;
    for (int k = sys.n - 1; k >= 0; --k) {
      type[k] = static_cast<Degeneration>(c % 3);
      c /= 3;
    }
    std::vector<int64_t> d = DVector(DegenerationMatrix(sys, type, dropped));
    const bool positive = std::all_of(d.begin(), d.end(), [](int64_t x) { return x > 0; });
    const bool negative = std::all_of(d.begin(), d.end(), [](int64_t x) { return x < 0; });
    if (!positive && !negative) continue;
    IdealPointRecord rec;
    rec.type = type;
    rec.raw_sign = positive ? 1 : -1;
    if (negative) {
      for (auto& x : d) x = -x;
    }
    rec.d = d;
    rec.v_meridian = PeripheralValuation(sys, type, d, sys.meridian);
    if (rec.v_meridian == 0) continue;
    rec.v_longitude = PeripheralValuation(sys, type, d, sys.longitude);
    rec.slope = Slope(-rec.v_longitude, rec.v_meridian);
    out.push_back(std::move(rec));
  }
  return out;
}

GluingSystem Pretzel255System() {
  constexpr int n = 7;
  constexpr int64_t Z = 0, P = 1, Q = 2;  // z, z', z''.
  GluingSystem sys;
  sys.n = n;
  sys.equations = {
      MakeRow(n, {{1, Z, 1}, {2, P, 1}, {3, Z, 1}, {4, Z, 1}, {5, Z, 1}}),
      MakeRow(n, {{1, P, 1}, {1, Q, 1}, {2, Z, 1}, {4, P, 1}, {5, P, 1},
                  {5, Q, 1}, {6, P, 2}, {6, Q, 1}}),
      MakeRow(n, {{1, Q, 1}, {2, Z, 1}, {2, Q, 1}, {3, P, 1}, {3, Q, 1},
                  {4, P, 1}, {7, P, 2}, {7, Q, 1}}),
      MakeRow(n, {{1, Z, 1}, {2, P, 1}, {6, Z, 1}, {7, Z, 1}}),
      MakeRow(n, {{3, Z, 1}, {4, Q, 1}, {5, P, 1}, {7, Z, 1}}),
      MakeRow(n, {{3, P, 1}, {4, Q, 1}, {5, Z, 1}, {6, Z, 1}}),
      MakeRow(n, {{1, P, 1}, {2, Q, 1}, {3, Q, 1}, {4, Z, 1}, {5, Q, 1},
                  {6, Q, 1}, {7, Q, 1}}),
  };
  sys.meridian = MakeRow(n, {{1, Q, 1}, {4, P, 1}, {5, Z, -1}, {6, P, 1}});
  sys.longitude = MakeRow(
      n, {{1, Z, -1}, {1, P, 1}, {1, Q, -19}, {2, Z, 1}, {2, P, 1}, {3, P, -1},
          {3, Q, -1}, {4, P, -19}, {4, Q, 1}, {5, Z, 18}, {5, Q, -1},
          {6, P, -19}});
  return sys;
}

namespace {

Complex LogTerm(const std::array<int64_t, 3>& e, Complex z) {
  return static_cast<double>(e[0]) * std::log(z) +
         static_cast<double>(e[1]) * std::log(1.0 / (1.0 - z)) +
         static_cast<double>(e[2]) * std::log(1.0 - 1.0 / z);
}

Complex LogDerivative(const std::array<int64_t, 3>& e, Complex z) {
  return static_cast<double>(e[0]) / z +
         static_cast<double>(e[1]) / (1.0 - z) +
         static_cast<double>(e[2]) / (z * (z - 1.0));
}

Complex LogHolonomy(const ExponentRow& row, const std::vector<Complex>& z) {
  Complex sum = 0.0;
  for (size_t k = 0; k < z.size(); ++k) sum += LogTerm(row[k], z[k]);
  return sum;
}

double MaxAbs(const CVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

struct LogSystem {
  const GluingSystem& sys;
  std::vector<const ExponentRow*> rows;
  std::vector<Complex> rhs;

  explicit LogSystem(const GluingSystem& s) : sys(s) {
    for (int j = 0; j + 1 < s.n; ++j) {
      rows.push_back(&s.equations[j]);
      rhs.push_back(kTwoPiI);
    }
    rows.push_back(&s.meridian);
    rhs.push_back(0.0);
  }

  CVector Residual(const std::vector<Complex>& z) const {
    CVector f(rows.size());
    for (size_t j = 0; j < rows.size(); ++j) {
      f(j) = LogHolonomy(*rows[j], z) - rhs[j];
    }
    return f;
  }

  CMatrix Jacobian(const std::vector<Complex>& z) const {
    CMatrix jac(rows.size(), z.size());
    for (size_t j = 0; j < rows.size(); ++j) {
      for (size_t k = 0; k < z.size(); ++k) {
        jac(j, k) = LogDerivative((*rows[j])[k], z[k]);
      }
    }
    return jac;
  }
};

}  // namespace

CompleteSolution SolveComplete(const GluingSystem& sys,
                               const std::vector<Complex>& initial,
                               const SolveOptions& options) {
  sys.Validate();
  Require(static_cast<int>(initial.size()) == sys.n,
          "initial shapes must have one entry per tetrahedron");
  for (const Complex& z : initial) {
    Require(z.imag() > 0.0, "initial shapes must have positive imaginary part");
  }
  const LogSystem system(sys);
  std::vector<Complex> z = initial;
  CVector f = system.Residual(z);
  int it = 0;
  for (; it < options.max_iterations && MaxAbs(f) >= options.tolerance; ++it) {
    Eigen::FullPivLU<CMatrix> lu(system.Jacobian(z));
    if (!lu.isInvertible()) {
      Fail(ErrorCode::kNotConverged, "degenerate Jacobian in complete-structure solve");
    }
    const CVector step = lu.solve(f);
    double lambda = 1.0;
    std::vector<Complex> next(z.size());
    CVector fn;
    for (; lambda > 1e-10; lambda /= 2) {
      bool upper = true;
      for (size_t k = 0; k < z.size(); ++k) {
        next[k] = z[k] - lambda * step(k);
        upper = upper && next[k].imag() > 0.0;
      }
      if (!upper) continue;
      fn = system.Residual(next);
      if (fn.norm() < f.norm()) break;
    }
    if (lambda <= 1e-10) {
      Fail(ErrorCode::kNotConverged, "line search failed in complete-structure solve");
    }
    z = next;
    f = fn;
  }
  if (MaxAbs(f) >= options.tolerance) {
    Fail(ErrorCode::kNotConverged,
         "complete-structure solve did not converge in " +
             std::to_string(options.max_iterations) + " iterations");
  }
  CompleteSolution out;
  out.shapes = z;
  out.residual = MaxAbs(f);
  out.iterations = it;
  out.log_meridian = LogHolonomy(sys.meridian, z);
  out.log_longitude = LogHolonomy(sys.longitude, z);
  return out;
}

SubstitutionPlan Slope20Plan() {
  SubstitutionPlan plan;
  plan.name = "slope20";
  plan.entries = {{1, DegenerateKind::kZero, 1, "b"},
                  {5, DegenerateKind::kOne, 1, "f"}};
  // Unknowns: z1, z3, z4, z5, z7, f.
  for (double s : {1.0, -1.0}) {
    plan.branch_guesses.push_back({{-1.1, 0.05},
                                   {1.4, 0.8 * s},
                                   {0.5, 0.3 * s},
                                   {-0.4, 0.9 * s},
                                   {-0.9, -0.05},
                                   {0.0, -1.5 * s}});
  }
  return plan;
}

SubstitutionPlan Slope22Plan() {
  SubstitutionPlan plan;
  plan.name = "slope22";
  plan.entries = {{0, DegenerateKind::kOne, 1, "a"},
                  {1, DegenerateKind::kOne, 1, "b"},
                  {2, DegenerateKind::kZero, 1, "c"},
                  {4, DegenerateKind::kOne, 2, "e"},
                  {6, DegenerateKind::kZero, 1, "g"}};
  // Unknowns: z4, z6, b, c, e, g.
  plan.branch_guesses.push_back(
      {{0.6, 0.05}, {-1.1, 0.0}, {-1.2, 0.0}, {-2.2, 0.0}, {2.3, 0.0}, {1.1, 0.0}});
  return plan;
}

SubstitutionPlan PlanByName(const std::string& name) {
  if (name == "slope20") return Slope20Plan();
  if (name == "slope22") return Slope22Plan();
  Fail(ErrorCode::kInvalidArgument, "unknown substitution plan '" + name + "'");
}

std::vector<double> DefaultSchedule() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

namespace {

struct PlanSystem {
  int n;
  std::vector<ConvertedRow> rows;
  std::vector<int> plan_index;   // Per tetrahedron: entry index or -1.
  std::vector<int> unknown_of;   // Per tetrahedron (non-degenerate) or
  std::vector<int> coeff_unknown;  // per entry (-1 for the gauge).
  std::vector<PlanEntry> entries;
  int unknown_count = 0;

  PlanSystem(const GluingSystem& sys, const SubstitutionPlan& plan)
      : n(sys.n), entries(plan.entries) {
    Require(!plan.entries.empty(), "substitution plan has no entries");
    rows = RetainedRows(sys, sys.n - 1);
    plan_index.assign(n, -1);
    for (size_t e = 0; e < entries.size(); ++e) {
      const int k = entries[e].tetrahedron;
      Require(k >= 0 && k < n, "plan names an unknown tetrahedron");
      Require(plan_index[k] < 0, "plan names a tetrahedron twice");
      Require(entries[e].order > 0, "degeneration order must be positive");
      plan_index[k] = static_cast<int>(e);
    }
    unknown_of.assign(n, -1);
    for (int k = 0; k < n; ++k) {
      if (plan_index[k] < 0) unknown_of[k] = unknown_count++;
    }
    coeff_unknown.assign(entries.size(), -1);
    for (size_t e = 1; e < entries.size(); ++e) {
      coeff_unknown[e] = unknown_count++;
    }
    // Every equation must be free of net powers of t.
    for (size_t j = 0; j < rows.size(); ++j) {
      int64_t power = 0;
      for (const auto& entry : entries) {
        const int k = entry.tetrahedron;
        power += entry.order * (entry.kind == DegenerateKind::kZero
                                    ? rows[j].r1[k]
                                    : rows[j].r2[k]);
      }
      if (power != 0) {
        Fail(ErrorCode::kInvalidArgument,
             "plan leaves t^" + std::to_string(power) + " in equation " +
                 std::to_string(j + 1));
      }
    }
  }

  Complex Coefficient(const CVector& u, size_t e) const {
    return coeff_unknown[e] < 0 ? Complex(1.0) : u(coeff_unknown[e]);
  }

  // Residuals P_j - sign_j, and the Jacobian via d log P_j.
  void Evaluate(const CVector& u, double t, CVector* f, CMatrix* jac) const {
    const size_t m = rows.size();
    f->resize(m);
    jac->setZero(m, unknown_count);
    for (size_t j = 0; j < m; ++j) {
      const ConvertedRow& row = rows[j];
      Complex product = 1.0;
      std::vector<Complex> dlog(unknown_count, 0.0);
      for (int k = 0; k < n; ++k) {
        const double r1 = static_cast<double>(row.r1[k]);
        const double r2 = static_cast<double>(row.r2[k]);
        if (plan_index[k] < 0) {
          const Complex z = u(unknown_of[k]);
          product *= std::pow(z, r1) * std::pow(1.0 - z, r2);
          dlog[unknown_of[k]] += r1 / z - r2 / (1.0 - z);
          continue;
        }
        const size_t e = static_cast<size_t>(plan_index[k]);
        const Complex c = Coefficient(u, e);
        const double tp = std::pow(t, entries[e].order);
        const Complex rest = 1.0 - c * tp;
        Complex dc;
        if (entries[e].kind == DegenerateKind::kZero) {
          product *= std::pow(c, r1) * std::pow(rest, r2);
          dc = r1 / c - r2 * tp / rest;
        } else {
          product *= std::pow(rest, r1) * std::pow(c, r2);
          dc = -r1 * tp / rest + r2 / c;
        }
        if (coeff_unknown[e] >= 0) dlog[coeff_unknown[e]] += dc;
      }
      (*f)(j) = product - static_cast<double>(row.sign);
      for (int i = 0; i < unknown_count; ++i) (*jac)(j, i) = product * dlog[i];
    }
  }
};

CVector NewtonAt(const PlanSystem& ps, CVector u, double t,
                 const SolveOptions& options, double* residual) {
  CVector f;
  CMatrix jac;
  ps.Evaluate(u, t, &f, &jac);
  for (int it = 0; it < options.max_iterations && MaxAbs(f) >= options.tolerance;
       ++it) {
    Eigen::FullPivLU<CMatrix> lu(jac);
    if (!lu.isInvertible()) {
      Fail(ErrorCode::kNotConverged, "degenerate Jacobian in continuation");
    }
    const CVector step = lu.solve(f);
    double lambda = 1.0;
    CVector next;
    CVector fn;
    CMatrix jn;
    for (; lambda > 1e-10; lambda /= 2) {
      next = u - lambda * step;
      ps.Evaluate(next, t, &fn, &jn);
      if (fn.allFinite() && fn.norm() < f.norm()) break;
    }
    if (lambda <= 1e-10) {
      Fail(ErrorCode::kNotConverged, "continuation line search failed");
    }
    u = next;
    f = fn;
    jac = jn;
  }
  *residual = MaxAbs(f);
  if (*residual >= options.tolerance) {
    Fail(ErrorCode::kNotConverged, "continuation step did not converge at t = " +
                                       std::to_string(t));
  }
  return u;
}

// Neville extrapolation of the last `points` samples to t = 0.
Complex Extrapolate(const std::vector<double>& t,
                    const std::vector<Complex>& x) {
  const size_t m = t.size();
  std::vector<Complex> p(x.begin(), x.end());
  for (size_t level = 1; level < m; ++level) {
    for (size_t i = 0; i + level < m; ++i) {
      const double ti = t[i];
      const double tj = t[i + level];
      p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
    }
  }
  return p[0];
}

}  // namespace

std::array<int64_t, 2> PlanValuations(const GluingSystem& sys,
                                      const SubstitutionPlan& plan) {
  std::vector<std::array<int64_t, 2>> v(sys.n, {0, 0});
  for (const auto& entry : plan.entries) {
    Require(entry.tetrahedron >= 0 && entry.tetrahedron < sys.n,
            "plan names an unknown tetrahedron");
    v[entry.tetrahedron] = entry.kind == DegenerateKind::kZero
                               ? std::array<int64_t, 2>{entry.order, 0}
                               : std::array<int64_t, 2>{0, entry.order};
  }
  return {WordValuation(sys.meridian, v), WordValuation(sys.longitude, v)};
}

ContinuationResult ContinueToIdealPoint(const GluingSystem& sys,
                                        const SubstitutionPlan& plan, int branch,
                                        const std::vector<double>& schedule,
                                        const SolveOptions& options) {
  sys.Validate();
  Require(branch >= 0 && branch < static_cast<int>(plan.branch_guesses.size()),
          "plan '" + plan.name + "' has no branch " + std::to_string(branch));
  Require(!schedule.empty(), "t schedule is empty");
  for (size_t i = 0; i < schedule.size(); ++i) {
    Require(schedule[i] > 0.0, "t schedule must be positive");
    Require(i == 0 || schedule[i] < schedule[i - 1],
            "t schedule must be strictly decreasing");
  }
  const PlanSystem ps(sys, plan);
  const auto& guess = plan.branch_guesses[branch];
  Require(static_cast<int>(guess.size()) == ps.unknown_count,
          "branch guess has the wrong number of unknowns");

  ContinuationResult out;
  out.plan = plan.name;
  out.branch = branch;
  out.t_schedule = schedule;
  for (int k = 0; k < sys.n; ++k) {
    if (ps.plan_index[k] < 0) out.unknowns.push_back("z" + std::to_string(k + 1));
  }
  for (size_t e = 1; e < plan.entries.size(); ++e) {
    out.unknowns.push_back(plan.entries[e].coefficient);
  }

  CVector u(ps.unknown_count);
  for (int i = 0; i < ps.unknown_count; ++i) u(i) = guess[i];
  for (double t : schedule) {
    u = NewtonAt(ps, u, t, options, &out.final_residual);
    out.path.emplace_back(u.data(), u.data() + u.size());
  }
  for (size_t e = 1; e < plan.entries.size(); ++e) {
    const double mag = std::abs(u(ps.coeff_unknown[e]));
    if (mag < 1e-6 || mag > 1e6) {
      Fail(ErrorCode::kNotConverged,
           "coefficient " + plan.entries[e].coefficient +
               " degenerates along the path; the plan is wrong");
    }
  }

  const size_t take = std::min<size_t>(3, schedule.size());
  const std::vector<double> ts(schedule.end() - take, schedule.end());
  out.limit.resize(ps.unknown_count);
  for (int i = 0; i < ps.unknown_count; ++i) {
    std::vector<Complex> xs;
    for (size_t s = schedule.size() - take; s < schedule.size(); ++s) {
      xs.push_back(out.path[s][i]);
    }
    out.limit[i] = Extrapolate(ts, xs);
    out.drift = std::max(out.drift, std::abs(out.limit[i] - out.path.back()[i]));
  }

  out.limit_shapes.resize(sys.n);
  out.degenerate.assign(sys.n, false);
  for (int k = 0; k < sys.n; ++k) {
    if (ps.plan_index[k] < 0) {
      out.limit_shapes[k] = out.limit[ps.unknown_of[k]];
    } else {
      out.degenerate[k] = true;
      out.limit_shapes[k] =
          plan.entries[ps.plan_index[k]].kind == DegenerateKind::kZero ? 0.0 : 1.0;
    }
  }
  const auto v = PlanValuations(sys, plan);
  out.v_meridian = v[0];
  out.v_longitude = v[1];
  Require(v[0] != 0, "plan gives zero meridian valuation");
  out.slope = Slope(-v[1], v[0]);
  return out;
}

namespace {

// Bernoulli numbers B_0..B_{n-1} (B_1 = -1/2).
std::vector<double> Bernoulli(int n) {
  std::vector<double> b(n, 0.0);
  b[0] = 1.0;
  for (int m = 1; m < n; ++m) {
    double sum = 0.0;
    double binom = 1.0;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      sum += binom * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -sum / (m + 1);
  }
  return b;
}

// Li2(w) for |w| <= 1 and Re w <= 1/2, via the Bernoulli series in
// u = -log(1 - w).
Complex Li2Reduced(Complex w) {
  static const std::vector<double> kB = Bernoulli(40);
  const Complex u = -std::log(1.0 - w);
  Complex sum = 0.0;
  Complex power = u;
  double factorial = 1.0;
  for (int n = 0; n < 40; ++n) {
    factorial *= (n + 1);
    if (n == 1 || n % 2 == 0) sum += kB[n] * power / factorial;
    power *= u;
  }
  return sum;
}

}  // namespace

double BlochWigner(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z) < 1e-300 || std::abs(1.0 - z) < 1e-300) {
    Fail(ErrorCode::kInvalidArgument, "Bloch-Wigner function is singular at this shape");
  }
  if (z.imag() == 0.0) return 0.0;
  // D is invariant under the order-3 symmetries and odd under inversion.
  const std::array<std::pair<Complex, double>, 6> images = {{
      {z, 1.0},
      {1.0 - 1.0 / z, 1.0},
      {1.0 / (1.0 - z), 1.0},
      {1.0 / z, -1.0},
      {1.0 - z, -1.0},
      {z / (z - 1.0), -1.0},
  }};
  for (const auto& [w, sign] : images) {
    if (std::abs(w) <= 1.0 && w.real() <= 0.5) {
      const double d = Li2Reduced(w).imag() + std::arg(1.0 - w) * std::log(std::abs(w));
      return sign * d;
    }
  }
  Fail(ErrorCode::kInternal, "no reduced image for Bloch-Wigner evaluation");
}

double BlochWignerVolume(const std::vector<Complex>& shapes,
                         const std::vector<bool>& degenerate) {
  Require(degenerate.empty() || degenerate.size() == shapes.size(),
          "degenerate flags must match the shape count");
  double total = 0.0;
  for (size_t k = 0; k < shapes.size(); ++k) {
    if (!degenerate.empty() && degenerate[k]) continue;
    total += BlochWigner(shapes[k]);
  }
  return total;
}

}  // namespace pretzel
