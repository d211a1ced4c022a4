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

#include "pretzel/io.hpp"

#include <fstream>
#include <sstream>

#include "pretzel/error.hpp"

namespace pretzel {

namespace {

Json RationalPair(const Rational& r) { return {r.numerator(), r.denominator()}; }

Rational RationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  Require(j.is_array() && j.size() == 2, "expected a [num, den] pair");
  return Rational(j[0].get<int64_t>(), j[1].get<int64_t>());
}

Json PointJson(const LatticePoint& z) {
  return {RationalPair(z.re), RationalPair(z.im_sqrt3)};
}

LatticePoint PointFromJson(const Json& j) {
  Require(j.is_array() && j.size() == 2, "expected [re, im] for a lattice point");
  return {RationalFromJson(j[0]), RationalFromJson(j[1])};
}

Json RowJson(const ExponentRow& row) {
  Json out = Json::array();
  for (const auto& e : row) out.push_back({e[0], e[1], e[2]});
  return out;
}

ExponentRow RowFromJson(const Json& j, int n) {
  Require(j.is_array() && static_cast<int>(j.size()) == n,
          "every row needs one [e, e', e''] triple per tetrahedron");
  ExponentRow row;
  for (const auto& t : j) {
    Require(t.is_array() && t.size() == 3, "exponent triples have 3 entries");
    row.push_back({t[0].get<int64_t>(), t[1].get<int64_t>(), t[2].get<int64_t>()});
  }
  return row;
}

Json ComplexList(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(ToJson(z));
  return out;
}

Json WordJson(const Word& w, const Presentation& pres) { return pres.Format(w); }

// Wraps nlohmann type errors so callers see one error vocabulary.
template <typename F>
auto Guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) { return ParseJson(ReadTextFile(path)); }

Json ToJson(const Slope& s) { return s.ToString(); }

Slope SlopeFromJson(const Json& j) {
  return Guarded("slope", [&] {
    if (j.is_string()) return Slope::Parse(j.get<std::string>());
    if (j.is_number_integer()) return Slope(j.get<int64_t>());
    if (!j.is_array() || j.size() != 2) Fail(ErrorCode::kParse, "expected a slope");
    return Slope(j[0].get<int64_t>(), j[1].get<int64_t>());
  });
}

Json ToJson(const Complex& z) { return {z.real(), z.imag()}; }

Complex ComplexFromJson(const Json& j) {
  return Guarded("complex number", [&] {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) Fail(ErrorCode::kParse, "expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
  });
}

Json ToJson(const GluingSystem& sys) {
  Json eqs = Json::array();
  for (const auto& row : sys.equations) eqs.push_back(RowJson(row));
  return {{"n", sys.n},
          {"equations", eqs},
          {"meridian", RowJson(sys.meridian)},
          {"longitude", RowJson(sys.longitude)}};
}

GluingSystem GluingSystemFromJson(const Json& j) {
  return Guarded("gluing system", [&] {
    GluingSystem sys;
    sys.n = j.at("n").get<int>();
    Require(sys.n > 1, "a gluing system needs at least two tetrahedra");
    const Json& eqs = j.at("equations");
    Require(eqs.is_array() && static_cast<int>(eqs.size()) == sys.n,
            "expected n edge equations");
    for (const auto& row : eqs) sys.equations.push_back(RowFromJson(row, sys.n));
    sys.meridian = RowFromJson(j.at("meridian"), sys.n);
    sys.longitude = RowFromJson(j.at("longitude"), sys.n);
    sys.Validate();
    return sys;
  });
}

Json ToJson(const BoundarySlopeTable& table) {
  Json slopes = Json::array();
  for (const auto& s : table.slopes) slopes.push_back({s.numerator(), s.denominator()});
  return {{"knot", {table.knot.p(), table.knot.q()}},
          {"slopes", slopes},
          {"complete", table.complete}};
}

BoundarySlopeTable BoundaryTableFromJson(const Json& j) {
  return Guarded("boundary-slope table", [&] {
    const Json& knot = j.at("knot");
    Require(knot.is_array() && knot.size() == 2, "knot must be [p, q]");
    BoundarySlopeTable table{KnotSpec(knot[0].get<int>(), knot[1].get<int>()),
                             {}, j.at("complete").get<bool>()};
    for (const auto& s : j.at("slopes")) table.slopes.push_back(SlopeFromJson(s));
    return table;
  });
}

Json ToJson(const CuspLattice& lattice) {
  return {{"name", lattice.name},
          {"scale_squared", RationalPair(lattice.scale_squared)},
          {"meridian", PointJson(lattice.meridian)},
          {"second", PointJson(lattice.second)},
          {"second_label",
           {lattice.second_label.numerator(), lattice.second_label.denominator()}}};
}

CuspLattice LatticeFromJson(const Json& j) {
  return Guarded("lattice", [&] {
    CuspLattice l;
    l.name = j.at("name").get<std::string>();
    l.scale_squared = j.contains("scale_squared")
                          ? RationalFromJson(j.at("scale_squared"))
                          : Rational(1);
    l.meridian = PointFromJson(j.at("meridian"));
    l.second = PointFromJson(j.at("second"));
    l.second_label = SlopeFromJson(j.at("second_label"));
    l.Validate();
    return l;
  });
}

Json ToJson(const SubstitutionPlan& plan) {
  Json entries = Json::array();
  for (const auto& e : plan.entries) {
    entries.push_back({{"tetrahedron", e.tetrahedron},
                       {"kind", e.kind == DegenerateKind::kZero ? "zero" : "one"},
                       {"order", e.order},
                       {"coefficient", e.coefficient}});
  }
  Json guesses = Json::array();
  for (const auto& g : plan.branch_guesses) guesses.push_back(ComplexList(g));
  return {{"name", plan.name}, {"entries", entries}, {"branch_guesses", guesses}};
}

SubstitutionPlan PlanFromJson(const Json& j) {
  return Guarded("substitution plan", [&] {
    SubstitutionPlan plan;
    plan.name = j.at("name").get<std::string>();
    for (const auto& e : j.at("entries")) {
      const std::string kind = e.at("kind").get<std::string>();
      Require(kind == "zero" || kind == "one", "plan kind must be zero or one");
      plan.entries.push_back({e.at("tetrahedron").get<int>(),
                              kind == "zero" ? DegenerateKind::kZero
                                             : DegenerateKind::kOne,
                              e.at("order").get<int>(),
                              e.at("coefficient").get<std::string>()});
    }
    for (const auto& g : j.at("branch_guesses")) {
      std::vector<Complex> guess;
      for (const auto& z : g) guess.push_back(ComplexFromJson(z));
      plan.branch_guesses.push_back(std::move(guess));
    }
    return plan;
  });
}

Json ToJson(const IntegerPolynomial& poly) {
  return {{"degree", poly.degree()}, {"coefficients", poly.coefficients()}};
}

IntegerPolynomial PolynomialFromJson(const Json& j) {
  return Guarded("polynomial", [&] {
    if (j.contains("factors")) {
      IntegerPolynomial product({1});
      for (const auto& f : j.at("factors")) {
        product = product * IntegerPolynomial(f.get<std::vector<int64_t>>());
      }
      return product;
    }
    return IntegerPolynomial(j.at("coefficients").get<std::vector<int64_t>>());
  });
}

Json ToJson(const IdealPointRecord& record) {
  return {{"type", DegenerationString(record.type)},
          {"d", record.d},
          {"raw_sign", record.raw_sign},
          {"v_meridian", record.v_meridian},
          {"v_longitude", record.v_longitude},
          {"slope", ToJson(record.slope)}};
}

Json ToJson(const ContinuationResult& r) {
  Json path = Json::array();
  for (size_t i = 0; i < r.path.size(); ++i) {
    path.push_back({{"t", r.t_schedule[i]}, {"values", ComplexList(r.path[i])}});
  }
  return {{"plan", r.plan},
          {"branch", r.branch},
          {"unknowns", r.unknowns},
          {"path", path},
          {"limit", ComplexList(r.limit)},
          {"drift", r.drift},
          {"final_residual", r.final_residual},
          {"limit_shapes", ComplexList(r.limit_shapes)},
          {"degenerate", r.degenerate},
          {"v_meridian", r.v_meridian},
          {"v_longitude", r.v_longitude},
          {"slope", ToJson(r.slope)}};
}

Json ToJson(const CandidateSet& set) {
  Json entries = Json::array();
  for (const auto& e : set.entries) {
    entries.push_back({{"slope", ToJson(e.slope)}, {"filters", e.filters}});
  }
  return {{"knot", {set.knot.p(), set.knot.q()}},
          {"method", set.method},
          {"entries", entries}};
}

Json ToJson(const NormModel& model) {
  Json slopes = Json::array();
  for (const auto& s : model.boundary) slopes.push_back(ToJson(s));
  std::vector<int> parity(model.parity_even.begin(), model.parity_even.end());
  return {{"knot", {model.knot.p(), model.knot.q()}},
          {"boundary", slopes},
          {"lower", model.lower},
          {"parity_even", parity},
          {"weight", model.weight},
          {"total", model.total}};
}

Json ToJson(const MinNormResult& result) {
  return {{"value", result.value}, {"witness", result.witness}, {"nodes", result.nodes}};
}

Json ToJson(const Verdict& v) {
  return {{"slope", ToJson(v.slope)},
          {"min_norm", v.min_norm},
          {"bound_kind", v.bound_kind == BoundKind::kTwoS ? "2S" : "S+8"},
          {"bound", v.bound_used},
          {"status", VerdictStatusName(v.status)}};
}

namespace {

Json IdentityJson(const ShiftIdentity& id) {
  return {{"label", id.label}, {"lhs", id.lhs}, {"rhs", id.rhs}, {"holds", id.holds()}};
}

Json BranchJson(const ShiftExclusionBranch& b) {
  return {{"slope", ToJson(b.slope)},
          {"zero_case_norm", b.zero_case_norm},
          {"quoted_bound", b.quoted_bound},
          {"quoted_bound_valid", b.quoted_bound_valid},
          {"valid_bound", b.valid_bound},
          {"exact_min", b.exact_min},
          {"witness", b.witness},
          {"verdict", ToJson(b.verdict)}};
}

}  // namespace

Json ToJson(const NormShiftReport& r) {
  return {{"q", r.q},
          {"S", r.s_norm},
          {"first", IdentityJson(r.first)},
          {"second_quoted", IdentityJson(r.second_quoted)},
          {"second", IdentityJson(r.second)}};
}

Json ToJson(const ShiftExclusionReport& r) {
  return {{"q", r.q},
          {"S", r.s_norm},
          {"2q+11", BranchJson(r.slope_2q11)},
          {"2q+13", BranchJson(r.slope_2q13)}};
}

Json ToJson(const Presentation& pres) {
  Json rels = Json::array();
  for (const auto& r : pres.relators) rels.push_back(WordJson(r, pres));
  return {{"generators", pres.generators}, {"relators", rels}};
}

Json ToJson(const DerivationCertificate& cert, const Presentation& pres) {
  Json steps = Json::array();
  for (const auto& s : cert.steps) {
    steps.push_back({{"position", s.position},
                     {"relator", s.relator},
                     {"shift", s.shift},
                     {"inverted", s.inverted}});
  }
  return {{"start", WordJson(cert.start, pres)}, {"steps", steps}};
}

Json ToJson(const AbelianInvariants& inv) {
  return {{"free_rank", inv.free_rank},
          {"torsion", inv.torsion},
          {"group", inv.ToString()}};
}

Json ToJson(const QuotientReport& report, const Presentation& target) {
  Json rels = Json::array();
  for (const auto& c : report.relators) {
    Json jc = {{"image", WordJson(c.image, target)},
               {"abelian_ok", c.abelian_ok},
               {"status", RelatorStatusName(c.status)}};
    if (c.certificate) jc["certificate_steps"] = c.certificate->steps.size();
    rels.push_back(jc);
  }
  return {{"relators", rels},
          {"abelian_ok", report.abelian_ok},
          {"all_proved", report.all_proved}};
}

std::vector<Word> PresetImagesFromJson(const Json& presets, const std::string& name,
                                       int p, int q, const Presentation& target) {
  return Guarded("substitution scripts", [&] {
    for (const auto& entry : presets.at("presets")) {
      if (entry.at("name").get<std::string>() != name) continue;
      std::vector<Word> images;
      for (const auto& text : entry.at("images")) {
        images.push_back(ParseWord(text.get<std::string>(), target.generators,
                                   {{"p", p}, {"q", q}}));
      }
      return images;
    }
    Fail(ErrorCode::kInvalidArgument, "no substitution script named '" + name + "'");
  });
}

}  // namespace pretzel
