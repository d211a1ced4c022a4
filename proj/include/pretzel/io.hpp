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

#ifndef PRETZEL_IO_HPP_
#define PRETZEL_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "pretzel/cusp_geometry.hpp"
#include "pretzel/group_theory.hpp"
#include "pretzel/ideal_points.hpp"
#include "pretzel/norm_engine.hpp"
#include "pretzel/ohtsuki.hpp"

namespace pretzel {

using Json = nlohmann::ordered_json;

std::string ReadTextFile(const std::string& path);
// Parses a file; syntax errors become kParse, missing files kIo.
Json ReadJsonFile(const std::string& path);
Json ParseJson(const std::string& text);

Json ToJson(const Slope& s);
Slope SlopeFromJson(const Json& j);
Json ToJson(const Complex& z);
Complex ComplexFromJson(const Json& j);

// {"n", "equations", "meridian", "longitude"}; rows are n triples.
Json ToJson(const GluingSystem& sys);
GluingSystem GluingSystemFromJson(const Json& j);

// {"knot": [p, q], "slopes": [[num, den], ...], "complete": bool}.
Json ToJson(const BoundarySlopeTable& table);
BoundarySlopeTable BoundaryTableFromJson(const Json& j);

// {"name", "scale_squared", "meridian": [re, im], "second", "second_label"}
// with re = a and im = b for a + b*sqrt(3)*i; each a [num, den] pair.
Json ToJson(const CuspLattice& lattice);
CuspLattice LatticeFromJson(const Json& j);

Json ToJson(const SubstitutionPlan& plan);
SubstitutionPlan PlanFromJson(const Json& j);

Json ToJson(const IntegerPolynomial& poly);
IntegerPolynomial PolynomialFromJson(const Json& j);

Json ToJson(const IdealPointRecord& record);
Json ToJson(const ContinuationResult& result);
Json ToJson(const CandidateSet& set);
Json ToJson(const NormModel& model);
Json ToJson(const MinNormResult& result);
Json ToJson(const Verdict& verdict);
Json ToJson(const NormShiftReport& report);
Json ToJson(const ShiftExclusionReport& report);
Json ToJson(const Presentation& pres);
Json ToJson(const DerivationCertificate& cert, const Presentation& pres);
Json ToJson(const AbelianInvariants& invariants);
Json ToJson(const QuotientReport& report, const Presentation& target);

// Image templates of the bundled substitution scripts, keyed by preset name:
// {"presets": [{"name", "images": [...], "description"}]}.
std::vector<Word> PresetImagesFromJson(const Json& presets,
                                       const std::string& name, int p, int q,
                                       const Presentation& target);

}  // namespace pretzel

#endif  // PRETZEL_IO_HPP_
