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

#include "pretzel_surgeon.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <memory>
#include <new>
#include <string>

#include "pretzel/cache.hpp"
#include "pretzel/error.hpp"
#include "pretzel/io.hpp"
#include "pretzel/pipeline.hpp"

struct ps_context {
  pretzel::Config config;
};

struct ps_ledger {
  pretzel::Ledger ledger;
};

namespace {

using pretzel::ErrorCode;
using pretzel::Json;

thread_local std::string g_last_error;

ps_status StatusFor(ErrorCode code) { return static_cast<ps_status>(code); }

template <typename F>
ps_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PS_OK;
  } catch (const pretzel::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PS_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_INTERNAL;
  }
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Emit(const Json& j, char** out) {
  pretzel::Require(out != nullptr, "output pointer is NULL");
  *out = Duplicate(j.dump(2) + "\n");
}

void RequireContext(const ps_context* ctx) {
  pretzel::Require(ctx != nullptr, "context is NULL");
}

std::string DataFile(const ps_context* ctx, const char* name) {
  return (std::filesystem::path(ctx->config.data_dir) / name).string();
}

pretzel::ClassifyOptions OptionsFor(const ps_context* ctx, bool allow_asserted) {
  pretzel::ClassifyOptions options;
  options.allow_asserted = allow_asserted;
  options.quotient_search = {ctx->config.search_max_len,
                             ctx->config.quotient_max_steps};
  options.derivation_search = {ctx->config.search_max_len,
                               ctx->config.search_max_steps};
  return options;
}

// The norm model a knot's verdicts are computed in.
pretzel::NormModel ModelFor(const pretzel::KnotSpec& knot) {
  if (knot.p() == 5 && knot.q() >= 11) return pretzel::FivePretzelModel(knot.q());
  if (knot.p() != 5) {
    pretzel::Fail(ErrorCode::kPartialData,
                  "boundary slopes of " + knot.ToString() + " are not fully known");
  }
  std::vector<pretzel::Detection> detections;
  for (const auto& e : pretzel::DetectionEvidence(knot)) {
    detections.push_back({e.slope, e.ideal_points});
  }
  return pretzel::AssembleConstraints(pretzel::BoundarySlopes(knot), detections);
}

pretzel::GluingSystem LoadSystem(const ps_context* ctx, const char* path,
                                 std::string* bytes) {
  const std::string file =
      path != nullptr ? std::string(path) : DataFile(ctx, "pretzel_255.json");
  *bytes = pretzel::ReadTextFile(file);
  return pretzel::GluingSystemFromJson(pretzel::ParseJson(*bytes));
}

// Bump whenever cached payloads change for the same input.
constexpr char kResultFormat[] = "2";

// Runs `compute` unless the cache already holds the answer.
std::string Cached(const ps_context* ctx, const std::string& command,
                   const std::string& input, const std::string& options,
                   int* cache_hit, const std::function<std::string()>& compute) {
  pretzel::ResultCache cache(ctx->config.cache_dir);
  const std::string key = pretzel::ResultCache::Key(
      command + "/" + ps_version() + "/" + kResultFormat, input, options);
  if (auto hit = cache.Get(key)) {
    if (cache_hit) *cache_hit = 1;
    return *hit;
  }
  if (cache_hit) *cache_hit = 0;
  std::string payload = compute();
  cache.Put(key, payload);
  return payload;
}

std::vector<pretzel::Complex> ParseShapes(const std::string& text) {
  std::vector<pretzel::Complex> shapes;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = std::min(text.find(';', start), text.size());
    const std::string item = text.substr(start, end - start);
    if (!item.empty()) {
      const size_t comma = item.find(',');
      try {
        auto number = [](const std::string& t) {
          size_t used = 0;
          const double x = std::stod(t, &used);
          if (used != t.size()) throw std::invalid_argument(t);
          return x;
        };
        const double re = number(item.substr(0, comma));
        const double im = comma == std::string::npos ? 0.0 : number(item.substr(comma + 1));
        shapes.emplace_back(re, im);
      } catch (const std::exception&) {
        pretzel::Fail(ErrorCode::kParse, "cannot read shape '" + item + "'");
      }
    }
    start = end + 1;
  }
  pretzel::Require(!shapes.empty(), "no shapes given");
  return shapes;
}

}  // namespace

extern "C" {

const char* ps_last_error(void) { return g_last_error.c_str(); }

const char* ps_status_name(ps_status status) {
  switch (status) {
    case PS_OK: return "ok";
    case PS_INVALID_ARGUMENT: return "invalid_argument";
    case PS_INFEASIBLE: return "infeasible";
    case PS_NOT_CONVERGED: return "not_converged";
    case PS_IO: return "io";
    case PS_PARSE: return "parse";
    case PS_PARTIAL_DATA: return "partial_data";
    case PS_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ps_version(void) { return "1.0.0"; }

void ps_string_free(char* s) { std::free(s); }

ps_status ps_context_create(const char* config_path, ps_context** out) {
  return Guard([&] {
    pretzel::Require(out != nullptr, "output pointer is NULL");
    auto ctx = std::make_unique<ps_context>();
    ctx->config = config_path != nullptr ? pretzel::LoadConfig(config_path)
                                         : pretzel::DefaultConfig();
    *out = ctx.release();
  });
}

void ps_context_free(ps_context* ctx) { delete ctx; }

ps_status ps_context_set_cache_dir(ps_context* ctx, const char* dir) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(dir != nullptr && *dir, "cache directory is empty");
    ctx->config.cache_dir = dir;
  });
}

ps_status ps_context_set_data_dir(ps_context* ctx, const char* dir) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(dir != nullptr && *dir, "data directory is empty");
    ctx->config.data_dir = dir;
  });
}

ps_status ps_classify(ps_context* ctx, int p, int q, int allow_asserted,
                      ps_ledger** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(out != nullptr, "output pointer is NULL");
    auto ledger = std::make_unique<ps_ledger>(ps_ledger{
        pretzel::Classify(p, q, OptionsFor(ctx, allow_asserted != 0))});
    *out = ledger.release();
  });
}

void ps_ledger_free(ps_ledger* ledger) { delete ledger; }

ps_status ps_ledger_emit(const ps_ledger* ledger, const char* format, char** out) {
  return Guard([&] {
    pretzel::Require(ledger != nullptr, "ledger is NULL");
    pretzel::Require(format != nullptr, "format is NULL");
    pretzel::Require(out != nullptr, "output pointer is NULL");
    *out = Duplicate(pretzel::EmitLedger(ledger->ledger, format));
  });
}

int ps_ledger_conclusive(const ps_ledger* ledger) {
  return ledger != nullptr &&
         ledger->ledger.conclusion == pretzel::Conclusion::kNoNontrivialFinite;
}

int ps_ledger_count_status(const ps_ledger* ledger, const char* status) {
  if (ledger == nullptr || status == nullptr) return -1;
  bool known = false;
  for (auto s : {pretzel::VerdictStatus::kExcluded, pretzel::VerdictStatus::kNotExcluded,
                 pretzel::VerdictStatus::kExcludedByGroupTheory,
                 pretzel::VerdictStatus::kBoundarySlope, pretzel::VerdictStatus::kPaperAsserted}) {
    known = known || std::strcmp(pretzel::VerdictStatusName(s), status) == 0;
  }
  if (!known) return -1;
  int count = 0;
  for (const auto& e : ledger->ledger.entries) {
    count += std::strcmp(pretzel::VerdictStatusName(e.status), status) == 0;
  }
  return count;
}

ps_status ps_boundary_slopes(ps_context* ctx, int p, int q, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    Emit(pretzel::ToJson(pretzel::BoundarySlopes(pretzel::KnotSpec(p, q))), out);
  });
}

ps_status ps_candidates(ps_context* ctx, int p, int q, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    const pretzel::KnotSpec knot(p, q);
    if (p == 5 && q <= 9) {
      int detected = 0;
      for (const auto& e : pretzel::DetectionEvidence(knot)) {
        detected += e.slope.numerator() != 0 && e.ideal_points > 0;
      }
      Emit(pretzel::ToJson(pretzel::CandidateFiniteSlopes(
               knot, pretzel::BoundarySlopes(knot), detected)),
           out);
    } else {
      Emit(pretzel::ToJson(pretzel::ExceptionalCandidatesSixTheorem(knot)), out);
    }
  });
}

ps_status ps_norm_min(ps_context* ctx, int p, int q, const char* slope, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(slope != nullptr, "slope is NULL");
    const pretzel::NormModel model = ModelFor(pretzel::KnotSpec(p, q));
    const pretzel::Slope s = pretzel::Slope::Parse(slope);
    const pretzel::MinNormResult best = pretzel::MinNormOverFeasible(model, s);
    Json j;
    j["knot"] = {p, q};
    j["S"] = pretzel::MinimalNorm(model.knot);
    j["slope"] = pretzel::ToJson(s);
    j["model"] = pretzel::ToJson(model);
    j["min_norm"] = pretzel::ToJson(best);
    j["verdict"] = pretzel::ToJson(pretzel::FiniteSlopeVerdict(model, s, best.value));
    Emit(j, out);
  });
}

ps_status ps_verdicts(ps_context* ctx, int p, int q, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    const pretzel::KnotSpec knot(p, q);
    Json j;
    j["knot"] = {p, q};
    j["S"] = pretzel::MinimalNorm(knot);
    if (p == 5 && q >= 11) {
      j["exclusion"] = pretzel::ToJson(pretzel::ShiftExclusion(q));
      Emit(j, out);
      return;
    }
    const pretzel::Ledger ledger = pretzel::Classify(p, q, OptionsFor(ctx, false));
    const pretzel::NormModel model = ModelFor(knot);
    Json verdicts = Json::array();
    for (const auto& e : ledger.entries) {
      const pretzel::MinNormResult best = pretzel::MinNormOverFeasible(model, e.slope);
      Json v = pretzel::ToJson(pretzel::FiniteSlopeVerdict(model, e.slope, best.value));
      v["witness"] = best.witness;
      verdicts.push_back(v);
    }
    j["verdicts"] = verdicts;
    Emit(j, out);
  });
}

ps_status ps_norm_shift(ps_context* ctx, int q, const char* coefficients,
                        char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(coefficients != nullptr, "coefficients are NULL");
    std::vector<int64_t> a;
    std::string text = coefficients;
    size_t start = 0;
    while (start < text.size()) {
      const size_t end = std::min(text.find(',', start), text.size());
      try {
        a.push_back(std::stoll(text.substr(start, end - start)));
      } catch (const std::exception&) {
        pretzel::Fail(ErrorCode::kParse, "cannot read coefficient list '" + text + "'");
      }
      start = end + 1;
    }
    Emit(pretzel::ToJson(pretzel::NormShiftIdentity(q, a)), out);
  });
}

ps_status ps_short_slopes(ps_context* ctx, const char* lattice, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    const Json lattices = pretzel::ReadJsonFile(DataFile(ctx, "lattices.json"));
    Json result = Json::array();
    bool matched = false;
    for (const auto& entry : lattices) {
      const pretzel::CuspLattice l = pretzel::LatticeFromJson(entry);
      if (lattice != nullptr && l.name != lattice) continue;
      matched = true;
      Json slopes = Json::array();
      for (const auto& [m, n] : pretzel::ShortSlopes(l)) {
        slopes.push_back({{"m", m},
                          {"n", n},
                          {"length_squared",
                           pretzel::SlopeLengthSquared(l, m, n).ToString()},
                          {"length", pretzel::SlopeLength(l, m, n)},
                          {"slope", pretzel::ToJson(
                                        pretzel::LatticeSlope(l.second_label, m, n))}});
      }
      result.push_back({{"lattice", l.name}, {"bound", 6}, {"short_slopes", slopes}});
    }
    pretzel::Require(matched, std::string("no bundled lattice named '") +
                                  (lattice ? lattice : "") + "'");
    Emit(result, out);
  });
}

ps_status ps_ideal_scan(ps_context* ctx, const char* path, char** out, int* cache_hit) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(out != nullptr, "output pointer is NULL");
    std::string bytes;
    const pretzel::GluingSystem sys = LoadSystem(ctx, path, &bytes);
    *out = Duplicate(Cached(ctx, "ideal-scan", bytes, "v1", cache_hit, [&] {
      Json records = Json::array();
      for (const auto& r : pretzel::ScanDegenerations(sys)) {
        records.push_back(pretzel::ToJson(r));
      }
      Json j;
      j["input_sha256"] = pretzel::Sha256Hex(bytes);
      j["tetrahedra"] = sys.n;
      j["count"] = records.size();
      j["records"] = records;
      return j.dump(2) + "\n";
    }));
  });
}

ps_status ps_continue(ps_context* ctx, const char* path, const char* plan,
                      int branch, char** out, int* cache_hit) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(plan != nullptr, "plan is NULL");
    pretzel::Require(out != nullptr, "output pointer is NULL");
    std::string bytes;
    const pretzel::GluingSystem sys = LoadSystem(ctx, path, &bytes);
    std::optional<pretzel::SubstitutionPlan> chosen;
    for (const auto& entry : pretzel::ReadJsonFile(DataFile(ctx, "plans.json"))) {
      pretzel::SubstitutionPlan candidate = pretzel::PlanFromJson(entry);
      if (candidate.name == plan) chosen = std::move(candidate);
    }
    if (!chosen) {
      pretzel::Fail(ErrorCode::kInvalidArgument,
                    std::string("unknown substitution plan '") + plan + "'");
    }
    const int branches = static_cast<int>(chosen->branch_guesses.size());
    pretzel::Require(branch < branches, "plan '" + chosen->name + "' has " +
                                            std::to_string(branches) + " branch(es)");
    const std::string options =
        pretzel::ToJson(*chosen).dump() + "|" + std::to_string(branch);
    *out = Duplicate(Cached(ctx, "continue", bytes, options, cache_hit, [&] {
      Json results = Json::array();
      for (int b = 0; b < branches; ++b) {
        if (branch >= 0 && b != branch) continue;
        const pretzel::ContinuationResult r =
            pretzel::ContinueToIdealPoint(sys, *chosen, b);
        Json jr = pretzel::ToJson(r);
        jr["volume"] = pretzel::BlochWignerVolume(r.limit_shapes, r.degenerate);
        results.push_back(jr);
      }
      Json j;
      j["plan"] = chosen->name;
      j["branches"] = results;
      return j.dump(2) + "\n";
    }));
  });
}

ps_status ps_volume(ps_context* ctx, const char* shapes, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(shapes != nullptr, "shapes are NULL");
    const std::vector<pretzel::Complex> z = ParseShapes(shapes);
    std::vector<bool> degenerate;
    Json terms = Json::array();
    for (const auto& w : z) {
      degenerate.push_back(w == pretzel::Complex(0.0) || w == pretzel::Complex(1.0));
      terms.push_back(degenerate.back() ? 0.0 : pretzel::BlochWigner(w));
    }
    Json j;
    j["shapes"] = z.size();
    j["terms"] = terms;
    j["volume"] = pretzel::BlochWignerVolume(z, degenerate);
    Emit(j, out);
  });
}

ps_status ps_ohtsuki_roots(ps_context* ctx, double tol, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    const pretzel::IntegerPolynomial poly = pretzel::PolynomialFromJson(
        pretzel::ReadJsonFile(DataFile(ctx, "ohtsuki.json")));
    const pretzel::RootSet roots = pretzel::Roots(poly, ctx->config.root_tolerance);
    std::vector<pretzel::Complex> ratios;
    Json jr = Json::array();
    for (size_t i = 0; i < roots.roots.size(); ++i) {
      ratios.push_back(pretzel::CrossRatioValue(roots.roots[i]));
      jr.push_back({{"root", pretzel::ToJson(roots.roots[i])},
                    {"residual", roots.residuals[i]},
                    {"cross_ratio", pretzel::ToJson(ratios.back())}});
    }
    const pretzel::ClusterReport clusters =
        pretzel::CountDistinct(ratios, tol > 0 ? tol : 1e-6);
    Json reps = Json::array();
    for (const auto& r : clusters.representatives) reps.push_back(pretzel::ToJson(r));
    Json j;
    j["degree"] = poly.degree();
    j["max_residual"] = roots.max_residual;
    j["roots"] = jr;
    j["distinct_cross_ratios"] = clusters.count;
    j["cluster_sizes"] = clusters.sizes;
    j["representatives"] = reps;
    j["min_gap"] = clusters.min_gap;
    Emit(j, out);
  });
}

ps_status ps_group_ab(ps_context* ctx, int p, int q, const char* slope, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(slope != nullptr, "slope is NULL");
    const pretzel::Slope s = pretzel::Slope::Parse(slope);
    const pretzel::Presentation pres = pretzel::SurgeredPresentation(p, q, s);
    Json j;
    j["knot"] = {p, q};
    j["slope"] = pretzel::ToJson(s);
    j["presentation"] = pretzel::ToJson(pres);
    j["abelianization"] = pretzel::ToJson(pretzel::Abelianization(pres));
    Emit(j, out);
  });
}

ps_status ps_group_derive(ps_context* ctx, const char* preset, int p, int q,
                          char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(preset != nullptr, "preset is NULL");
    const std::string name = preset;
    const pretzel::SearchOptions options{ctx->config.search_max_len,
                                         ctx->config.search_max_steps};
    const pretzel::Presentation pres = pretzel::CoxeterC5Precursor(p, q);
    Json j;
    j["preset"] = name;
    j["p"] = p;
    j["q"] = q;
    j["presentation"] = pretzel::ToJson(pres);
    std::optional<pretzel::DerivationCertificate> cert;
    if (name.rfind("redundant:", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(name.substr(10));
      } catch (const std::exception&) {
        pretzel::Fail(ErrorCode::kParse, "expected redundant:<k>");
      }
      const pretzel::RedundancyReport r = pretzel::RedundantRelatorCheck(p, q, k, options);
      j["k"] = k;
      j["applies"] = r.applies;
      j["method"] = r.method;
      cert = r.certificate;
    } else {
      pretzel::Word w;
      if (name == "c5") {
        w = pretzel::ParseWord("C^5", pres.generators);
      } else if (name == "abc2") {
        w = pretzel::ParseWord("(ABC)^2", pres.generators);
      } else {
        pretzel::Fail(ErrorCode::kInvalidArgument,
                      "unknown derivation preset '" + name + "' (c5, abc2, redundant:<k>)");
      }
      const pretzel::SearchResult r = pretzel::DerivationSearch(pres, w, options);
      j["word"] = pres.Format(w);
      j["expansions"] = r.expansions;
      j["visited"] = r.visited;
      cert = r.certificate;
    }
    j["found"] = cert.has_value();
    if (cert) {
      j["replays"] = pretzel::ReplayCertificate(pres, *cert);
      j["certificate"] = pretzel::ToJson(*cert, pres);
    }
    Emit(j, out);
  });
}

ps_status ps_group_quotient(ps_context* ctx, const char* preset, int p, int q,
                            long max_steps, char** out) {
  return Guard([&] {
    RequireContext(ctx);
    pretzel::Require(preset != nullptr, "preset is NULL");
    const pretzel::QuotientPreset built = pretzel::MakeQuotientPreset(preset, p, q);
    const std::vector<pretzel::Word> images = pretzel::PresetImagesFromJson(
        pretzel::ReadJsonFile(DataFile(ctx, "substitutions.json")), preset, p, q,
        built.target);
    const pretzel::SearchOptions options{
        ctx->config.search_max_len,
        max_steps < 0 ? ctx->config.quotient_max_steps : static_cast<size_t>(max_steps)};
    const pretzel::QuotientReport report =
        pretzel::QuotientConsistency(built.source, built.target, images, options);
    Json j;
    j["preset"] = built.name;
    j["description"] = built.description;
    j["source"] = pretzel::ToJson(built.source);
    j["target"] = pretzel::ToJson(built.target);
    j["report"] = pretzel::ToJson(report, built.target);
    Emit(j, out);
  });
}

}  // extern "C"
