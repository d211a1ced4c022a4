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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pretzel_surgeon.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Owns a context for one test case.
struct Ctx {
  ps_context* ctx = nullptr;
  Ctx() {
    REQUIRE(ps_context_create(nullptr, &ctx) == PS_OK);
    REQUIRE(ctx != nullptr);
  }
  ~Ctx() { ps_context_free(ctx); }
};

// Takes ownership of a returned string and parses it.
json Take(char* text) {
  REQUIRE(text != nullptr);
  json j = json::parse(text);
  ps_string_free(text);
  return j;
}

std::string TakeText(char* text) {
  REQUIRE(text != nullptr);
  std::string s = text;
  ps_string_free(text);
  return s;
}

fs::path TmpDir(const std::string& name) {
  const fs::path dir = fs::path(PRETZEL_TEST_TMP_DIR) / "capi" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(ps_version()) == "1.0.0");
  CHECK(std::string(ps_status_name(PS_OK)) == "ok");
  CHECK(std::string(ps_status_name(PS_PARTIAL_DATA)) == "partial_data");
  CHECK(std::string(ps_status_name(PS_PARSE)) == "parse");
  CHECK(ps_last_error() != nullptr);
  ps_string_free(nullptr);
  ps_context_free(nullptr);
  ps_ledger_free(nullptr);
}

TEST_CASE("null handles are rejected") {
  char* out = nullptr;
  CHECK(ps_context_create(nullptr, nullptr) == PS_INVALID_ARGUMENT);
  CHECK(ps_classify(nullptr, 5, 7, 0, nullptr) == PS_INVALID_ARGUMENT);
  CHECK(ps_boundary_slopes(nullptr, 5, 7, &out) == PS_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::string(ps_last_error()).size() > 0);
  Ctx c;
  CHECK(ps_boundary_slopes(c.ctx, 5, 7, nullptr) == PS_INVALID_ARGUMENT);
  CHECK(ps_norm_min(c.ctx, 5, 7, nullptr, &out) == PS_INVALID_ARGUMENT);
  CHECK(ps_ledger_emit(nullptr, "json", &out) == PS_INVALID_ARGUMENT);
  CHECK(ps_ledger_conclusive(nullptr) == 0);
  CHECK(ps_ledger_count_status(nullptr, "excluded") == -1);
  CHECK(ps_context_set_cache_dir(c.ctx, nullptr) == PS_INVALID_ARGUMENT);
}

TEST_CASE("classification through the C API") {
  Ctx c;
  ps_ledger* ledger = nullptr;
  REQUIRE(ps_classify(c.ctx, 5, 9, 0, &ledger) == PS_OK);
  CHECK(ps_ledger_conclusive(ledger) == 1);
  CHECK(ps_ledger_count_status(ledger, "excluded") == 10);
  CHECK(ps_ledger_count_status(ledger, "excluded_by_group_theory") == 1);
  CHECK(ps_ledger_count_status(ledger, "bogus") == -1);
  char* out = nullptr;
  REQUIRE(ps_ledger_emit(ledger, "json", &out) == PS_OK);
  const json j = Take(out);
  CHECK(j["conclusion"] == "no_nontrivial_finite");
  CHECK(j["entries"].size() == 11);
  REQUIRE(ps_ledger_emit(ledger, "table", &out) == PS_OK);
  CHECK(TakeText(out).find("1/0") != std::string::npos);
  out = nullptr;
  CHECK(ps_ledger_emit(ledger, "yaml", &out) == PS_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  ps_ledger_free(ledger);

  REQUIRE(ps_classify(c.ctx, 7, 9, 0, &ledger) == PS_OK);
  CHECK(ps_ledger_conclusive(ledger) == 0);
  CHECK(ps_ledger_count_status(ledger, "paper_asserted") == 1);
  ps_ledger_free(ledger);
  REQUIRE(ps_classify(c.ctx, 7, 9, 1, &ledger) == PS_OK);
  CHECK(ps_ledger_conclusive(ledger) == 1);
  ps_ledger_free(ledger);

  ledger = nullptr;
  CHECK(ps_classify(c.ctx, 5, 6, 0, &ledger) == PS_INVALID_ARGUMENT);
  CHECK(ledger == nullptr);
  CHECK(std::string(ps_last_error()).find("odd") != std::string::npos);
}

TEST_CASE("norm endpoints") {
  Ctx c;
  char* out = nullptr;
  REQUIRE(ps_boundary_slopes(c.ctx, 5, 11, &out) == PS_OK);
  const json b = Take(out);
  CHECK(b.dump().find("105") != std::string::npos);

  REQUIRE(ps_candidates(c.ctx, 5, 9, &out) == PS_OK);
  CHECK(Take(out)["entries"].size() == 11);

  REQUIRE(ps_norm_min(c.ctx, 5, 7, "19", &out) == PS_OK);
  const json n = Take(out);
  CHECK(n["S"] == 34);
  CHECK(n.dump().find("126") != std::string::npos);

  CHECK(ps_norm_min(c.ctx, 5, 7, "x/y", &out) == PS_PARSE);
  CHECK(ps_norm_min(c.ctx, 7, 9, "33", &out) == PS_PARTIAL_DATA);

  REQUIRE(ps_verdicts(c.ctx, 5, 5, &out) == PS_OK);
  CHECK(Take(out).dump().find("excluded") != std::string::npos);

  CHECK(ps_norm_shift(c.ctx, 11, "1,1,1,1,1,1", &out) == PS_INVALID_ARGUMENT);
  CHECK(ps_norm_shift(c.ctx, 11, "1,1,1", &out) != PS_OK);
  CHECK(ps_norm_shift(c.ctx, 11, "a,b", &out) != PS_OK);
}

TEST_CASE("geometry and ideal point endpoints") {
  Ctx c;
  const fs::path dir = TmpDir("cache");
  REQUIRE(ps_context_set_cache_dir(c.ctx, dir.string().c_str()) == PS_OK);
  char* out = nullptr;

  REQUIRE(ps_short_slopes(c.ctx, nullptr, &out) == PS_OK);
  CHECK_FALSE(Take(out).empty());
  REQUIRE(ps_short_slopes(c.ctx, "knot", &out) == PS_OK);
  CHECK_FALSE(Take(out).empty());
  CHECK(ps_short_slopes(c.ctx, "no-such-lattice", &out) == PS_INVALID_ARGUMENT);

  int hit = -1;
  REQUIRE(ps_ideal_scan(c.ctx, nullptr, &out, &hit) == PS_OK);
  CHECK(hit == 0);
  const json scan = Take(out);
  CHECK(scan["count"] == 6);
  CHECK(scan["records"][0]["raw_sign"] == -1);
  REQUIRE(ps_ideal_scan(c.ctx, nullptr, &out, &hit) == PS_OK);
  CHECK(hit == 1);
  CHECK(Take(out) == scan);
  REQUIRE(ps_ideal_scan(c.ctx, nullptr, &out, nullptr) == PS_OK);
  ps_string_free(out);
  CHECK(ps_ideal_scan(c.ctx, "/nonexistent.json", &out, &hit) == PS_IO);

  REQUIRE(ps_continue(c.ctx, nullptr, "slope22", -1, &out, &hit) == PS_OK);
  CHECK(hit == 0);
  CHECK(Take(out).dump().find("22") != std::string::npos);
  REQUIRE(ps_continue(c.ctx, nullptr, "slope22", -1, &out, &hit) == PS_OK);
  CHECK(hit == 1);
  ps_string_free(out);
  CHECK(ps_continue(c.ctx, nullptr, "slope99", -1, &out, &hit) == PS_INVALID_ARGUMENT);
  CHECK(ps_continue(c.ctx, nullptr, nullptr, -1, &out, &hit) == PS_INVALID_ARGUMENT);

  // Equilateral shapes: each term is the regular ideal tetrahedron volume.
  const double h = std::sqrt(3.0) / 2;
  const std::string shapes = "0.5," + std::to_string(h) + ";0.5," + std::to_string(h);
  REQUIRE(ps_volume(c.ctx, shapes.c_str(), &out) == PS_OK);
  CHECK(Take(out)["volume"].get<double>() == doctest::Approx(2 * 1.0149416064096536).epsilon(1e-6));
  CHECK(ps_volume(c.ctx, "1,2,3", &out) == PS_PARSE);

  REQUIRE(ps_ohtsuki_roots(c.ctx, 0, &out) == PS_OK);
  const json r = Take(out);
  CHECK(r["degree"] == 16);
  CHECK(r["roots"].size() == 16);
  CHECK(r["max_residual"].get<double>() < 1e-8);
}

TEST_CASE("group endpoints") {
  Ctx c;
  char* out = nullptr;
  REQUIRE(ps_group_ab(c.ctx, 5, 5, "16", &out) == PS_OK);
  CHECK(Take(out)["abelianization"]["group"] == "Z/16");
  CHECK(ps_group_ab(c.ctx, 5, 5, "31/2", &out) == PS_INVALID_ARGUMENT);

  REQUIRE(ps_group_derive(c.ctx, "c5", 5, 7, &out) == PS_OK);
  CHECK(Take(out)["found"] == true);
  REQUIRE(ps_group_derive(c.ctx, "abc2", 5, 7, &out) == PS_OK);
  CHECK(Take(out)["found"] == true);
  REQUIRE(ps_group_derive(c.ctx, "redundant:6", 5, 9, &out) == PS_OK);
  const json rem = Take(out);
  CHECK(rem["applies"] == true);
  CHECK(rem["found"] == true);
  CHECK(ps_group_derive(c.ctx, "redundant:x", 5, 9, &out) == PS_PARSE);
  CHECK(ps_group_derive(c.ctx, "d7", 5, 9, &out) == PS_INVALID_ARGUMENT);

  REQUIRE(ps_group_quotient(c.ctx, "even", 5, 7, 0, &out) == PS_OK);
  CHECK(Take(out).dump().find("\"abelian_ok\":true") != std::string::npos);
  CHECK(ps_group_quotient(c.ctx, "nope", 5, 7, 0, &out) == PS_INVALID_ARGUMENT);
}

TEST_CASE("config files and data directory") {
  const fs::path dir = TmpDir("config");
  {
    std::ofstream cfg(dir / "ok.toml");
    cfg << "search_max_steps = 10\n";
  }
  ps_context* ctx = nullptr;
  REQUIRE(ps_context_create((dir / "ok.toml").string().c_str(), &ctx) == PS_OK);
  char* out = nullptr;
  REQUIRE(ps_group_derive(ctx, "c5", 5, 7, &out) == PS_OK);
  CHECK(Take(out)["found"] == false);

  REQUIRE(ps_context_set_data_dir(ctx, dir.string().c_str()) == PS_OK);
  CHECK(ps_ohtsuki_roots(ctx, 0, &out) == PS_IO);
  ps_context_free(ctx);

  {
    std::ofstream cfg(dir / "bad.toml");
    cfg << "mystery = 1\n";
  }
  ctx = nullptr;
  CHECK(ps_context_create((dir / "bad.toml").string().c_str(), &ctx) == PS_PARSE);
  CHECK(ctx == nullptr);
  CHECK(ps_context_create((dir / "missing.toml").string().c_str(), &ctx) == PS_IO);
}
