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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "pretzel_surgeon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInconclusive = 3;

int ExitFor(ps_status status) {
  switch (status) {
    case PS_OK:
      return kExitOk;
    case PS_INVALID_ARGUMENT:
    case PS_PARSE:
    case PS_IO:
    case PS_PARTIAL_DATA:
      return kExitInvalid;
    default:
      return kExitFailure;
  }
}

int Report(ps_status status) {
  if (status != PS_OK) {
    std::fprintf(stderr, "error (%s): %s\n", ps_status_name(status), ps_last_error());
  }
  return ExitFor(status);
}

// Prints and frees a returned document.
// Takes the slot rather than the pointer: the call filling it is an argument
// of the same expression.
int Print(ps_status status, char** text) {
  if (status == PS_OK) {
    std::fputs(*text, stdout);
    ps_string_free(*text);
    *text = nullptr;
  }
  return Report(status);
}

void ReportCache(int hit) { std::fprintf(stderr, "cache: %s\n", hit ? "hit" : "miss"); }

// Accepts "P,Q".
struct KnotArg {
  int p = 0;
  int q = 0;
};

bool ParseKnot(const std::string& text, KnotArg* out) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    size_t a = 0, b = 0;
    out->p = std::stoi(text.substr(0, comma), &a);
    out->q = std::stoi(text.substr(comma + 1), &b);
    return a == comma && b == text.size() - comma - 1;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-surgery classifier for (-2,p,q) pretzel knots"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ps_version());
  std::string config_path;
  app.add_option("--config", config_path, "TOML-style settings file")
      ->check(CLI::ExistingFile);

  int p = 0, q = 0;
  std::string format = "table";
  bool allow_asserted = false;
  auto* classify = app.add_subcommand("classify", "Run the full elimination ledger");
  classify->add_option("-p", p, "First odd parameter")->required();
  classify->add_option("-q", q, "Second odd parameter")->required();
  classify->add_option("--format", format, "json or table");
  classify->add_flag("--allow-asserted", allow_asserted,
                     "Accept cases resting on data not available here");

  std::string knot_text;
  auto knot_option = [&](CLI::App* sub) {
    sub->add_option("--knot", knot_text, "P,Q")->required();
  };
  auto* slopes = app.add_subcommand("slopes", "Boundary slopes of a knot");
  knot_option(slopes);
  auto* candidates = app.add_subcommand("candidates", "Candidate finite slopes");
  knot_option(candidates);
  std::string slope_text;
  auto* norm_min = app.add_subcommand("norm-min", "Exact minimal norm of a slope");
  knot_option(norm_min);
  norm_min->add_option("--slope", slope_text, "A/B")->required();
  auto* verdicts = app.add_subcommand("verdicts", "Norm verdicts per candidate");
  knot_option(verdicts);

  int shift_q = 0;
  std::string coefficients;
  auto* norm_shift = app.add_subcommand("norm-shift", "Evaluate the shift identities");
  norm_shift->add_option("-q", shift_q, "Odd q >= 11")->required();
  norm_shift->add_option("--coefficients", coefficients, "a1,...,a6")->required();

  std::string lattice;
  auto* short_slopes = app.add_subcommand("short-slopes", "Slopes of length <= 6");
  short_slopes->add_option("--lattice", lattice, "Bundled lattice name");

  std::string file;
  auto* scan = app.add_subcommand("ideal-scan", "Scan degeneration types");
  scan->add_option("--file", file, "Gluing system JSON")->check(CLI::ExistingFile);

  std::string plan;
  int branch = -1;
  auto* cont = app.add_subcommand("continue", "Follow a curve to an ideal point");
  cont->add_option("--file", file, "Gluing system JSON")->check(CLI::ExistingFile);
  cont->add_option("--plan", plan, "slope20 or slope22")->required();
  cont->add_option("--branch", branch, "Branch index (default: all)");

  std::string shapes;
  auto* volume = app.add_subcommand("volume", "Bloch-Wigner volume of shapes");
  volume->add_option("--shapes", shapes, "re,im;re,im;...")->required();

  double tol = 1e-6;
  auto* roots = app.add_subcommand("ohtsuki-roots", "Roots and cross ratios");
  roots->add_option("--tol", tol, "Clustering tolerance");

  auto* group = app.add_subcommand("group", "Group-theoretic checks");
  group->require_subcommand(1);
  auto* ab = group->add_subcommand("ab", "Abelianization of a surgered group");
  knot_option(ab);
  ab->add_option("--slope", slope_text, "Integral slope")->required();
  std::string preset;
  auto* derive = group->add_subcommand("derive", "Search for a derivation");
  derive->add_option("--preset", preset, "c5, abc2, or redundant:<k>")->required();
  derive->add_option("--p", p, "p")->required();
  derive->add_option("--q", q, "q")->required();
  long max_steps = -1;
  auto* quotient = group->add_subcommand("quotient", "Check a quotient map");
  quotient->add_option("--preset", preset, "even, even-coxeter, gm5, gm3")->required();
  quotient->add_option("--p", p, "p")->required();
  quotient->add_option("--q", q, "q")->required();
  quotient->add_option("--max-steps", max_steps, "Word-level search budget (0 skips)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  ps_context* ctx = nullptr;
  if (const int rc = Report(ps_context_create(
          config_path.empty() ? nullptr : config_path.c_str(), &ctx));
      rc != kExitOk) {
    return rc;
  }
  struct Closer {
    ps_context* ctx;
    ~Closer() { ps_context_free(ctx); }
  } closer{ctx};

  KnotArg knot;
  if (!knot_text.empty() && !ParseKnot(knot_text, &knot)) {
    std::fprintf(stderr, "error: --knot expects P,Q\n");
    return kExitInvalid;
  }
  const char* file_arg = file.empty() ? nullptr : file.c_str();
  char* out = nullptr;

  if (*classify) {
    ps_ledger* ledger = nullptr;
    if (const int rc = Report(ps_classify(ctx, p, q, allow_asserted, &ledger));
        rc != kExitOk) {
      return rc;
    }
    const ps_status status = ps_ledger_emit(ledger, format.c_str(), &out);
    const bool conclusive = ps_ledger_conclusive(ledger);
    ps_ledger_free(ledger);
    const int rc = Print(status, &out);
    if (rc != kExitOk) return rc;
    return conclusive ? kExitOk : kExitInconclusive;
  }
  if (*slopes) return Print(ps_boundary_slopes(ctx, knot.p, knot.q, &out), &out);
  if (*candidates) return Print(ps_candidates(ctx, knot.p, knot.q, &out), &out);
  if (*norm_min) {
    return Print(ps_norm_min(ctx, knot.p, knot.q, slope_text.c_str(), &out), &out);
  }
  if (*verdicts) return Print(ps_verdicts(ctx, knot.p, knot.q, &out), &out);
  if (*norm_shift) {
    return Print(ps_norm_shift(ctx, shift_q, coefficients.c_str(), &out), &out);
  }
  if (*short_slopes) {
    return Print(ps_short_slopes(ctx, lattice.empty() ? nullptr : lattice.c_str(), &out),
                 &out);
  }
  if (*scan) {
    int hit = 0;
    const ps_status status = ps_ideal_scan(ctx, file_arg, &out, &hit);
    if (status == PS_OK) ReportCache(hit);
    return Print(status, &out);
  }
  if (*cont) {
    int hit = 0;
    const ps_status status = ps_continue(ctx, file_arg, plan.c_str(), branch, &out, &hit);
    if (status == PS_OK) ReportCache(hit);
    return Print(status, &out);
  }
  if (*volume) return Print(ps_volume(ctx, shapes.c_str(), &out), &out);
  if (*roots) return Print(ps_ohtsuki_roots(ctx, tol, &out), &out);
  if (*ab) {
    return Print(ps_group_ab(ctx, knot.p, knot.q, slope_text.c_str(), &out), &out);
  }
  if (*derive) return Print(ps_group_derive(ctx, preset.c_str(), p, q, &out), &out);
  if (*quotient) {
    return Print(ps_group_quotient(ctx, preset.c_str(), p, q, max_steps, &out), &out);
  }
  return kExitInvalid;
}
