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

#ifndef PRETZEL_GROUP_THEORY_HPP_
#define PRETZEL_GROUP_THEORY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pretzel/slope.hpp"

namespace pretzel {

// Letters are +-(g+1) for generator g; a Word is always freely reduced.
using Letter = int;

class Word {
 public:
  Word() = default;
  // Freely reduces the input.
  explicit Word(const std::vector<Letter>& letters);

  static Word Generator(int index, int power = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word Inverse() const;
  Word Power(int64_t n) const;
  // Removes inverse pairs at the two ends.
  Word CyclicallyReduced() const;
  Word Rotated(size_t shift) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

std::vector<Letter> FreelyReduce(const std::vector<Letter>& letters);

struct Presentation {
  // Single-character generator names.
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int GeneratorIndex(const std::string& name) const;
  // Throws on out-of-range letters or relators that are not cyclically
  // reduced.
  void Validate() const;
  std::string Format(const Word& w) const;
};

// Integer parameters usable in word-expression exponents.
using Bindings = std::map<std::string, int64_t>;

// Parses products of generators and parenthesized groups with integer
// exponents, e.g. "(zx)^{(p-1)/2} z (yz^-1)^-1 = x". Exponents in braces are
// integer expressions in the bound names. "u = v" denotes u v^-1.
Word ParseWord(const std::string& text,
               const std::vector<std::string>& generators,
               const Bindings& bindings = {});

Presentation MakePresentation(const std::vector<std::string>& generators,
                              const std::vector<std::string>& relators,
                              const Bindings& bindings = {});

Presentation PretzelPresentation(int p, int q);
Word LongitudeWord(int p, int q);
// Pretzel relators plus x^s l.
Presentation SurgeredPresentation(int p, int q, const Slope& s);

// <a, b | a^p, b^q, (ab)^2, (a^2 b^2)^2>.
Presentation Coxeter2pq2(int p, int q);
// <A, B, C | A^p, B^q, C^m, (AB)^2, (BC)^2, (CA)^2, (ABC)^2>, m in {3, 5}.
Presentation CoxeterGmpq(int m, int p, int q);
// <A, B, C | A^p, B^q, (AB)^2, (BC)^2, (CA)^2, C = (A^2 B^2)^2>: the form
// reached before C^5 and (ABC)^2 are known to be relators.
Presentation CoxeterC5Precursor(int p, int q);

struct AbelianInvariants {
  int free_rank = 0;
  // Invariant factors greater than 1, each dividing the next.
  std::vector<int64_t> torsion;
  std::string ToString() const;
};

using IntegerMatrix = std::vector<std::vector<int64_t>>;

// Diagonal of the Smith normal form, nonzero entries only.
std::vector<int64_t> SmithDiagonal(IntegerMatrix m);
IntegerMatrix RelationMatrix(const Presentation& pres);
AbelianInvariants Abelianization(const Presentation& pres);

// Insert Rotated(inverted ? r^-1 : r, shift) at `position`, then reduce.
struct DerivationStep {
  size_t position = 0;
  size_t relator = 0;
  size_t shift = 0;
  bool inverted = false;
};

struct DerivationCertificate {
  Word start;
  std::vector<DerivationStep> steps;
};

// Replays the certificate and reports whether it ends at the empty word.
bool ReplayCertificate(const Presentation& pres,
                       const DerivationCertificate& cert);

struct SearchOptions {
  size_t max_len = 40;
  size_t max_steps = 200000;
};

struct SearchResult {
  std::optional<DerivationCertificate> certificate;
  size_t expansions = 0;
  size_t visited = 0;
  bool found() const { return certificate.has_value(); }
};

// Best-first search by word length over relator insertions that cancel at
// least one letter. Not finding a derivation proves nothing.
SearchResult DerivationSearch(const Presentation& pres, const Word& w,
                              const SearchOptions& options = {});

struct RedundancyReport {
  int p = 0;
  int q = 0;
  int k = 0;
  bool applies = false;
  // Certificate that C^(k-1) is trivial in the precursor group.
  std::optional<DerivationCertificate> certificate;
  std::string method;
};

// 2(p+q)-k surgery maps onto G^{5,p,q} exactly when C^(k-1) is already
// trivial there, i.e. when k = 1 mod 5. For such k, C^(k-1) is certified by
// composing the C^5 derivation.
RedundancyReport RedundantRelatorCheck(int p, int q, int k,
                              const SearchOptions& options = {});

enum class RelatorStatus { kProved, kBudgetExhausted, kSkipped };
const char* RelatorStatusName(RelatorStatus status);

struct RelatorCheck {
  Word image;
  bool abelian_ok = false;
  RelatorStatus status = RelatorStatus::kSkipped;
  std::optional<DerivationCertificate> certificate;
};

struct QuotientReport {
  std::vector<RelatorCheck> relators;
  bool abelian_ok = false;
  bool all_proved = false;
};

// Two-tier check that `images` defines a homomorphism source -> target:
// each relator image vanishes in H1(target), then a bounded search for a
// derivation of the image in the target. max_steps == 0 skips the search.
// The length cap is raised to the image length when needed.
QuotientReport QuotientConsistency(const Presentation& source,
                                   const Presentation& target,
                                   const std::vector<Word>& images,
                                   const SearchOptions& options = {40, 20000});

// True when v lies in the Z-span of the rows of m.
bool InRowLattice(const IntegerMatrix& m, const std::vector<int64_t>& v);

struct QuotientPreset {
  std::string name;
  Presentation source;
  Presentation target;
  std::vector<Word> images;
  std::string description;
};

// "even", "even-coxeter", "gm5", "gm3".
QuotientPreset MakeQuotientPreset(const std::string& name, int p, int q);
std::vector<std::string> QuotientPresetNames();

}  // namespace pretzel

#endif  // PRETZEL_GROUP_THEORY_HPP_
