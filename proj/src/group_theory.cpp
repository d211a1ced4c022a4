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

#include "pretzel/group_theory.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "pretzel/error.hpp"

namespace pretzel {

std::vector<Letter> FreelyReduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(const std::vector<Letter>& letters) : letters_(FreelyReduce(letters)) {
  for (Letter l : letters_) Require(l != 0, "letter 0 is not a generator");
}

Word Word::Generator(int index, int power) {
  Require(index >= 0, "negative generator index");
  std::vector<Letter> letters(std::abs(power), power >= 0 ? index + 1 : -(index + 1));
  return Word(letters);
}

Word Word::Inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = -l;
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::Power(int64_t n) const {
  const Word base = n >= 0 ? *this : Inverse();
  std::vector<Letter> out;
  for (int64_t i = 0; i < (n >= 0 ? n : -n); ++i) {
    out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  }
  return Word(out);
}

Word Word::CyclicallyReduced() const {
  size_t lo = 0;
  size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  Word w;
  w.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
  return w;
}

Word Word::Rotated(size_t shift) const {
  if (letters_.empty()) return *this;
  shift %= letters_.size();
  std::vector<Letter> out(letters_.begin() + shift, letters_.end());
  out.insert(out.end(), letters_.begin(), letters_.begin() + shift);
  return Word(out);
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(out);
}

int Presentation::GeneratorIndex(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void Presentation::Validate() const {
  const int n = static_cast<int>(generators.size());
  for (const auto& g : generators) {
    Require(g.size() == 1, "generator names must be single characters");
  }
  for (const Word& r : relators) {
    for (Letter l : r.letters()) {
      Require(l != 0 && std::abs(l) <= n, "relator letter out of range");
    }
    Require(r == r.CyclicallyReduced(), "relators must be cyclically reduced");
  }
}

std::string Presentation::Format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (size_t i = 0; i < ls.size();) {
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const int g = std::abs(ls[i]) - 1;
    const int64_t run = static_cast<int64_t>(j - i) * (ls[i] > 0 ? 1 : -1);
    out += g < static_cast<int>(generators.size()) ? generators[g]
                                                   : "g" + std::to_string(g);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(const std::string& text, const std::vector<std::string>& gens,
             const Bindings& bindings)
      : text_(text), gens_(gens), bindings_(bindings) {}

  Word Parse() {
    Word lhs = Product();
    Skip();
    if (Peek() == '=') {
      ++pos_;
      const Word rhs = Product();
      lhs = lhs * rhs.Inverse();
    }
    Skip();
    if (pos_ != text_.size()) Error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void Error(const std::string& what) const {
    Fail(ErrorCode::kParse, "word '" + text_ + "' at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  void Skip() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  int GeneratorAt() const {
    const char c = Peek();
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].size() == 1 && gens_[i][0] == c) return static_cast<int>(i);
    }
    return -1;
  }

  Word Product() {
    Word w;
    for (;;) {
      Skip();
      const char c = Peek();
      if (c == '(' || GeneratorAt() >= 0) {
        w = w * Factor();
      } else if (c == '1' && (pos_ + 1 >= text_.size() || !std::isdigit(text_[pos_ + 1]))) {
        ++pos_;  // The identity.
      } else {
        return w;
      }
    }
  }

  Word Factor() {
    Word atom;
    if (Peek() == '(') {
      ++pos_;
      atom = Product();
      Skip();
      if (Peek() != ')') Error("expected ')'");
      ++pos_;
    } else {
      atom = Word::Generator(GeneratorAt());
      ++pos_;
    }
    Skip();
    if (Peek() != '^') return atom;
    ++pos_;
    Skip();
    int64_t e = 0;
    if (Peek() == '{') {
      ++pos_;
      e = Sum();
      Skip();
      if (Peek() != '}') Error("expected '}'");
      ++pos_;
    } else {
      bool negative = false;
      if (Peek() == '-') {
        negative = true;
        ++pos_;
      }
      e = Integer();
      if (negative) e = -e;
    }
    return atom.Power(e);
  }

  int64_t Integer() {
    Skip();
    const size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    if (start == pos_) Error("expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  int64_t Sum() {
    int64_t v = Term();
    for (;;) {
      Skip();
      if (Peek() == '+') {
        ++pos_;
        v += Term();
      } else if (Peek() == '-') {
        ++pos_;
        v -= Term();
      } else {
        return v;
      }
    }
  }

  int64_t Term() {
    int64_t v = Unary();
    for (;;) {
      Skip();
      if (Peek() == '*') {
        ++pos_;
        v *= Unary();
      } else if (Peek() == '/') {
        ++pos_;
        const int64_t d = Unary();
        if (d == 0 || v % d != 0) Error("inexact division in exponent");
        v /= d;
      } else if (Peek() == '(' || std::isalpha(static_cast<unsigned char>(Peek()))) {
        v *= Unary();  // Juxtaposition, as in 2(p+q).
      } else {
        return v;
      }
    }
  }

  int64_t Unary() {
    Skip();
    if (Peek() == '-') {
      ++pos_;
      return -Unary();
    }
    if (Peek() == '(') {
      ++pos_;
      const int64_t v = Sum();
      Skip();
      if (Peek() != ')') Error("expected ')' in exponent");
      ++pos_;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(Peek()))) {
      const size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(Peek()))) ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      auto it = bindings_.find(name);
      if (it == bindings_.end()) Error("unbound exponent name '" + name + "'");
      return it->second;
    }
    return Integer();
  }

  const std::string& text_;
  const std::vector<std::string>& gens_;
  const Bindings& bindings_;
  size_t pos_ = 0;
};

}  // namespace

Word ParseWord(const std::string& text,
               const std::vector<std::string>& generators,
               const Bindings& bindings) {
  return WordParser(text, generators, bindings).Parse();
}

Presentation MakePresentation(const std::vector<std::string>& generators,
                              const std::vector<std::string>& relators,
                              const Bindings& bindings) {
  Presentation pres{generators, {}};
  for (const auto& r : relators) {
    pres.relators.push_back(ParseWord(r, generators, bindings).CyclicallyReduced());
  }
  pres.Validate();
  return pres;
}

namespace {

Bindings PQ(int p, int q) { return {{"p", p}, {"q", q}}; }

void RequireOddPair(int p, int q) {
  Require(p % 2 != 0 && q % 2 != 0, "p and q must be odd");
  Require(p >= 3 && q >= 3, "p and q must be at least 3");
}

const std::vector<std::string> kXYZ = {"x", "y", "z"};

const char kLongitude[] =
    "x^{-2(p+q)} (yx)^{(q-1)/2} (yz^-1)^-1 (yx)^{(q+1)/2} (zx)^{(p-1)/2} "
    "(yz^-1) (zx)^{(p+1)/2}";

}  // namespace

Presentation PretzelPresentation(int p, int q) {
  Require(IsValidKnot(p, q), "pretzel parameters must be odd with 5 <= p <= q");
  return MakePresentation(
      kXYZ,
      {"(zx)^{(p-1)/2} z (zx)^{(1-p)/2} = (yx)^{-(q+1)/2} y (yx)^{(q+1)/2}",
       "(yz^-1)^-1 y (yz^-1) = (yx)^{(1-q)/2} x (yx)^{(q-1)/2}",
       "(yz^-1)^-1 z (yz^-1) = (zx)^{(p+1)/2} x (zx)^{-(p+1)/2}"},
      PQ(p, q));
}

Word LongitudeWord(int p, int q) {
  Require(IsValidKnot(p, q), "pretzel parameters must be odd with 5 <= p <= q");
  return ParseWord(kLongitude, kXYZ, PQ(p, q));
}

Presentation SurgeredPresentation(int p, int q, const Slope& s) {
  Require(s.is_integral(), "surgered presentations need an integral slope");
  Presentation pres = PretzelPresentation(p, q);
  const Word rel = Word::Generator(0).Power(s.numerator()) * LongitudeWord(p, q);
  pres.relators.push_back(rel.CyclicallyReduced());
  return pres;
}

Presentation Coxeter2pq2(int p, int q) {
  RequireOddPair(p, q);
  return MakePresentation({"a", "b"}, {"a^{p}", "b^{q}", "(ab)^2", "(a^2b^2)^2"},
                          PQ(p, q));
}

Presentation CoxeterGmpq(int m, int p, int q) {
  Require(m == 3 || m == 5, "only m = 3 and m = 5 are supported");
  RequireOddPair(p, q);
  Bindings b = PQ(p, q);
  b["m"] = m;
  return MakePresentation({"A", "B", "C"},
                          {"A^{p}", "B^{q}", "C^{m}", "(AB)^2", "(BC)^2",
                           "(CA)^2", "(ABC)^2"},
                          b);
}

Presentation CoxeterC5Precursor(int p, int q) {
  RequireOddPair(p, q);
  return MakePresentation({"A", "B", "C"},
                          {"A^{p}", "B^{q}", "(AB)^2", "(BC)^2", "(CA)^2",
                           "C = (A^2B^2)^2"},
                          PQ(p, q));
}

std::string AbelianInvariants::ToString() const {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += " + ";
    out += s;
  };
  for (int64_t t : torsion) add("Z/" + std::to_string(t));
  for (int i = 0; i < free_rank; ++i) add("Z");
  return out.empty() ? "0" : out;
}

std::vector<int64_t> SmithDiagonal(IntegerMatrix input) {
  using I = __int128;
  const size_t rows = input.size();
  const size_t cols = rows == 0 ? 0 : input[0].size();
  std::vector<std::vector<I>> a(rows, std::vector<I>(cols));
  for (size_t i = 0; i < rows; ++i) {
    Require(input[i].size() == cols, "ragged matrix");
    for (size_t j = 0; j < cols; ++j) a[i][j] = input[i][j];
  }
  auto abs128 = [](I v) { return v < 0 ? -v : v; };
  std::vector<I> diag;
  bool exhausted = false;
  for (size_t t = 0; t < std::min(rows, cols) && !exhausted; ++t) {
    // Pivot: smallest nonzero entry in the remaining block.
    for (;;) {
      size_t pi = rows, pj = cols;
      for (size_t i = t; i < rows; ++i) {
        for (size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pi == rows || abs128(a[i][j]) < abs128(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) {
        exhausted = true;
        break;
      }
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        const I f = a[i][t] / a[t][t];
        if (f != 0) {
          for (size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
        }
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        const I f = a[t][j] / a[t][t];
        if (f != 0) {
          for (size_t i = t; i < rows; ++i) a[i][j] -= f * a[i][t];
        }
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divides = true;
      for (size_t i = t + 1; i < rows && divides; ++i) {
        for (size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (!exhausted) diag.push_back(abs128(a[t][t]));
  }
  std::vector<int64_t> out;
  for (I d : diag) out.push_back(static_cast<int64_t>(d));
  return out;
}

IntegerMatrix RelationMatrix(const Presentation& pres) {
  IntegerMatrix m;
  for (const Word& r : pres.relators) {
    std::vector<int64_t> row(pres.generators.size(), 0);
    for (Letter l : r.letters()) row[std::abs(l) - 1] += l > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  return m;
}

AbelianInvariants Abelianization(const Presentation& pres) {
  pres.Validate();
  const std::vector<int64_t> diag = SmithDiagonal(RelationMatrix(pres));
  AbelianInvariants out;
  out.free_rank = static_cast<int>(pres.generators.size() - diag.size());
  for (int64_t d : diag) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

bool InRowLattice(const IntegerMatrix& input, const std::vector<int64_t>& v) {
  using I = __int128;
  const size_t cols = v.size();
  std::vector<std::vector<I>> rows;
  for (const auto& r : input) {
    Require(r.size() == cols, "row length mismatch");
    rows.emplace_back(r.begin(), r.end());
  }
  // Row echelon form by Euclidean row operations.
  std::vector<std::pair<size_t, std::vector<I>>> pivots;
  size_t top = 0;
  for (size_t c = 0; c < cols && top < rows.size(); ++c) {
    for (;;) {
      size_t best = rows.size();
      for (size_t i = top; i < rows.size(); ++i) {
        if (rows[i][c] != 0 &&
            (best == rows.size() ||
             (rows[i][c] < 0 ? -rows[i][c] : rows[i][c]) <
                 (rows[best][c] < 0 ? -rows[best][c] : rows[best][c]))) {
          best = i;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (size_t i = top + 1; i < rows.size(); ++i) {
        const I f = rows[i][c] / rows[top][c];
        if (f != 0) {
          for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[top][j];
        }
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        pivots.emplace_back(c, rows[top]);
        ++top;
        break;
      }
    }
  }
  std::vector<I> w(v.begin(), v.end());
  size_t next = 0;
  for (size_t c = 0; c < cols; ++c) {
    if (next < pivots.size() && pivots[next].first == c) {
      const auto& row = pivots[next].second;
      if (w[c] % row[c] != 0) return false;
      const I f = w[c] / row[c];
      for (size_t j = c; j < cols; ++j) w[j] -= f * row[j];
      ++next;
    } else if (w[c] != 0) {
      return false;
    }
  }
  return true;
}

namespace {

struct Form {
  std::vector<Letter> letters;
  DerivationStep step;
};

std::vector<Form> RelatorForms(const Presentation& pres) {
  std::vector<Form> forms;
  std::vector<std::vector<Letter>> seen;
  for (size_t r = 0; r < pres.relators.size(); ++r) {
    for (bool inverted : {false, true}) {
      const Word base = inverted ? pres.relators[r].Inverse() : pres.relators[r];
      for (size_t s = 0; s < base.size(); ++s) {
        std::vector<Letter> letters = base.letters();
        std::rotate(letters.begin(), letters.begin() + s, letters.end());
        if (std::find(seen.begin(), seen.end(), letters) != seen.end()) continue;
        seen.push_back(letters);
        forms.push_back({letters, {0, r, s, inverted}});
      }
    }
  }
  return forms;
}

std::vector<Letter> InsertAndReduce(const std::vector<Letter>& u, size_t pos,
                                    const std::vector<Letter>& f) {
  std::vector<Letter> out(u.begin(), u.begin() + pos);
  out.insert(out.end(), f.begin(), f.end());
  out.insert(out.end(), u.begin() + pos, u.end());
  return FreelyReduce(out);
}

std::string Key(const std::vector<Letter>& w) {
  std::string key(w.size(), '\0');
  for (size_t i = 0; i < w.size(); ++i) key[i] = static_cast<char>(w[i] + 64);
  return key;
}

}  // namespace

bool ReplayCertificate(const Presentation& pres,
                       const DerivationCertificate& cert) {
  std::vector<Letter> w = cert.start.letters();
  for (const DerivationStep& step : cert.steps) {
    if (step.relator >= pres.relators.size()) return false;
    const Word& rel = pres.relators[step.relator];
    if (rel.empty() || step.shift >= rel.size() || step.position > w.size()) {
      return false;
    }
    const Word base = step.inverted ? rel.Inverse() : rel;
    std::vector<Letter> form = base.letters();
    std::rotate(form.begin(), form.begin() + step.shift, form.end());
    w = InsertAndReduce(w, step.position, form);
  }
  return w.empty();
}

SearchResult DerivationSearch(const Presentation& pres, const Word& w,
                              const SearchOptions& options) {
  pres.Validate();
  Require(options.max_len > 0 && options.max_steps > 0, "search budgets must be positive");
  const std::vector<Form> forms = RelatorForms(pres);

  struct Node {
    std::vector<Letter> word;
    int parent;
    int depth;
    DerivationStep step;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> index;
  using Entry = std::tuple<size_t, int, int>;  // (length, depth, node id)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

  SearchResult result;
  nodes.push_back({w.letters(), -1, 0, {}});
  index.emplace(Key(w.letters()), 0);
  queue.emplace(w.size(), 0, 0);

  while (!queue.empty()) {
    const int id = std::get<2>(queue.top());
    queue.pop();
    if (nodes[id].word.empty()) {
      DerivationCertificate cert;
      cert.start = w;
      for (int at = id; nodes[at].parent >= 0; at = nodes[at].parent) {
        cert.steps.push_back(nodes[at].step);
      }
      std::reverse(cert.steps.begin(), cert.steps.end());
      result.certificate = std::move(cert);
      break;
    }
    if (++result.expansions > options.max_steps) break;
    const std::vector<Letter> u = nodes[id].word;
    const size_t n = u.size();
    for (size_t i = 0; i <= n; ++i) {
      for (const Form& f : forms) {
        const size_t len = f.letters.size();
        size_t left = 0;
        while (left < len && left < i && u[i - 1 - left] == -f.letters[left]) ++left;
        size_t right = 0;
        while (right < len && i + right < n &&
               f.letters[len - 1 - right] == -u[i + right]) {
          ++right;
        }
        if (left == 0 && right == 0) continue;
        std::vector<Letter> v;
        if (left + right < len) {
          v.reserve(n + len - 2 * (left + right));
          v.insert(v.end(), u.begin(), u.begin() + (i - left));
          v.insert(v.end(), f.letters.begin() + left, f.letters.end() - right);
          v.insert(v.end(), u.begin() + (i + right), u.end());
        } else {
          v = InsertAndReduce(u, i, f.letters);
        }
        if (v.size() > options.max_len) continue;
        auto [it, inserted] = index.emplace(Key(v), static_cast<int>(nodes.size()));
        if (!inserted) continue;
        DerivationStep step = f.step;
        step.position = i;
        const size_t vlen = v.size();
        const int depth = nodes[id].depth + 1;
        nodes.push_back({std::move(v), id, depth, step});
        queue.emplace(vlen, depth, it->second);
      }
    }
  }
  result.visited = nodes.size();
  return result;
}

RedundancyReport RedundantRelatorCheck(int p, int q, int k, const SearchOptions& options) {
  Require(k >= 1, "k must be at least 1");
  RedundancyReport report{p, q, k, k % 5 == 1, std::nullopt, ""};
  if (!report.applies) {
    report.method = "k - 1 is not a multiple of 5";
    return report;
  }
  const Presentation pres = CoxeterC5Precursor(p, q);
  const int c = pres.GeneratorIndex("C");
  const int t = (k - 1) / 5;
  const Word target = Word::Generator(c, 5 * t);
  if (t == 0) {
    report.certificate = DerivationCertificate{target, {}};
    report.method = "C^0 is the identity";
    return report;
  }
  const SearchResult base = DerivationSearch(pres, Word::Generator(c, 5), options);
  if (base.found()) {
    DerivationCertificate composed{target, {}};
    for (int rep = 0; rep < t; ++rep) {
      composed.steps.insert(composed.steps.end(), base.certificate->steps.begin(),
                            base.certificate->steps.end());
    }
    if (ReplayCertificate(pres, composed)) {
      report.certificate = std::move(composed);
      report.method = "C^5 derivation applied " + std::to_string(t) + " time(s)";
      return report;
    }
  }
  SearchResult direct = DerivationSearch(pres, target, options);
  if (direct.found()) {
    report.certificate = std::move(direct.certificate);
    report.method = "direct search";
  } else {
    report.method = "search budget exhausted";
  }
  return report;
}

const char* RelatorStatusName(RelatorStatus status) {
  switch (status) {
    case RelatorStatus::kProved:
      return "proved";
    case RelatorStatus::kBudgetExhausted:
      return "budget_exhausted";
    case RelatorStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

QuotientReport QuotientConsistency(const Presentation& source,
                                   const Presentation& target,
                                   const std::vector<Word>& images,
                                   const SearchOptions& options) {
  source.Validate();
  target.Validate();
  Require(images.size() == source.generators.size(),
          "need one image per source generator");
  const IntegerMatrix relations = RelationMatrix(target);
  QuotientReport report;
  report.abelian_ok = true;
  report.all_proved = true;
  for (const Word& r : source.relators) {
    std::vector<Letter> letters;
    for (Letter l : r.letters()) {
      const Word& img = images[std::abs(l) - 1];
      const Word piece = l > 0 ? img : img.Inverse();
      letters.insert(letters.end(), piece.letters().begin(), piece.letters().end());
    }
    RelatorCheck check;
    check.image = Word(letters).CyclicallyReduced();
    std::vector<int64_t> sums(target.generators.size(), 0);
    for (Letter l : check.image.letters()) sums[std::abs(l) - 1] += l > 0 ? 1 : -1;
    check.abelian_ok = InRowLattice(relations, sums);
    if (check.abelian_ok && options.max_steps > 0) {
      SearchOptions local = options;
      local.max_len = std::max(local.max_len, check.image.size());
      SearchResult found = DerivationSearch(target, check.image, local);
      check.status = found.found() ? RelatorStatus::kProved
                                   : RelatorStatus::kBudgetExhausted;
      check.certificate = std::move(found.certificate);
    }
    report.abelian_ok = report.abelian_ok && check.abelian_ok;
    report.all_proved = report.all_proved && check.status == RelatorStatus::kProved;
    report.relators.push_back(std::move(check));
  }
  return report;
}

namespace {

std::vector<Word> ParseImages(const std::vector<std::string>& texts,
                              const Presentation& target, const Bindings& b) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(ParseWord(t, target.generators, b));
  return out;
}

Presentation EvenSubgroupPresentation(int p, int q) {
  return MakePresentation(
      {"a", "b", "c"},
      {"c^2", "a^{p}", "b^{q}", "abc",
       "b^{(q+1)/2} c b^{(q-1)/2} a^{(p-1)/2} c a^{(p+1)/2}"},
      PQ(p, q));
}

Presentation EvenQuotientPresentation(int p, int q) {
  return MakePresentation(
      kXYZ,
      {"x^2", "y^2", "z^2", "(yz)^2", "(zx)^{p}", "(yx)^{q}",
       "(yx)^{(q-1)/2} (zy) (yx)^{(q+1)/2} (zx)^{(p-1)/2} (yz) (zx)^{(p+1)/2}"},
      PQ(p, q));
}

}  // namespace

std::vector<std::string> QuotientPresetNames() {
  return {"even", "even-coxeter", "gm5", "gm3"};
}

QuotientPreset MakeQuotientPreset(const std::string& name, int p, int q) {
  const Bindings b = PQ(p, q);
  QuotientPreset preset;
  preset.name = name;
  if (name == "even") {
    preset.source = EvenSubgroupPresentation(p, q);
    preset.target = EvenQuotientPresentation(p, q);
    preset.images = ParseImages({"zx", "xy", "yz"}, preset.target, b);
    preset.description = "a = zx, b = xy, c = yz into the even-surgery quotient";
  } else if (name == "even-coxeter") {
    preset.source = EvenSubgroupPresentation(p, q);
    preset.target = Coxeter2pq2(p, q);
    preset.images = ParseImages({"a^-2", "b^-2", "b^2a^2"}, preset.target, b);
    preset.description = "a = alpha^-2, b = beta^-2, c = beta^2 alpha^2 onto (2,p,q;2)";
  } else if (name == "gm5") {
    Require(IsValidKnot(p, q), "gm5 needs a valid pretzel knot");
    preset.source = SurgeredPresentation(p, q, Slope(2 * (p + q) - 1));
    preset.target = CoxeterGmpq(5, p, q);
    const std::string x = "(B^-1 A^-2 B^-1 A B^2 A)";
    preset.images = ParseImages({x, "B^2 " + x + "^-1", "A^-2 " + x + "^-1"},
                                preset.target, b);
    preset.description = "2(p+q)-1 surgery onto G^{5,p,q}";
  } else if (name == "gm3") {
    Require(IsValidKnot(p, q), "gm3 needs a valid pretzel knot");
    preset.source = SurgeredPresentation(p, q, Slope(2 * (p + q) + 1));
    preset.target = CoxeterGmpq(3, p, q);
    const std::string x = "(A^-1 B^-2 A^-1 B A^2 B)";
    preset.images = ParseImages({x, "B^2 " + x + "^-1", "A^-2 " + x + "^-1"},
                                preset.target, b);
    preset.description = "2(p+q)+1 surgery onto G^{3,p,q}";
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown quotient preset '" + name + "'");
  }
  return preset;
}

}  // namespace pretzel
