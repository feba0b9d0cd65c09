// src/lm/arpa.cc

// Copyright 2026  Rolediar Authors

// See LICENSE for the full license text.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "rolediar/lm/arpa.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar::lm {

namespace {

constexpr double kLogZero = -99.0;

std::string FormatLog10(double p) {
  if (p <= 0.0) return "-99";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", std::log10(p));
  return buf;
}

double FromLog10(double lp) { return lp <= kLogZero ? 0.0 : std::pow(10.0, lp); }

}  // namespace

void WriteArpa(std::ostream &os, const NGramModel &model) {
  const int order = model.order();
  const auto &levels = model.levels();
  const Vocabulary &vocab = model.vocab();

  // grams[n-1]: every n-gram that needs a line (explicit entries plus
  // contexts that carry a backoff weight).
  std::vector<std::set<std::vector<int>, SequenceLess>> grams(order);
  for (int w = 0; w < vocab.size(); ++w) grams[0].insert({w});
  for (int k = 0; k < order; ++k) {
    for (const auto &[ctx, node] : levels[k]) {
      if (k > 0) grams[k - 1].insert(ctx);
      for (const auto &[w, p] : node.probs) {
        std::vector<int> g = ctx;
        g.push_back(w);
        grams[k].insert(std::move(g));
      }
    }
  }

  os << "# order " << order << "\n# vocab " << vocab.size() << "\n\n\\data\\\n";
  for (int n = 1; n <= order; ++n) os << "ngram " << n << '=' << grams[n - 1].size() << '\n';
  for (int n = 1; n <= order; ++n) {
    os << "\n\\" << n << "-grams:\n";
    for (const std::vector<int> &g : grams[n - 1]) {
      const std::span<const int> ctx(g.data(), n - 1);
      double p = 0.0;
      auto node = levels[n - 1].find(ctx);
      if (node != levels[n - 1].end()) {
        auto it = node->second.probs.find(g.back());
        if (it != node->second.probs.end()) p = it->second;
      }
      os << FormatLog10(p);
      for (int id : g) os << ' ' << vocab.Token(id);
      if (n < order) {
        auto as_ctx = levels[n].find(g);
        if (as_ctx != levels[n].end()) os << ' ' << FormatLog10(as_ctx->second.backoff);
      }
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpaFile(const std::string &path, const NGramModel &model) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  WriteArpa(os, model);
}

NGramModel ReadArpa(std::istream &is) {
  std::string line;
  while (std::getline(is, line) && line != "\\data\\") {
  }
  if (!is) throw FormatError("ARPA input has no \\data\\ section");
  std::vector<long long> counts;
  while (std::getline(is, line)) {
    if (line.empty()) {
      if (!counts.empty()) break;
      continue;
    }
    if (line.rfind("ngram ", 0) != 0) throw FormatError("bad ARPA count line: " + line);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("bad ARPA count line: " + line);
    counts.push_back(ParseInteger(line.substr(eq + 1), "ARPA n-gram count"));
  }
  const int order = static_cast<int>(counts.size());
  if (order < 1 || order > 5) throw FormatError("unsupported ARPA order");

  struct Line {
    double logprob;
    std::vector<std::string> tokens;
    bool has_backoff;
    double backoff;
  };
  std::vector<std::vector<Line>> sections(order);
  int current = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "\\end\\") break;
    if (line.front() == '\\') {
      int n = 0;
      if (std::sscanf(line.c_str(), "\\%d-grams:", &n) != 1 || n < 1 || n > order)
        throw FormatError("bad ARPA section header: " + line);
      current = n;
      continue;
    }
    if (current == 0) throw FormatError("ARPA n-gram outside a section");
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.size() != static_cast<std::size_t>(current) + 1 &&
        f.size() != static_cast<std::size_t>(current) + 2)
      throw FormatError("bad ARPA line: " + line);
    Line l;
    l.logprob = ParseDouble(f[0], "ARPA log-probability");
    l.tokens.assign(f.begin() + 1, f.begin() + 1 + current);
    l.has_backoff = f.size() == static_cast<std::size_t>(current) + 2;
    l.backoff = l.has_backoff ? ParseDouble(f.back(), "ARPA backoff") : 0.0;
    sections[current - 1].push_back(std::move(l));
  }
  for (int n = 0; n < order; ++n)
    if (static_cast<long long>(sections[n].size()) != counts[n])
      throw FormatError("ARPA section size does not match its header count");

  Vocabulary vocab;
  for (const Line &l : sections[0]) vocab.Add(l.tokens[0]);
  std::vector<NGramModel::Level> levels(order);
  levels[0][{}];
  for (int n = 1; n <= order; ++n) {
    for (const Line &l : sections[n - 1]) {
      std::vector<int> g;
      for (const std::string &t : l.tokens) {
        const int id = vocab.Find(t);
        if (id < 0) throw FormatError("ARPA n-gram uses a word missing from the unigrams: " + t);
        g.push_back(id);
      }
      const double p = FromLog10(l.logprob);
      if (p > 0.0) {
        NGramModel::Context ctx(g.begin(), g.end() - 1);
        levels[n - 1][ctx].probs[g.back()] = p;
      }
      if (l.has_backoff && n < order) levels[n][g].backoff = FromLog10(l.backoff);
    }
  }
  return NGramModel(order, std::move(vocab), std::move(levels));
}

NGramModel ReadArpaFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open ARPA file " + path);
  return ReadArpa(is);
}

}  // namespace rolediar::lm
