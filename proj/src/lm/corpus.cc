// src/lm/corpus.cc

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

#include "rolediar/lm/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar::lm {

std::size_t Corpus::NumTokens() const {
  std::size_t n = 0;
  for (const auto &s : sentences) n += s.size();
  return n;
}

Corpus ReadCorpus(std::istream &is, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> sentence;
    for (const std::string &raw : SplitWhitespace(line)) {
      std::string token = NormalizeToken(raw);
      if (!token.empty()) sentence.push_back(std::move(token));
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open corpus file " + path);
  return ReadCorpus(is, path);
}

void WriteCorpus(std::ostream &os, const Corpus &corpus) {
  for (const auto &sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i)
      os << (i ? " " : "") << sentence[i];
    os << '\n';
  }
}

}  // namespace rolediar::lm
