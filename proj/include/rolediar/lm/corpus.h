// include/rolediar/lm/corpus.h

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

#ifndef ROLEDIAR_LM_CORPUS_H_
#define ROLEDIAR_LM_CORPUS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rolediar::lm {

struct Corpus {
  std::string name;
  std::vector<std::vector<std::string>> sentences;

  std::size_t NumTokens() const;
};

/// One sentence per line; tokens are normalized and empty lines dropped.
Corpus ReadCorpus(std::istream &is, std::string name);
Corpus ReadCorpusFile(const std::string &path);
void WriteCorpus(std::ostream &os, const Corpus &corpus);

}  // namespace rolediar::lm

#endif  // ROLEDIAR_LM_CORPUS_H_
