// include/rolediar/lm/arpa.h

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

#ifndef ROLEDIAR_LM_ARPA_H_
#define ROLEDIAR_LM_ARPA_H_

#include <iosfwd>
#include <string>

#include "rolediar/lm/ngram-model.h"

namespace rolediar::lm {

/// Writes an ARPA file preceded by "# order N" / "# vocab V" comment lines
/// (ignored by ARPA readers). Probabilities are log10; -99 marks zero.
void WriteArpa(std::ostream &os, const NGramModel &model);
void WriteArpaFile(const std::string &path, const NGramModel &model);

/// Reads an ARPA file (text before "\data\" is ignored). Throws FormatError
/// on malformed input.
NGramModel ReadArpa(std::istream &is);
NGramModel ReadArpaFile(const std::string &path);

}  // namespace rolediar::lm

#endif  // ROLEDIAR_LM_ARPA_H_
