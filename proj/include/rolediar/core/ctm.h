// include/rolediar/core/ctm.h

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

#ifndef ROLEDIAR_CORE_CTM_H_
#define ROLEDIAR_CORE_CTM_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rolediar/core/types.h"

namespace rolediar {

/// Word alignments keyed by session id, each list sorted by start time.
using SessionWords = std::map<std::string, std::vector<TimedWord>>;

/// Reads CTM lines
///   <session-id> <channel> <start-sec> <dur-sec> <token> [<speaker>] [<conf>]
/// A speaker field of "-" means "no speaker". Tokens are normalized; words
/// whose token normalizes to nothing are dropped. Blank lines and lines
/// starting with ';;' are skipped. Throws FormatError on malformed lines.
SessionWords ReadCtm(std::istream &is);
SessionWords ReadCtmFile(const std::string &path);

void WriteCtm(std::ostream &os, const std::string &session_id,
              const std::vector<TimedWord> &words);

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_CTM_H_
