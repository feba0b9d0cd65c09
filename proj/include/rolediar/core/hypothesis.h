// include/rolediar/core/hypothesis.h

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

#ifndef ROLEDIAR_CORE_HYPOTHESIS_H_
#define ROLEDIAR_CORE_HYPOTHESIS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rolediar/core/types.h"

namespace rolediar {

// Who spoke when in one session. System output is non-overlapping; a
// reference read from RTTM may overlap, which is why the constructor does
// not enforce it.
struct DiarizationHypothesis {
  std::string session_id;
  std::vector<LabeledInterval> records;

  /// Sorts records by (start, end, label).
  void Sort();
  bool IsNonOverlapping() const;
  std::vector<std::string> Labels() const;  // sorted, distinct
  Millis LabeledDuration() const;
};

using HypothesisSet = std::map<std::string, DiarizationHypothesis>;

/// SPEAKER <session> 1 <tbeg> <tdur> <NA> <NA> <label> <NA> <NA>, times with
/// three decimals. Zero-length records are skipped on write.
void WriteRttm(std::ostream &os, const DiarizationHypothesis &hyp);
void WriteRttmFile(const std::string &path, const HypothesisSet &set);

/// Reads SPEAKER lines; other record types and ";;" comments are skipped.
/// Records come back sorted. Throws FormatError on malformed lines.
HypothesisSet ReadRttm(std::istream &is);
HypothesisSet ReadRttmFile(const std::string &path);

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_HYPOTHESIS_H_
