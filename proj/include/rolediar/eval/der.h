// include/rolediar/eval/der.h

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

#ifndef ROLEDIAR_EVAL_DER_H_
#define ROLEDIAR_EVAL_DER_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/hypothesis.h"

namespace rolediar::eval {

struct ScoringOptions {
  Millis collar = 250;         // excluded on each side of every reference boundary
  bool ignore_overlap = true;  // skip time where >= 2 reference speakers talk
};

/// Error time in milliseconds; speaker-weighted like md-eval, so overlapped
/// speech counts once per speaker when it is scored.
struct DerCounts {
  Millis scored = 0;  // reference speaker time in the scored region
  Millis missed = 0;
  Millis false_alarm = 0;
  Millis confusion = 0;

  DerCounts &operator+=(const DerCounts &o);
};

struct DerReport {
  DerCounts counts;
  double der = 0.0;  // percentages of scored time
  double missed = 0.0;
  double false_alarm = 0.0;
  double confusion = 0.0;
  double scored_time = 0.0;  // seconds
  std::map<std::string, std::string> mapping;  // hypothesis label -> reference speaker

  static DerReport FromCounts(const DerCounts &counts);
};

/// md-eval style scoring over the extent of the reference. Hypothesis labels
/// are mapped one-to-one onto reference speakers so that the mapped overlap
/// is maximal. ScoringError if the reference has no speech.
DerReport ScoreDer(const DiarizationHypothesis &reference,
                   const DiarizationHypothesis &hypothesis,
                   const ScoringOptions &opts = {});

/// Pools error and scored time over every reference session; a session with
/// no hypothesis counts as entirely missed.
DerReport ScoreDerSet(const HypothesisSet &reference, const HypothesisSet &hypothesis,
                      const ScoringOptions &opts = {});

/// Maximum-weight assignment of rows to columns (rectangular allowed). Returns
/// the column of each row or -1 when the row stays unmatched.
std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight);

/// "session  DER  missed  false_alarm  confusion  scored_s", tab separated,
/// with a header line and a final pooled "ALL" row.
void WriteDerTable(std::ostream &os, const std::map<std::string, DerReport> &per_session,
                   const DerReport &pooled);

}  // namespace rolediar::eval

#endif  // ROLEDIAR_EVAL_DER_H_
