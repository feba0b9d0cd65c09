// src/core/intervals.cc

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

#include "rolediar/core/intervals.h"

#include <algorithm>

#include "rolediar/core/error.h"

namespace rolediar {

std::vector<LabeledInterval> MergeAdjacent(
    const std::vector<LabeledInterval> &intervals, Millis max_gap) {
  if (max_gap < 0) throw ParameterError("max_gap must be non-negative");
  std::vector<LabeledInterval> out;
  out.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i > 0 && intervals[i].interval.start() < intervals[i - 1].interval.start())
      throw OrderingError("intervals are not sorted by start time");
    const LabeledInterval &cur = intervals[i];
    if (!out.empty() && out.back().label == cur.label &&
        cur.interval.start() - out.back().interval.end() <= max_gap) {
      LabeledInterval &last = out.back();
      last.interval = TimeInterval(last.interval.start(),
                                   std::max(last.interval.end(), cur.interval.end()));
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

Millis TotalDuration(const std::vector<LabeledInterval> &intervals) {
  Millis total = 0;
  for (const LabeledInterval &li : intervals) total += li.interval.duration();
  return total;
}

}  // namespace rolediar
