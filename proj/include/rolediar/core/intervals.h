// include/rolediar/core/intervals.h

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

#ifndef ROLEDIAR_CORE_INTERVALS_H_
#define ROLEDIAR_CORE_INTERVALS_H_

#include <vector>

#include "rolediar/core/types.h"

namespace rolediar {

/// Coalesces consecutive same-label intervals whose gap is at most
/// `max_gap`. Input must be sorted by start time (OrderingError otherwise).
/// Overlapping same-label neighbours are also coalesced.
std::vector<LabeledInterval> MergeAdjacent(
    const std::vector<LabeledInterval> &intervals, Millis max_gap);

/// Sum of interval durations.
Millis TotalDuration(const std::vector<LabeledInterval> &intervals);

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_INTERVALS_H_
