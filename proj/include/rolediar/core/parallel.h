// include/rolediar/core/parallel.h

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

#ifndef ROLEDIAR_CORE_PARALLEL_H_
#define ROLEDIAR_CORE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rolediar {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is
/// processed exactly once; callers write results into slot i so the output
/// never depends on scheduling. The first exception thrown is rethrown.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)> &fn);

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_PARALLEL_H_
