// include/rolediar/core/time.h

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

#ifndef ROLEDIAR_CORE_TIME_H_
#define ROLEDIAR_CORE_TIME_H_

#include <cstdint>
#include <string>

namespace rolediar {

/// Milliseconds; all boundary arithmetic is done on this integer type.
using Millis = std::int64_t;

/// Rounds seconds to the nearest millisecond.
Millis SecondsToMillis(double seconds);
double MillisToSeconds(Millis ms);

/// Formats as seconds with exactly three decimals ("12.345").
std::string FormatSeconds(Millis ms);

/// Closed-open time span [start, end) in milliseconds.
class TimeInterval {
 public:
  TimeInterval() = default;
  /// Throws ParameterError if end < start or start < 0.
  TimeInterval(Millis start, Millis end);

  static TimeInterval FromSeconds(double start, double end);

  Millis start() const { return start_; }
  Millis end() const { return end_; }
  Millis duration() const { return end_ - start_; }
  Millis midpoint() const { return start_ + (end_ - start_) / 2; }

  bool Overlaps(const TimeInterval &other) const {
    return start_ < other.end_ && other.start_ < end_;
  }
  Millis OverlapWith(const TimeInterval &other) const;

  friend bool operator==(const TimeInterval &, const TimeInterval &) = default;
  friend auto operator<=>(const TimeInterval &, const TimeInterval &) = default;

 private:
  Millis start_ = 0;
  Millis end_ = 0;
};

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_TIME_H_
