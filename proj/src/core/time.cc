// src/core/time.cc

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

#include "rolediar/core/time.h"

#include <cmath>
#include <cstdio>

#include "rolediar/core/error.h"

namespace rolediar {

Millis SecondsToMillis(double seconds) {
  return static_cast<Millis>(std::llround(seconds * 1000.0));
}

double MillisToSeconds(Millis ms) { return static_cast<double>(ms) / 1000.0; }

std::string FormatSeconds(Millis ms) {
  // Integer formatting avoids binary rounding of the third decimal.
  const bool negative = ms < 0;
  const Millis mag = negative ? -ms : ms;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", negative ? "-" : "",
                static_cast<long long>(mag / 1000),
                static_cast<long long>(mag % 1000));
  return buf;
}

TimeInterval::TimeInterval(Millis start, Millis end) : start_(start), end_(end) {
  if (start < 0)
    throw ParameterError("time interval starts before zero: " +
                         FormatSeconds(start));
  if (end < start)
    throw ParameterError("time interval ends before it starts: [" +
                         FormatSeconds(start) + ", " + FormatSeconds(end) + ")");
}

TimeInterval TimeInterval::FromSeconds(double start, double end) {
  return TimeInterval(SecondsToMillis(start), SecondsToMillis(end));
}

Millis TimeInterval::OverlapWith(const TimeInterval &other) const {
  const Millis lo = start_ > other.start_ ? start_ : other.start_;
  const Millis hi = end_ < other.end_ ? end_ : other.end_;
  return hi > lo ? hi - lo : 0;
}

}  // namespace rolediar
