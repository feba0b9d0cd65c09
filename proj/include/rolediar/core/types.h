// include/rolediar/core/types.h

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

#ifndef ROLEDIAR_CORE_TYPES_H_
#define ROLEDIAR_CORE_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/time.h"

namespace rolediar {

/// Fixed-dimension speaker representation (x-vector, segment embedding or
/// speaker profile).
using EmbeddingVector = Eigen::VectorXd;

struct TimedWord {
  std::string token;  // normalized
  TimeInterval interval;
  std::optional<std::string> speaker;
  std::optional<double> confidence;
};

/// A run of consecutive words of one session, assumed (or known) to be
/// spoken by a single speaker.
class TextSegment {
 public:
  /// `first_word` is the session-level index of words.front().
  /// Throws ParameterError on empty input and OrderingError if word start
  /// times decrease.
  TextSegment(std::vector<TimedWord> words, std::size_t id,
              std::size_t first_word = 0);

  const std::vector<TimedWord> &words() const { return words_; }
  const TimeInterval &interval() const { return interval_; }
  std::size_t id() const { return id_; }
  std::size_t first_word() const { return first_word_; }
  std::size_t size() const { return words_.size(); }

  std::vector<std::string> Tokens() const;

 private:
  std::vector<TimedWord> words_;
  TimeInterval interval_;
  std::size_t id_;
  std::size_t first_word_;
};

/// Role labels are 1-based ("role 1" is index 1).
struct RoleLabel {
  int index = 1;
  std::string name;

  friend bool operator==(const RoleLabel &, const RoleLabel &) = default;
};

/// A time span carrying a speaker, role or cluster label.
struct LabeledInterval {
  TimeInterval interval;
  std::string label;

  friend bool operator==(const LabeledInterval &,
                         const LabeledInterval &) = default;
};

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_TYPES_H_
