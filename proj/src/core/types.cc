// src/core/types.cc

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

#include "rolediar/core/types.h"

#include "rolediar/core/error.h"

namespace rolediar {

TextSegment::TextSegment(std::vector<TimedWord> words, std::size_t id,
                         std::size_t first_word)
    : words_(std::move(words)), id_(id), first_word_(first_word) {
  if (words_.empty()) throw ParameterError("text segment has no words");
  Millis end = words_.front().interval.end();
  for (std::size_t i = 1; i < words_.size(); ++i) {
    if (words_[i].interval.start() < words_[i - 1].interval.start())
      throw OrderingError("text segment words are not ordered by start time");
    end = std::max(end, words_[i].interval.end());
  }
  interval_ = TimeInterval(words_.front().interval.start(), end);
}

std::vector<std::string> TextSegment::Tokens() const {
  std::vector<std::string> tokens;
  tokens.reserve(words_.size());
  for (const TimedWord &w : words_) tokens.push_back(w.token);
  return tokens;
}

}  // namespace rolediar
