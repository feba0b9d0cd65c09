// include/rolediar/segmenter/segmenter.h

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

#ifndef ROLEDIAR_SEGMENTER_SEGMENTER_H_
#define ROLEDIAR_SEGMENTER_SEGMENTER_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rolediar/core/types.h"

namespace rolediar::segmenter {

enum class StrategyKind { kOracle, kSentenceMarks, kSilenceGap };

/// Parses "oracle", "sentence-marks" or "silence-gap".
StrategyKind ParseStrategyKind(const std::string &name);
std::string StrategyName(StrategyKind kind);

struct SegmentationStrategy {
  StrategyKind kind = StrategyKind::kSentenceMarks;
  Millis gap_threshold = 1000;

  void Validate() const;  // gap_threshold > 0
};

/// First-word positions of sentences, per session.
using SentenceMarks = std::map<std::string, std::vector<std::size_t>>;

/// Starts a new segment wherever the silence between consecutive words is
/// strictly greater than `gap_threshold`. Words must be ordered by start
/// time. Segment ids count from 0; first_word is the index into `words`.
std::vector<TextSegment> Presegment(const std::vector<TimedWord> &words,
                                    Millis gap_threshold);

/// Splits before every marked word. Marks are positions inside the segment
/// (0 is allowed and changes nothing); a mark >= segment.size() throws
/// ParameterError. Output ids count up from `first_id`.
std::vector<TextSegment> SentenceSplit(const TextSegment &segment,
                                       const std::vector<std::size_t> &marks,
                                       std::size_t first_id = 0);

/// Maximal runs of words sharing a reference speaker. Throws ParameterError
/// if any word lacks a speaker. `first_word` offsets the word positions.
std::vector<TextSegment> OracleSplit(const std::vector<TimedWord> &words,
                                     std::size_t first_word = 0,
                                     std::size_t first_id = 0);

/// Presegmentation followed by the strategy's refinement inside each
/// pre-segment. `marks` holds session-level word positions (used by the
/// sentence-marks strategy only). Ids are renumbered 0..n-1.
std::vector<TextSegment> SegmentSession(const std::vector<TimedWord> &words,
                                        const SegmentationStrategy &strategy,
                                        const std::vector<std::size_t> &marks = {});

/// Sentence starts implied by punctuation in raw transcript tokens: a word
/// starts a sentence when it is the first word or the preceding raw text
/// ends in a pause mark (. ? ! ; : or an ellipsis). Commas never split.
/// Positions refer to the tokens that survive normalization.
std::vector<std::size_t> SentenceMarksFromPunctuation(
    const std::vector<std::string> &raw_tokens);

/// True if every word of the segment carries the same reference speaker.
bool IsSpeakerPure(const TextSegment &segment);

/// "<session-id> <word-index>" lines; positions are sorted and deduplicated
/// per session. Throws FormatError on malformed lines.
SentenceMarks ReadSentenceMarks(std::istream &is);
SentenceMarks ReadSentenceMarksFile(const std::string &path);
void WriteSentenceMarks(std::ostream &os, const SentenceMarks &marks);

}  // namespace rolediar::segmenter

#endif  // ROLEDIAR_SEGMENTER_SEGMENTER_H_
