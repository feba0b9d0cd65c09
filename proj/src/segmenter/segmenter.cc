// src/segmenter/segmenter.cc

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

#include "rolediar/segmenter/segmenter.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar::segmenter {

StrategyKind ParseStrategyKind(const std::string &name) {
  if (name == "oracle") return StrategyKind::kOracle;
  if (name == "sentence-marks") return StrategyKind::kSentenceMarks;
  if (name == "silence-gap") return StrategyKind::kSilenceGap;
  throw ParameterError("unknown segmentation strategy '" + name + "'");
}

std::string StrategyName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kOracle: return "oracle";
    case StrategyKind::kSentenceMarks: return "sentence-marks";
    case StrategyKind::kSilenceGap: return "silence-gap";
  }
  return "?";
}

void SegmentationStrategy::Validate() const {
  if (gap_threshold <= 0) throw ParameterError("gap threshold must be positive");
}

std::vector<TextSegment> Presegment(const std::vector<TimedWord> &words,
                                    Millis gap_threshold) {
  std::vector<TextSegment> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= words.size(); ++i) {
    if (i < words.size()) {
      if (words[i].interval.start() < words[i - 1].interval.start())
        throw OrderingError("words are not ordered by start time");
      if (words[i].interval.start() - words[i - 1].interval.end() <= gap_threshold)
        continue;
    }
    if (i > begin) {
      out.emplace_back(std::vector<TimedWord>(words.begin() + begin, words.begin() + i),
                       out.size(), begin);
    }
    begin = i;
  }
  return out;
}

std::vector<TextSegment> SentenceSplit(const TextSegment &segment,
                                       const std::vector<std::size_t> &marks,
                                       std::size_t first_id) {
  std::vector<std::size_t> cuts;
  for (std::size_t m : marks) {
    if (m >= segment.size())
      throw ParameterError("sentence mark " + std::to_string(m) +
                           " is outside a segment of " + std::to_string(segment.size()) +
                           " words");
    if (m > 0) cuts.push_back(m);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(segment.size());

  std::vector<TextSegment> out;
  const auto &words = segment.words();
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    out.emplace_back(std::vector<TimedWord>(words.begin() + begin, words.begin() + cut),
                     first_id + out.size(), segment.first_word() + begin);
    begin = cut;
  }
  return out;
}

std::vector<TextSegment> OracleSplit(const std::vector<TimedWord> &words,
                                     std::size_t first_word, std::size_t first_id) {
  for (const TimedWord &w : words)
    if (!w.speaker)
      throw ParameterError("oracle segmentation needs a reference speaker on every word");
  std::vector<TextSegment> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= words.size(); ++i) {
    if (i < words.size() && *words[i].speaker == *words[begin].speaker) continue;
    out.emplace_back(std::vector<TimedWord>(words.begin() + begin, words.begin() + i),
                     first_id + out.size(), first_word + begin);
    begin = i;
  }
  return out;
}

std::vector<TextSegment> SegmentSession(const std::vector<TimedWord> &words,
                                        const SegmentationStrategy &strategy,
                                        const std::vector<std::size_t> &marks) {
  strategy.Validate();
  std::vector<TextSegment> refined;
  std::vector<std::size_t> sorted_marks(marks);
  std::sort(sorted_marks.begin(), sorted_marks.end());
  for (const TextSegment &pre : Presegment(words, strategy.gap_threshold)) {
    std::vector<TextSegment> parts;
    switch (strategy.kind) {
      case StrategyKind::kOracle:
        parts = OracleSplit(pre.words(), pre.first_word());
        break;
      case StrategyKind::kSentenceMarks: {
        std::vector<std::size_t> local;
        auto lo = std::lower_bound(sorted_marks.begin(), sorted_marks.end(), pre.first_word());
        for (; lo != sorted_marks.end() && *lo < pre.first_word() + pre.size(); ++lo)
          local.push_back(*lo - pre.first_word());
        parts = SentenceSplit(pre, local);
        break;
      }
      case StrategyKind::kSilenceGap:
        parts.push_back(pre);
        break;
    }
    for (TextSegment &p : parts)
      refined.emplace_back(p.words(), refined.size(), p.first_word());
  }
  return refined;
}

std::vector<std::size_t> SentenceMarksFromPunctuation(
    const std::vector<std::string> &raw_tokens) {
  std::vector<std::size_t> marks;
  std::size_t position = 0;
  bool pending = true;
  for (const std::string &raw : raw_tokens) {
    const bool is_word = !NormalizeToken(raw).empty();
    if (is_word) {
      if (pending) marks.push_back(position);
      pending = false;
      ++position;
    }
    // Trailing run of punctuation decides whether a pause follows.
    std::string_view tail(raw);
    while (!tail.empty() && (tail.back() == '"' || tail.back() == ')')) tail.remove_suffix(1);
    if (tail.ends_with("\u2026")) {
      pending = true;
      continue;
    }
    for (auto it = raw.rbegin(); it != raw.rend(); ++it) {
      const char c = *it;
      if (c == '.' || c == '?' || c == '!' || c == ';' || c == ':') {
        pending = true;
        break;
      }
      if (c == ',' || c == '"' || c == '\'' || c == ')' || c == ']') continue;
      break;
    }
  }
  return marks;
}

bool IsSpeakerPure(const TextSegment &segment) {
  const auto &first = segment.words().front().speaker;
  if (!first) return false;
  for (const TimedWord &w : segment.words())
    if (w.speaker != first) return false;
  return true;
}

SentenceMarks ReadSentenceMarks(std::istream &is) {
  SentenceMarks marks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 2)
      throw FormatError("sentence-mark line " + std::to_string(line_no) +
                        ": expected '<session-id> <word-index>'");
    const long long idx = ParseInteger(f[1], "word index");
    if (idx < 0) throw FormatError("negative word index in sentence-mark file");
    marks[f[0]].push_back(static_cast<std::size_t>(idx));
  }
  for (auto &[id, v] : marks) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return marks;
}

SentenceMarks ReadSentenceMarksFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open sentence-mark file " + path);
  return ReadSentenceMarks(is);
}

void WriteSentenceMarks(std::ostream &os, const SentenceMarks &marks) {
  for (const auto &[id, positions] : marks)
    for (std::size_t p : positions) os << id << ' ' << p << '\n';
}

}  // namespace rolediar::segmenter
