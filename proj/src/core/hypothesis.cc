// src/core/hypothesis.cc

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

#include "rolediar/core/hypothesis.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar {

void DiarizationHypothesis::Sort() {
  std::sort(records.begin(), records.end(),
            [](const LabeledInterval &a, const LabeledInterval &b) {
              if (a.interval != b.interval) return a.interval < b.interval;
              return a.label < b.label;
            });
}

bool DiarizationHypothesis::IsNonOverlapping() const {
  std::vector<TimeInterval> spans;
  for (const auto &r : records) spans.push_back(r.interval);
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i)
    if (spans[i].start() < spans[i - 1].end()) return false;
  return true;
}

std::vector<std::string> DiarizationHypothesis::Labels() const {
  std::set<std::string> s;
  for (const auto &r : records) s.insert(r.label);
  return {s.begin(), s.end()};
}

Millis DiarizationHypothesis::LabeledDuration() const {
  Millis total = 0;
  for (const auto &r : records) total += r.interval.duration();
  return total;
}

void WriteRttm(std::ostream &os, const DiarizationHypothesis &hyp) {
  for (const auto &r : hyp.records) {
    if (r.interval.duration() == 0) continue;
    os << "SPEAKER " << hyp.session_id << " 1 " << FormatSeconds(r.interval.start())
       << ' ' << FormatSeconds(r.interval.duration()) << " <NA> <NA> " << r.label
       << " <NA> <NA>\n";
  }
}

void WriteRttmFile(const std::string &path, const HypothesisSet &set) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write RTTM file " + path);
  for (const auto &[id, hyp] : set) WriteRttm(os, hyp);
}

HypothesisSet ReadRttm(std::istream &is) {
  HypothesisSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = SplitWhitespace(line);
    if (f.empty() || f[0].rfind(";;", 0) == 0 || f[0] != "SPEAKER") continue;
    if (f.size() < 8)
      throw FormatError("RTTM line " + std::to_string(line_no) +
                        ": expected at least 8 fields");
    const double beg = ParseDouble(f[3], "RTTM onset");
    const double dur = ParseDouble(f[4], "RTTM duration");
    if (beg < 0 || dur < 0)
      throw FormatError("RTTM line " + std::to_string(line_no) +
                        ": negative onset or duration");
    const Millis s = SecondsToMillis(beg);
    auto &hyp = set[f[1]];
    hyp.session_id = f[1];
    hyp.records.push_back({TimeInterval(s, s + SecondsToMillis(dur)), f[7]});
  }
  for (auto &[id, hyp] : set) hyp.Sort();
  return set;
}

HypothesisSet ReadRttmFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open RTTM file " + path);
  return ReadRttm(is);
}

}  // namespace rolediar
