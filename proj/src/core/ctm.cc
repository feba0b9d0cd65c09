// src/core/ctm.cc

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

#include "rolediar/core/ctm.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar {

SessionWords ReadCtm(std::istream &is) {
  SessionWords sessions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.empty() || f[0].rfind(";;", 0) == 0) continue;
    if (f.size() < 5 || f.size() > 7)
      throw FormatError("CTM line " + std::to_string(line_no) +
                        ": expected 5 to 7 fields, got " + std::to_string(f.size()));
    const double start = ParseDouble(f[2], "CTM start time");
    const double dur = ParseDouble(f[3], "CTM duration");
    if (start < 0 || dur < 0)
      throw FormatError("CTM line " + std::to_string(line_no) +
                        ": negative start or duration");
    TimedWord word;
    word.token = NormalizeToken(f[4]);
    const Millis s = SecondsToMillis(start);
    word.interval = TimeInterval(s, s + SecondsToMillis(dur));
    if (f.size() >= 6 && f[5] != "-") word.speaker = f[5];
    if (f.size() == 7) word.confidence = ParseDouble(f[6], "CTM confidence");
    if (word.token.empty()) continue;
    sessions[f[0]].push_back(std::move(word));
  }
  for (auto &[id, words] : sessions) {
    std::stable_sort(words.begin(), words.end(),
                     [](const TimedWord &a, const TimedWord &b) {
                       return a.interval.start() < b.interval.start();
                     });
  }
  return sessions;
}

SessionWords ReadCtmFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open CTM file " + path);
  return ReadCtm(is);
}

void WriteCtm(std::ostream &os, const std::string &session_id,
              const std::vector<TimedWord> &words) {
  for (const TimedWord &w : words) {
    os << session_id << " 1 " << FormatSeconds(w.interval.start()) << ' '
       << FormatSeconds(w.interval.duration()) << ' ' << w.token;
    if (w.speaker || w.confidence) os << ' ' << (w.speaker ? *w.speaker : "-");
    if (w.confidence) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *w.confidence);
      os << ' ' << buf;
    }
    os << '\n';
  }
}

}  // namespace rolediar
