// src/core/text.cc

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

#include "rolediar/core/text.h"

#include <cctype>
#include <cerrno>
#include <cstdlib>

#include "rolediar/core/error.h"

namespace rolediar {

namespace {
bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
}  // namespace

std::string NormalizeToken(std::string_view raw) {
  std::string kept;
  kept.reserve(raw.size());
  for (char c : raw) {
    if (IsAlnum(c))
      kept.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else if (c == '\'')
      kept.push_back(c);
  }
  std::string out;
  out.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] == '\'') {
      const bool inner = i > 0 && i + 1 < kept.size() && IsAlnum(kept[i - 1]) &&
                         IsAlnum(kept[i + 1]);
      if (!inner) continue;
    }
    out.push_back(kept[i]);
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

double ParseDouble(const std::string &field, const char *what) {
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
    throw FormatError(std::string("bad ") + what + ": '" + field + "'");
  return v;
}

long long ParseInteger(const std::string &field, const char *what) {
  errno = 0;
  char *end = nullptr;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
    throw FormatError(std::string("bad ") + what + ": '" + field + "'");
  return v;
}

}  // namespace rolediar
