// include/rolediar/core/text.h

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

#ifndef ROLEDIAR_CORE_TEXT_H_
#define ROLEDIAR_CORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace rolediar {

/// Lowercases and strips every non-alphanumeric character except
/// apostrophes that sit between two alphanumerics ("Don't!" -> "don't").
/// May return an empty string.
std::string NormalizeToken(std::string_view raw);

/// Splits on ASCII whitespace, dropping empty fields.
std::vector<std::string> SplitWhitespace(std::string_view line);

/// Strict numeric parsing; throws FormatError naming `what` on failure.
double ParseDouble(const std::string &field, const char *what);
long long ParseInteger(const std::string &field, const char *what);

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_TEXT_H_
