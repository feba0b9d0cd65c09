// include/rolediar/cli/app.h

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

#ifndef ROLEDIAR_CLI_APP_H_
#define ROLEDIAR_CLI_APP_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace rolediar::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad flags or parameter values
  kExitData = 2,      // unreadable or malformed input, unwritable output
  kExitPipeline = 3,  // training, modelling, scoring or pipeline failure
};

/// Settings shared by every subcommand. Each one is a flag (--collar) and a
/// key in the config file (collar=0.25); flags override the file, which
/// overrides these defaults.
struct PipelineConfig {
  std::string mode = "linguistically-aided";
  double window = 1.5;     // seconds
  double overlap = 0.5;    // fraction of the window length
  double gap = 1.0;        // pre-segmentation silence threshold, seconds
  double merge_gap = 0.2;  // seconds
  double collar = 0.25;    // seconds
  double a_percent = 100.0;
  std::optional<double> theta;
  double alpha = 0.5;      // PLDA adaptation weight
  std::string segmentation = "sentence-marks";
  int num_speakers = 2;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Runs the command line; never throws. Usage text and errors go to `err`,
/// results to `out`.
int Run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);

}  // namespace rolediar::cli

#endif  // ROLEDIAR_CLI_APP_H_
