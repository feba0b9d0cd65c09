// include/rolediar/cli/experiment.h

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

#ifndef ROLEDIAR_CLI_EXPERIMENT_H_
#define ROLEDIAR_CLI_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rolediar/diarize/diarize.h"
#include "rolediar/embed/embed.h"
#include "rolediar/eval/curve.h"
#include "rolediar/eval/der.h"
#include "rolediar/plda/plda.h"
#include "rolediar/roles/roles.h"
#include "rolediar/segmenter/segmenter.h"
#include "rolediar/synth/synth.h"

namespace rolediar::experiment {

/// End-to-end synthetic benchmark: a planted world, text corpora, embedding
/// training data, dev sessions (PLDA adaptation, choice of a) and test
/// sessions scored for all three modes.
struct BenchmarkOptions {
  BenchmarkOptions();

  std::uint64_t seed = 1;
  int test_sessions = 25;
  int dev_sessions = 5;
  synth::WorldOptions world;            // world.seed is derived from `seed`
  synth::SyntheticSessionSpec session;  // session.seed is derived per session
  int background_sentences = 4000;
  int role_train_sentences = 1500;
  int role_dev_sentences = 300;
  int train_speakers = 300;
  int train_per_speaker = 10;
  int lda_dim = 200;
  int plda_iterations = 10;
  double adapt_alpha = 0.5;
  segmenter::SegmentationStrategy segmentation{segmenter::StrategyKind::kSentenceMarks};
  std::vector<double> a_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  /// Gate for the aided mode; chosen as the dev-curve minimum when unset.
  std::optional<double> a_percent;
  eval::ScoringOptions scoring;
  int jobs = 1;
};

struct SystemModels {
  roles::RoleLmSet lms;
  embed::NormalizationChain chain;
  plda::PldaModel plda;           // adapted
  plda::PldaModel plda_unadapted;
};

struct PreparedSession {
  synth::SyntheticSession raw;
  eval::CurveSession curve;  // segments, normalized windows, assignments, reference
};

struct BenchmarkResult {
  double role_accuracy = 0.0;  // test segments whose role matches their majority speaker
  double chosen_a = 100.0;
  std::map<diarize::Mode, eval::DerReport> pooled;
  std::map<diarize::Mode, std::map<std::string, eval::DerReport>> per_session;
  std::map<diarize::Mode, HypothesisSet> hypotheses;
  HypothesisSet reference;
  int aided_fallbacks = 0;
  std::vector<eval::CurvePoint> dev_curve;
  std::vector<eval::CurvePoint> test_curve;
};

SystemModels TrainSystem(const synth::World &world, const BenchmarkOptions &opts,
                         const std::vector<synth::SyntheticSession> &dev);

PreparedSession PrepareSession(synth::SyntheticSession raw, const SystemModels &models,
                               const BenchmarkOptions &opts);

/// Majority reference speaker of each segment's words compared with the
/// assigned role name; returns (correct, total).
std::pair<int, int> CountRoleAgreement(const std::vector<TextSegment> &segments,
                                       const std::vector<roles::RoleAssignment> &assignments);

BenchmarkResult RunBenchmark(const BenchmarkOptions &opts);

/// Runs the benchmark and writes report.txt, der-<mode>.tsv, <mode>.rttm,
/// reference.rttm, curve.csv and dev-curve.csv into `out_dir`.
BenchmarkResult Reproduce(const BenchmarkOptions &opts, const std::string &out_dir);

struct ReproduceResult {
  BenchmarkResult base;     // mode comparison on the reference condition
  BenchmarkResult fillers;  // same benchmark with backchannel fillers injected
};

/// Both conditions, written to <out_dir>/base and <out_dir>/fillers, plus a
/// summary in <out_dir>/report.txt. `filler_fraction` applies to the second.
ReproduceResult ReproduceAll(const BenchmarkOptions &opts, double filler_fraction,
                             const std::string &out_dir);

}  // namespace rolediar::experiment

#endif  // ROLEDIAR_CLI_EXPERIMENT_H_
