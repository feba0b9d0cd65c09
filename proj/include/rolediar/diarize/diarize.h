// include/rolediar/diarize/diarize.h

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

#ifndef ROLEDIAR_DIARIZE_DIARIZE_H_
#define ROLEDIAR_DIARIZE_DIARIZE_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/hypothesis.h"
#include "rolediar/core/types.h"
#include "rolediar/embed/embed.h"
#include "rolediar/plda/plda.h"
#include "rolediar/roles/roles.h"

namespace rolediar::diarize {

struct SpeakerProfile {
  RoleLabel role;
  EmbeddingVector vector;
  int support_count = 0;
  bool gate_fallback = false;  // no segment passed the gate; plain role mean
};

// ---------------------------------------------------------------------------
// Audio-only clustering.

struct MergeStep {
  std::size_t first = 0;   // cluster ids (smallest member index), first < second
  std::size_t second = 0;
  double similarity = 0.0;  // average pairwise similarity at merge time
};

struct HacResult {
  std::vector<int> cluster;  // per item, 0..k-1 numbered by smallest member
  std::vector<MergeStep> merges;
};

/// Average-linkage agglomeration on a symmetric similarity matrix until
/// `num_clusters` clusters remain. The pair with the highest average
/// similarity merges first; ties go to the lexicographically smallest pair of
/// cluster ids. ParameterError unless 1 <= num_clusters <= n.
HacResult AverageLinkHac(const Eigen::MatrixXd &similarity, int num_clusters);

/// Pairwise PLDA scores, rows computed in parallel.
Eigen::MatrixXd SimilarityMatrix(const std::vector<embed::AudioWindow> &windows,
                                 const plda::PldaModel &model, int jobs = 1);

DiarizationHypothesis HacCluster(const std::string &session_id,
                                 const std::vector<embed::AudioWindow> &windows,
                                 const plda::PldaModel &model, int num_clusters, int jobs = 1);

/// Turns per-window labels into a non-overlapping hypothesis: where two
/// consecutive windows overlap the shared stretch is cut at its midpoint,
/// then touching pieces with the same label are merged. The union of the
/// window intervals is preserved.
DiarizationHypothesis WindowsToHypothesis(const std::string &session_id,
                                          const std::vector<TimeInterval> &windows,
                                          const std::vector<std::string> &labels);

// ---------------------------------------------------------------------------
// Profiles from role-labelled text.

/// Threshold such that the ceil(a/100 * n) most confident assignments (plus
/// any tied with the last of them) have confidence > theta.
/// ParameterError if `assignments` is empty or a is outside (0, 100].
double SelectTopA(const std::vector<roles::RoleAssignment> &assignments, double a_percent);

struct ProfileInput {
  roles::RoleAssignment assignment;
  EmbeddingVector embedding;  // u_x
};

/// r_i = mean of u_x over the segments of role i with confidence > theta.
/// A role whose segments all fail the gate gets the mean of all its segments
/// (gate_fallback set). ProfileEstimationError if a role has no segment.
std::vector<SpeakerProfile> EstimateProfiles(const std::vector<ProfileInput> &inputs,
                                             double theta,
                                             const std::vector<RoleLabel> &roles);

/// Labels every window with argmax_i s(window, r_i) (lowest index on ties)
/// and resolves overlaps with WindowsToHypothesis.
DiarizationHypothesis ClassifyWindows(const std::string &session_id,
                                      const std::vector<embed::AudioWindow> &windows,
                                      const std::vector<SpeakerProfile> &profiles,
                                      const plda::PldaModel &model, int jobs = 1);

// ---------------------------------------------------------------------------
// End-to-end.

enum class Mode { kAudioOnly, kLanguageOnly, kLinguisticallyAided };

Mode ParseMode(const std::string &name);  // audio-only | language-only | linguistically-aided
std::string ModeName(Mode mode);

struct SessionInput {
  std::string session_id;
  std::optional<std::vector<TextSegment>> segments;       // language modes
  std::optional<std::vector<embed::AudioWindow>> windows;  // audio modes, normalized
};

struct PipelineOptions {
  Mode mode = Mode::kLinguisticallyAided;
  int num_speakers = 2;
  double a_percent = 100.0;
  std::optional<double> theta;  // overrides a_percent when set
  std::size_t min_words = 1;    // shorter segments do not feed the profiles
  int jobs = 1;
};

struct PipelineResult {
  DiarizationHypothesis hypothesis;
  bool fallback = false;  // aided mode fell back to clustering
  std::string fallback_reason;
  std::vector<roles::RoleAssignment> assignments;
  std::vector<SpeakerProfile> profiles;
  std::optional<double> theta;
};

/// Dispatches to clustering, language-only labelling, or
/// role assignment -> top-a gate -> profiles -> window classification.
/// ConfigurationError when the mode's inputs or models are missing.
PipelineResult RunPipeline(const SessionInput &session, const roles::RoleModels *role_models,
                           const plda::PldaModel *plda_model, const PipelineOptions &opts);

/// The aided pipeline after role assignment, so callers sweeping the gate
/// can reuse the assignments. `assignments` must be parallel to the
/// session's segments.
PipelineResult RunAidedFromAssignments(const SessionInput &session,
                                       const std::vector<roles::RoleAssignment> &assignments,
                                       const std::vector<RoleLabel> &roles,
                                       const plda::PldaModel &model,
                                       const PipelineOptions &opts);

}  // namespace rolediar::diarize

#endif  // ROLEDIAR_DIARIZE_DIARIZE_H_
