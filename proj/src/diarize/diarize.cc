// src/diarize/diarize.cc

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

#include "rolediar/diarize/diarize.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rolediar/core/error.h"
#include "rolediar/core/intervals.h"
#include "rolediar/core/parallel.h"

namespace rolediar::diarize {

HacResult AverageLinkHac(const Eigen::MatrixXd &similarity, int num_clusters) {
  const auto n = static_cast<std::size_t>(similarity.rows());
  if (similarity.cols() != similarity.rows())
    throw ParameterError("similarity matrix must be square");
  if (num_clusters < 1 || static_cast<std::size_t>(num_clusters) > n)
    throw ParameterError("cannot form " + std::to_string(num_clusters) + " clusters from " +
                         std::to_string(n) + " windows");

  // Active clusters are indexed by their smallest member, which never
  // changes when a cluster absorbs one with larger members. link(i, j) holds
  // the summed similarity between clusters i and j.
  Eigen::MatrixXd link = similarity;
  std::vector<std::size_t> size(n, 1), owner(n);
  std::vector<bool> active(n, true);
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;

  HacResult result;
  for (std::size_t remaining = n; remaining > static_cast<std::size_t>(num_clusters);
       --remaining) {
    std::size_t best_i = 0, best_j = 0;
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double avg = link(i, j) / static_cast<double>(size[i] * size[j]);
        if (!found || avg > best) {
          best = avg;
          best_i = i;
          best_j = j;
          found = true;
        }
      }
    }
    result.merges.push_back({best_i, best_j, best});
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == best_i || k == best_j) continue;
      link(best_i, k) += link(best_j, k);
      link(k, best_i) = link(best_i, k);
    }
    size[best_i] += size[best_j];
    active[best_j] = false;
    for (std::size_t k = 0; k < n; ++k)
      if (owner[k] == best_j) owner[k] = best_i;
  }

  std::vector<int> index(n, -1);
  int next = 0;
  result.cluster.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (index[owner[k]] < 0) index[owner[k]] = next++;
    result.cluster[k] = index[owner[k]];
  }
  return result;
}

Eigen::MatrixXd SimilarityMatrix(const std::vector<embed::AudioWindow> &windows,
                                 const plda::PldaModel &model, int jobs) {
  const std::size_t n = windows.size();
  std::vector<Eigen::VectorXd> t(n);
  ParallelFor(n, jobs, [&](std::size_t i) { t[i] = model.Transform(windows[i].embedding); });
  Eigen::MatrixXd s(n, n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) s(i, j) = model.ScoreTransformed(t[i], t[j]);
  });
  return s;
}

DiarizationHypothesis WindowsToHypothesis(const std::string &session_id,
                                          const std::vector<TimeInterval> &windows,
                                          const std::vector<std::string> &labels) {
  if (windows.size() != labels.size())
    throw ParameterError("one label per window is required");
  std::vector<std::size_t> order(windows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return windows[a] < windows[b];
  });

  std::vector<LabeledInterval> pieces;
  Millis covered = std::numeric_limits<Millis>::min();  // end of assigned time so far
  for (std::size_t k = 0; k < order.size(); ++k) {
    const TimeInterval &w = windows[order[k]];
    Millis lo = std::max(w.start(), covered);
    Millis hi = w.end();
    if (k + 1 < order.size()) {
      const TimeInterval &next = windows[order[k + 1]];
      if (next.start() < w.end()) hi = std::max(lo, std::min(hi, (next.start() + w.end()) / 2));
    }
    if (hi > lo) {
      pieces.push_back({TimeInterval(lo, hi), labels[order[k]]});
      covered = hi;
    }
  }
  return DiarizationHypothesis{session_id, MergeAdjacent(pieces, 0)};
}

DiarizationHypothesis HacCluster(const std::string &session_id,
                                 const std::vector<embed::AudioWindow> &windows,
                                 const plda::PldaModel &model, int num_clusters, int jobs) {
  const HacResult hac = AverageLinkHac(SimilarityMatrix(windows, model, jobs), num_clusters);
  std::vector<TimeInterval> spans;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    spans.push_back(windows[i].interval);
    labels.push_back("spk" + std::to_string(hac.cluster[i] + 1));
  }
  return WindowsToHypothesis(session_id, spans, labels);
}

double SelectTopA(const std::vector<roles::RoleAssignment> &assignments, double a_percent) {
  if (assignments.empty()) throw ParameterError("no role assignments to select from");
  if (!(a_percent > 0.0 && a_percent <= 100.0))
    throw ParameterError("a must lie in (0, 100]");
  std::vector<double> c;
  for (const auto &a : assignments) c.push_back(a.confidence);
  std::sort(c.begin(), c.end(), std::greater<>());
  const double exact = a_percent / 100.0 * static_cast<double>(c.size());
  // The small slack keeps e.g. 70% of 10 at 7 despite rounding in a/100.
  const auto k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(exact - 1e-9)), 1, c.size());
  return std::nextafter(c[k - 1], -std::numeric_limits<double>::infinity());
}

std::vector<SpeakerProfile> EstimateProfiles(const std::vector<ProfileInput> &inputs,
                                             double theta,
                                             const std::vector<RoleLabel> &roles) {
  std::vector<SpeakerProfile> out;
  for (const RoleLabel &role : roles) {
    EmbeddingVector gated, all;
    int n_gated = 0, n_all = 0;
    for (const ProfileInput &in : inputs) {
      if (in.assignment.role.index != role.index) continue;
      if (n_all == 0) {
        all = EmbeddingVector::Zero(in.embedding.size());
        gated = EmbeddingVector::Zero(in.embedding.size());
      } else if (in.embedding.size() != all.size()) {
        throw ParameterError("segment embeddings differ in dimension");
      }
      all += in.embedding;
      ++n_all;
      if (in.assignment.confidence > theta) {
        gated += in.embedding;
        ++n_gated;
      }
    }
    if (n_all == 0)
      throw ProfileEstimationError("no segment was assigned to role " + role.name);
    if (n_gated > 0)
      out.push_back({role, gated / n_gated, n_gated, false});
    else
      out.push_back({role, all / n_all, n_all, true});
  }
  return out;
}

DiarizationHypothesis ClassifyWindows(const std::string &session_id,
                                      const std::vector<embed::AudioWindow> &windows,
                                      const std::vector<SpeakerProfile> &profiles,
                                      const plda::PldaModel &model, int jobs) {
  if (profiles.empty()) throw ParameterError("classification needs at least one profile");
  std::vector<Eigen::VectorXd> targets;
  for (const auto &p : profiles) targets.push_back(model.Transform(p.vector));
  std::vector<std::string> labels(windows.size());
  ParallelFor(windows.size(), jobs, [&](std::size_t i) {
    const Eigen::VectorXd t = model.Transform(windows[i].embedding);
    std::size_t best = 0;
    double best_score = model.ScoreTransformed(t, targets[0]);
    for (std::size_t j = 1; j < targets.size(); ++j) {
      const double s = model.ScoreTransformed(t, targets[j]);
      if (s > best_score) {
        best_score = s;
        best = j;
      }
    }
    labels[i] = profiles[best].role.name;
  });
  std::vector<TimeInterval> spans;
  for (const auto &w : windows) spans.push_back(w.interval);
  return WindowsToHypothesis(session_id, spans, labels);
}

Mode ParseMode(const std::string &name) {
  if (name == "audio-only") return Mode::kAudioOnly;
  if (name == "language-only") return Mode::kLanguageOnly;
  if (name == "linguistically-aided") return Mode::kLinguisticallyAided;
  throw ParameterError("unknown diarization mode '" + name + "'");
}

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kAudioOnly: return "audio-only";
    case Mode::kLanguageOnly: return "language-only";
    case Mode::kLinguisticallyAided: return "linguistically-aided";
  }
  return "?";
}

namespace {

void Require(bool ok, const std::string &what, Mode mode) {
  if (!ok) throw ConfigurationError(ModeName(mode) + " diarization needs " + what);
}

}  // namespace

PipelineResult RunAidedFromAssignments(const SessionInput &session,
                                       const std::vector<roles::RoleAssignment> &assignments,
                                       const std::vector<RoleLabel> &roles,
                                       const plda::PldaModel &model,
                                       const PipelineOptions &opts) {
  Require(session.segments.has_value(), "text segments", Mode::kLinguisticallyAided);
  Require(session.windows.has_value(), "window embeddings", Mode::kLinguisticallyAided);
  const auto &segments = *session.segments;
  const auto &windows = *session.windows;
  if (assignments.size() != segments.size())
    throw ParameterError("one role assignment per segment is required");

  PipelineResult result;
  result.assignments = assignments;
  auto fall_back = [&](const std::string &why) {
    result.fallback = true;
    result.fallback_reason = why;
    result.profiles.clear();
    result.hypothesis =
        HacCluster(session.session_id, windows, model, opts.num_speakers, opts.jobs);
    return result;
  };
  if (assignments.empty()) return fall_back("no text segments");

  result.theta = opts.theta ? *opts.theta : SelectTopA(assignments, opts.a_percent);
  std::vector<ProfileInput> inputs;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].size() < opts.min_words) continue;
    auto u = embed::PoolWindows(windows, segments[i].interval());
    if (!u) continue;
    inputs.push_back({assignments[i], std::move(*u)});
  }
  try {
    result.profiles = EstimateProfiles(inputs, *result.theta, roles);
  } catch (const ProfileEstimationError &e) {
    return fall_back(e.what());
  }
  result.hypothesis =
      ClassifyWindows(session.session_id, windows, result.profiles, model, opts.jobs);
  return result;
}

PipelineResult RunPipeline(const SessionInput &session, const roles::RoleModels *role_models,
                           const plda::PldaModel *plda_model, const PipelineOptions &opts) {
  const Mode mode = opts.mode;
  switch (mode) {
    case Mode::kAudioOnly: {
      Require(session.windows.has_value(), "window embeddings", mode);
      Require(plda_model != nullptr, "a PLDA model", mode);
      PipelineResult r;
      r.hypothesis = HacCluster(session.session_id, *session.windows, *plda_model,
                                opts.num_speakers, opts.jobs);
      return r;
    }
    case Mode::kLanguageOnly: {
      Require(session.segments.has_value(), "text segments", mode);
      Require(role_models != nullptr, "role language models", mode);
      PipelineResult r;
      r.assignments = roles::AssignRoles(*session.segments, *role_models, opts.jobs);
      r.hypothesis =
          roles::LanguageOnlyDiarize(session.session_id, *session.segments, r.assignments);
      return r;
    }
    case Mode::kLinguisticallyAided: {
      Require(session.segments.has_value(), "text segments", mode);
      Require(session.windows.has_value(), "window embeddings", mode);
      Require(role_models != nullptr, "role language models", mode);
      Require(plda_model != nullptr, "a PLDA model", mode);
      return RunAidedFromAssignments(
          session, roles::AssignRoles(*session.segments, *role_models, opts.jobs),
          role_models->roles(), *plda_model, opts);
    }
  }
  throw ConfigurationError("unknown mode");
}

}  // namespace rolediar::diarize
