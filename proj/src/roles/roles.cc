// src/roles/roles.cc

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

#include "rolediar/roles/roles.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include "rolediar/core/error.h"
#include "rolediar/core/parallel.h"

namespace rolediar::roles {

RoleModels::RoleModels(std::vector<std::string> names, std::vector<lm::NGramModel> models)
    : models_(std::move(models)) {
  if (names.size() != models_.size())
    throw ParameterError("role names and role models differ in number");
  if (names.size() < 2) throw ParameterError("role recognition needs at least two roles");
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == names[i]) throw ParameterError("duplicate role name " + names[i]);
    roles_.push_back(RoleLabel{static_cast<int>(i) + 1, names[i]});
  }
}

RoleAssignment AssignFromPerplexities(std::size_t segment_id,
                                      std::vector<double> perplexities,
                                      const std::vector<RoleLabel> &roles) {
  if (perplexities.size() < 2 || perplexities.size() != roles.size())
    throw ParameterError("need one perplexity per role and at least two roles");
  std::size_t best = 0;
  for (std::size_t j = 1; j < perplexities.size(); ++j)
    if (perplexities[j] < perplexities[best]) best = j;
  double confidence = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < perplexities.size(); ++j)
    if (j != best)
      confidence = std::min(confidence, std::abs(perplexities[j] - perplexities[best]));
  // inf - inf when every model gives zero probability: no evidence at all.
  if (std::isnan(confidence)) confidence = 0.0;
  return RoleAssignment{segment_id, roles[best], std::move(perplexities), confidence};
}

RoleAssignment AssignRole(const TextSegment &segment, const RoleModels &models) {
  if (segment.size() == 0) throw ParameterError("cannot assign a role to an empty segment");
  const std::vector<std::string> tokens = segment.Tokens();
  std::vector<double> pp(models.size());
  for (std::size_t i = 0; i < models.size(); ++i)
    pp[i] = lm::Perplexity(models.model(i), tokens);
  return AssignFromPerplexities(segment.id(), std::move(pp), models.roles());
}

std::vector<RoleAssignment> AssignRoles(const std::vector<TextSegment> &segments,
                                        const RoleModels &models, int jobs) {
  std::vector<RoleAssignment> out(segments.size());
  ParallelFor(segments.size(), jobs,
              [&](std::size_t i) { out[i] = AssignRole(segments[i], models); });
  return out;
}

DiarizationHypothesis LanguageOnlyDiarize(const std::string &session_id,
                                          const std::vector<TextSegment> &segments,
                                          const std::vector<RoleAssignment> &assignments) {
  if (segments.size() != assignments.size())
    throw ParameterError("one role assignment per segment is required");
  DiarizationHypothesis hyp{session_id, {}};
  for (std::size_t i = 0; i < segments.size(); ++i)
    hyp.records.push_back({segments[i].interval(), assignments[i].role.name});
  hyp.Sort();
  return hyp;
}

DiarizationHypothesis LanguageOnlyDiarize(const std::string &session_id,
                                          const std::vector<TextSegment> &segments,
                                          const RoleModels &models, int jobs) {
  return LanguageOnlyDiarize(session_id, segments, AssignRoles(segments, models, jobs));
}

void WriteAssignments(std::ostream &os, const std::string &session_id,
                      const std::vector<RoleAssignment> &assignments) {
  char buf[40];
  for (const RoleAssignment &a : assignments) {
    os << session_id << ' ' << a.segment_id << ' ' << a.role.name;
    for (double pp : a.perplexities) {
      std::snprintf(buf, sizeof(buf), " %.6f", pp);
      os << buf;
    }
    std::snprintf(buf, sizeof(buf), " %.6f", a.confidence);
    os << buf << '\n';
  }
}

namespace {

lm::NGramModel UniformMix(const std::vector<const lm::NGramModel *> &parts) {
  if (parts.size() == 1) return *parts[0];
  lm::InterpolationWeights w{std::vector<double>(parts.size(), 1.0 / parts.size())};
  return lm::Interpolate(parts, w);
}

}  // namespace

RoleLmSet BuildRoleModels(const RoleLmTrainingData &data, const RoleLmOptions &opts) {
  const std::size_t n = data.role_names.size();
  if (n < 2) throw ParameterError("role recognition needs at least two roles");
  if (data.role_train.size() != n || data.role_dev.size() != n)
    throw ParameterError("need one training and one development corpus per role");

  lm::NGramModel background = lm::TrainKneserNey(data.background, opts.background);
  std::vector<std::optional<lm::NGramModel>> role(n);
  ParallelFor(n, opts.jobs, [&](std::size_t i) {
    role[i].emplace(lm::TrainKneserNey(data.role_train[i], opts.role));
  });
  std::vector<lm::NGramModel> role_models;
  for (auto &m : role) role_models.push_back(std::move(*m));

  std::vector<lm::NGramModel> others;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<const lm::NGramModel *> parts;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) parts.push_back(&role_models[j]);
    others.push_back(UniformMix(parts));
  }

  std::vector<lm::InterpolationWeights> weights(n);
  std::vector<std::optional<lm::NGramModel>> plus(n);
  ParallelFor(n, opts.jobs, [&](std::size_t i) {
    const std::vector<const lm::NGramModel *> parts = {&background, &role_models[i],
                                                       &others[i]};
    weights[i] = lm::OptimizeWeights(parts, data.role_dev[i], opts.search);
    plus[i].emplace(lm::Interpolate(parts, weights[i]));
  });
  std::vector<lm::NGramModel> scoring;
  for (auto &m : plus) scoring.push_back(std::move(*m));

  std::vector<lm::NGramModel> background_plus;
  lm::InterpolationWeights background_weights{{1.0, 0.0}};
  if (opts.build_background_plus) {
    std::vector<const lm::NGramModel *> all;
    for (const auto &m : role_models) all.push_back(&m);
    const lm::NGramModel mixture = UniformMix(all);
    lm::Corpus pooled{"pooled-dev", {}};
    for (const auto &dev : data.role_dev)
      pooled.sentences.insert(pooled.sentences.end(), dev.sentences.begin(),
                              dev.sentences.end());
    const std::vector<const lm::NGramModel *> parts = {&background, &mixture};
    background_weights = lm::OptimizeWeights(parts, pooled, opts.search);
    background_plus.push_back(lm::Interpolate(parts, background_weights));
  }

  return RoleLmSet{std::move(role_models), std::move(others), std::move(weights),
                   std::move(background_plus), std::move(background_weights),
                   RoleModels(data.role_names, std::move(scoring))};
}

}  // namespace rolediar::roles
