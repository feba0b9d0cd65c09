// include/rolediar/roles/roles.h

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

#ifndef ROLEDIAR_ROLES_ROLES_H_
#define ROLEDIAR_ROLES_ROLES_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rolediar/core/hypothesis.h"
#include "rolediar/core/types.h"
#include "rolediar/lm/corpus.h"
#include "rolediar/lm/interpolate.h"
#include "rolediar/lm/kneser-ney.h"
#include "rolediar/lm/ngram-model.h"

namespace rolediar::roles {

struct RoleAssignment {
  std::size_t segment_id = 0;
  RoleLabel role;
  std::vector<double> perplexities;  // one per role, in role order
  double confidence = 0.0;           // gap to the runner-up perplexity
};

/// One scoring model per role; roles are numbered 1..N in list order.
class RoleModels {
 public:
  RoleModels(std::vector<std::string> names, std::vector<lm::NGramModel> models);

  std::size_t size() const { return roles_.size(); }
  const std::vector<RoleLabel> &roles() const { return roles_; }
  const RoleLabel &role(std::size_t i) const { return roles_.at(i); }
  const lm::NGramModel &model(std::size_t i) const { return models_.at(i); }

 private:
  std::vector<RoleLabel> roles_;
  std::vector<lm::NGramModel> models_;
};

/// Picks the role with the smallest perplexity (lowest index on ties) and
/// sets confidence = min_{j != best} |pp_j - pp_best|. Needs >= 2 roles.
RoleAssignment AssignFromPerplexities(std::size_t segment_id,
                                      std::vector<double> perplexities,
                                      const std::vector<RoleLabel> &roles);

/// Throws ParameterError on an empty segment.
RoleAssignment AssignRole(const TextSegment &segment, const RoleModels &models);

/// Scores segments in parallel; output order follows input order.
std::vector<RoleAssignment> AssignRoles(const std::vector<TextSegment> &segments,
                                        const RoleModels &models, int jobs = 1);

/// Labels each segment's span with its assigned role name. `assignments`
/// must be parallel to `segments`.
DiarizationHypothesis LanguageOnlyDiarize(const std::string &session_id,
                                          const std::vector<TextSegment> &segments,
                                          const std::vector<RoleAssignment> &assignments);
DiarizationHypothesis LanguageOnlyDiarize(const std::string &session_id,
                                          const std::vector<TextSegment> &segments,
                                          const RoleModels &models, int jobs = 1);

/// `<session> <segment-id> <role-name> <pp-1> ... <pp-N> <confidence>`.
void WriteAssignments(std::ostream &os, const std::string &session_id,
                      const std::vector<RoleAssignment> &assignments);

// ---------------------------------------------------------------------------
// Building the scoring models.
//
//   G+     = w_g G (+) (1 - w_g) R~               R~   = uniform mix of all R_j
//   R_i+   = w_gi G (+) w_ri R_i (+) rest R~_i    R~_i = uniform mix of R_j, j != i
//
// with every weight vector chosen to minimise perplexity on a development
// corpus (pooled for G+, role-specific for R_i+).

struct RoleLmTrainingData {
  lm::Corpus background;                 // out-of-domain text for G
  std::vector<std::string> role_names;   // N >= 2
  std::vector<lm::Corpus> role_train;    // R_i training text
  std::vector<lm::Corpus> role_dev;      // R_i+ weight tuning
};

struct RoleLmOptions {
  lm::KneserNeyOptions background{3, std::nullopt, 1.0};
  lm::KneserNeyOptions role{3, std::nullopt, 0.0};
  lm::WeightSearchOptions search;
  bool build_background_plus = true;
  int jobs = 1;
};

struct RoleLmSet {
  std::vector<lm::NGramModel> role;            // R_i
  std::vector<lm::NGramModel> others;          // R~_i
  std::vector<lm::InterpolationWeights> role_weights;  // (w_gi, w_ri, rest)
  std::vector<lm::NGramModel> background_plus;         // G+ (0 or 1 entries)
  lm::InterpolationWeights background_weights;         // (w_g, 1 - w_g)
  RoleModels scoring;                                   // R_i+
};

RoleLmSet BuildRoleModels(const RoleLmTrainingData &data, const RoleLmOptions &opts);

}  // namespace rolediar::roles

#endif  // ROLEDIAR_ROLES_ROLES_H_
