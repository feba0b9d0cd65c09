// include/rolediar/plda/plda.h

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

#ifndef ROLEDIAR_PLDA_PLDA_H_
#define ROLEDIAR_PLDA_PLDA_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/types.h"

namespace rolediar::plda {

// Two-covariance PLDA: x = mu + y + e with speaker variable y ~ N(0, B) and
// residual e ~ N(0, W). Internally B and W are simultaneously diagonalized,
// T W T^T = I and T B T^T = diag(psi), which makes the verification score a
// sum of independent per-dimension terms.
class PldaModel {
 public:
  /// Throws ModelError unless shapes agree, both matrices are symmetric
  /// (1e-10 relative), W is positive definite and B positive semi-definite.
  PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd between, Eigen::MatrixXd within);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::MatrixXd &between() const { return between_; }
  const Eigen::MatrixXd &within() const { return within_; }
  const Eigen::MatrixXd &transform() const { return transform_; }
  const Eigen::VectorXd &psi() const { return psi_; }

  /// log p(v, r | same) - log p(v | diff) - log p(r | diff).
  /// ParameterError on dimension mismatch.
  double Score(const EmbeddingVector &v, const EmbeddingVector &r) const;

  /// T (x - mu); Score(v, r) == ScoreTransformed(Transform(v), Transform(r)).
  Eigen::VectorXd Transform(const EmbeddingVector &x) const;
  double ScoreTransformed(const Eigen::VectorXd &a, const Eigen::VectorXd &b) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd between_, within_;
  Eigen::MatrixXd transform_;
  Eigen::VectorXd psi_;
  // Per-dimension constants of the score.
  Eigen::VectorXd log_term_, quad_self_, quad_cross_;
};

struct PldaTrainOptions {
  int iterations = 10;
};

struct PldaTrainResult {
  PldaModel model;
  /// Data log-likelihood after initialization and after every EM iteration.
  std::vector<double> log_likelihoods;
};

/// Moment initialization (global mean, mean per-speaker scatter, scatter of
/// speaker means) followed by `iterations` EM steps. Throws TrainingError with
/// fewer than two speakers or when no speaker has two embeddings.
PldaTrainResult TrainPlda(const std::vector<EmbeddingVector> &vectors,
                          const std::vector<std::string> &speakers,
                          const PldaTrainOptions &opts = {});

/// Exact marginal log-likelihood of speaker-grouped data under the model.
double LogLikelihood(const PldaModel &model,
                     const std::vector<std::vector<EmbeddingVector>> &groups);

/// Recentres on the in-domain mean and moves the total covariance towards the
/// in-domain covariance, Phi = (1 - alpha)(B + W) + alpha * Phi_in. Phi is
/// split back into speaker and residual parts with the model's per-direction
/// proportions psi / (1 + psi) and 1 / (1 + psi). alpha = 0 keeps B and W.
PldaModel Adapt(const PldaModel &model, const std::vector<EmbeddingVector> &in_domain,
                double alpha = 0.5);

/// Header line with D, then the mean row, D rows of B and D rows of W.
void WritePlda(std::ostream &os, const PldaModel &model);
PldaModel ReadPlda(std::istream &is);
void WritePldaFile(const std::string &path, const PldaModel &model);
PldaModel ReadPldaFile(const std::string &path);

}  // namespace rolediar::plda

#endif  // ROLEDIAR_PLDA_PLDA_H_
