// src/plda/plda.cc

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

#include "rolediar/plda/plda.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar::plda {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

bool IsSymmetric(const Eigen::MatrixXd &m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale;
}

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd &m) { return 0.5 * (m + m.transpose()); }

// Adds 1e-6 * trace / D to the diagonal until the Cholesky factorization
// succeeds.
Eigen::MatrixXd RegularizeWithin(Eigen::MatrixXd w) {
  const Eigen::Index d = w.rows();
  for (int attempt = 0; attempt < 60; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(w);
    if (llt.info() == Eigen::Success) return w;
    const double bump = 1e-6 * std::max(w.trace() / d, 1e-12) * std::pow(2.0, attempt);
    w.diagonal().array() += bump;
  }
  throw TrainingError("within-speaker covariance cannot be made positive definite");
}

double LogDet(const Eigen::LLT<Eigen::MatrixXd> &llt) {
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

PldaModel::PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd between, Eigen::MatrixXd within)
    : mean_(std::move(mean)), between_(std::move(between)), within_(std::move(within)) {
  const Eigen::Index d = mean_.size();
  if (d == 0) throw ModelError("PLDA model has dimension 0");
  if (between_.rows() != d || between_.cols() != d || within_.rows() != d ||
      within_.cols() != d)
    throw ModelError("PLDA covariance shapes do not match the mean");
  if (!mean_.allFinite() || !between_.allFinite() || !within_.allFinite())
    throw ModelError("PLDA parameters are not finite");
  if (!IsSymmetric(between_) || !IsSymmetric(within_))
    throw ModelError("PLDA covariances must be symmetric");

  Eigen::LLT<Eigen::MatrixXd> llt(within_);
  if (llt.info() != Eigen::Success)
    throw ModelError("within-speaker covariance is not positive definite");
  const Eigen::MatrixXd l_inv =
      llt.matrixL().solve(Eigen::MatrixXd::Identity(d, d));
  const Eigen::MatrixXd a = Symmetrize(l_inv * between_ * l_inv.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) throw ModelError("PLDA diagonalization failed");
  const double tol = 1e-10 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -tol)
    throw ModelError("between-speaker covariance is not positive semi-definite");
  psi_ = eig.eigenvalues().cwiseMax(0.0);
  transform_ = eig.eigenvectors().transpose() * l_inv;

  log_term_.resize(d);
  quad_self_.resize(d);
  quad_cross_.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double p = psi_[k];
    log_term_[k] = -0.5 * std::log1p(2.0 * p) + std::log1p(p);
    quad_self_[k] = p * p / ((1.0 + 2.0 * p) * (1.0 + p));
    quad_cross_[k] = p / (1.0 + 2.0 * p);
  }
}

Eigen::VectorXd PldaModel::Transform(const EmbeddingVector &x) const {
  if (x.size() != mean_.size())
    throw ParameterError("embedding dimension " + std::to_string(x.size()) +
                         " does not match the PLDA dimension " + std::to_string(dim()));
  return transform_ * (x - mean_);
}

double PldaModel::ScoreTransformed(const Eigen::VectorXd &a, const Eigen::VectorXd &b) const {
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k)
    s += log_term_[k] - 0.5 * quad_self_[k] * (a[k] * a[k] + b[k] * b[k]) +
         quad_cross_[k] * (a[k] * b[k]);
  return s;
}

double PldaModel::Score(const EmbeddingVector &v, const EmbeddingVector &r) const {
  return ScoreTransformed(Transform(v), Transform(r));
}

double LogLikelihood(const PldaModel &model,
                     const std::vector<std::vector<EmbeddingVector>> &groups) {
  const Eigen::Index d = model.dim();
  Eigen::LLT<Eigen::MatrixXd> w_llt(model.within());
  const double logdet_w = LogDet(w_llt);
  std::map<std::size_t, Eigen::LLT<Eigen::MatrixXd>> by_count;
  double total = 0.0;
  for (const auto &g : groups) {
    const std::size_t n = g.size();
    if (n == 0) continue;
    Eigen::VectorXd xbar = Eigen::VectorXd::Zero(d);
    for (const auto &x : g) xbar += x;
    xbar /= static_cast<double>(n);
    double resid = 0.0;
    for (const auto &x : g) {
      const Eigen::VectorXd r = x - xbar;
      resid += r.dot(w_llt.solve(r));
    }
    auto it = by_count.find(n);
    if (it == by_count.end())
      it = by_count.emplace(n, Eigen::LLT<Eigen::MatrixXd>(
                                   model.within() + static_cast<double>(n) * model.between()))
               .first;
    const Eigen::VectorXd c = xbar - model.mean();
    total += -0.5 * (n * d * kLog2Pi + (n - 1.0) * logdet_w + LogDet(it->second) + resid +
                     n * c.dot(it->second.solve(c)));
  }
  return total;
}

PldaTrainResult TrainPlda(const std::vector<EmbeddingVector> &vectors,
                          const std::vector<std::string> &speakers,
                          const PldaTrainOptions &opts) {
  if (vectors.size() != speakers.size())
    throw ParameterError("one speaker label per embedding is required");
  if (opts.iterations < 0) throw ParameterError("iteration count must be >= 0");
  if (vectors.empty()) throw TrainingError("no training embeddings");
  const Eigen::Index d = vectors[0].size();
  std::map<std::string, std::vector<EmbeddingVector>> by_speaker;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw ParameterError("training embeddings differ in dimension");
    by_speaker[speakers[i]].push_back(vectors[i]);
  }
  if (by_speaker.size() < 2) throw TrainingError("PLDA training needs at least two speakers");
  std::vector<std::vector<EmbeddingVector>> groups;
  bool repeated = false;
  for (auto &[spk, g] : by_speaker) {
    repeated |= g.size() >= 2;
    groups.push_back(std::move(g));
  }
  if (!repeated)
    throw TrainingError("PLDA training needs a speaker with at least two embeddings");

  const double n_total = static_cast<double>(vectors.size());
  const double n_spk = static_cast<double>(groups.size());
  // Sufficient statistics per speaker.
  std::vector<Eigen::VectorXd> sums;
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);  // sum of x x^T
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (const auto &g : groups) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(d);
    for (const auto &x : g) {
      f += x;
      scatter.noalias() += x * x.transpose();
    }
    mean += f;
    sums.push_back(std::move(f));
  }
  mean /= n_total;

  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t s = 0; s < groups.size(); ++s) {
    const Eigen::VectorXd m = sums[s] / static_cast<double>(groups[s].size());
    for (const auto &x : groups[s]) within.noalias() += (x - m) * (x - m).transpose();
    between.noalias() += (m - mean) * (m - mean).transpose();
  }
  within = RegularizeWithin(Symmetrize(within / n_total));
  between = Symmetrize(between / n_spk);

  PldaTrainResult result{PldaModel(mean, between, within), {}};
  result.log_likelihoods.push_back(LogLikelihood(result.model, groups));

  for (int it = 0; it < opts.iterations; ++it) {
    const PldaModel &cur = result.model;
    // Posterior of the speaker variable given n samples with mean xbar:
    //   cov = B - K B,  mean = mu + K (xbar - mu),  K = B (B + W/n)^-1,
    // which never inverts B (it may be singular). Both depend on n only
    // through K, so they are cached per sample count.
    std::map<std::size_t, std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> gain;
    Eigen::VectorXd mu_acc = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd b_acc = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd w_acc = scatter;
    for (std::size_t s = 0; s < groups.size(); ++s) {
      const std::size_t n = groups[s].size();
      auto g = gain.find(n);
      if (g == gain.end()) {
        const Eigen::MatrixXd spread = cur.between() + cur.within() / static_cast<double>(n);
        // K = B S^-1 = (S^-1 B)^T since both are symmetric.
        const Eigen::MatrixXd k =
            Eigen::LLT<Eigen::MatrixXd>(spread).solve(cur.between()).transpose();
        g = gain.emplace(n, std::make_pair(k, Symmetrize(cur.between() - k * cur.between())))
                .first;
      }
      const auto &[k, c] = g->second;
      const Eigen::VectorXd m =
          cur.mean() + k * (sums[s] / static_cast<double>(n) - cur.mean());
      const Eigen::MatrixXd second = c + m * m.transpose();
      mu_acc += m;
      b_acc += second;
      w_acc.noalias() -= m * sums[s].transpose() + sums[s] * m.transpose();
      w_acc += static_cast<double>(n) * second;
    }
    const Eigen::VectorXd new_mean = mu_acc / n_spk;
    Eigen::MatrixXd new_between =
        Symmetrize(b_acc / n_spk - new_mean * new_mean.transpose());
    // Clip tiny negative eigenvalues from rounding.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(new_between);
    new_between = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).asDiagonal() *
                  eig.eigenvectors().transpose();
    const Eigen::MatrixXd new_within = RegularizeWithin(Symmetrize(w_acc / n_total));
    result.model = PldaModel(new_mean, Symmetrize(new_between), new_within);
    result.log_likelihoods.push_back(LogLikelihood(result.model, groups));
  }
  return result;
}

PldaModel Adapt(const PldaModel &model, const std::vector<EmbeddingVector> &in_domain,
                double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("adaptation weight must lie in [0, 1]");
  if (in_domain.empty()) throw ParameterError("no in-domain embeddings for adaptation");
  const Eigen::Index d = model.dim();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (const auto &x : in_domain) {
    if (x.size() != d) throw ParameterError("in-domain embedding dimension mismatch");
    mean += x;
  }
  mean /= static_cast<double>(in_domain.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto &x : in_domain) cov.noalias() += (x - mean) * (x - mean).transpose();
  cov /= static_cast<double>(in_domain.size());

  if (alpha == 0.0) return PldaModel(mean, model.between(), model.within());

  const Eigen::MatrixXd total =
      Symmetrize((1.0 - alpha) * (model.between() + model.within()) + alpha * cov);
  const Eigen::MatrixXd &t = model.transform();
  const Eigen::MatrixXd t_inv = t.inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Symmetrize(t * total * t.transpose()));
  const Eigen::MatrixXd root = eig.eigenvectors() *
                               eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                               eig.eigenvectors().transpose();
  const Eigen::VectorXd w_share = (1.0 + model.psi().array()).inverse();
  const Eigen::VectorXd b_share = model.psi().array() / (1.0 + model.psi().array());
  const Eigen::MatrixXd lift = t_inv * root;
  const Eigen::MatrixXd within =
      RegularizeWithin(Symmetrize(lift * w_share.asDiagonal() * lift.transpose()));
  const Eigen::MatrixXd between = Symmetrize(lift * b_share.asDiagonal() * lift.transpose());
  return PldaModel(mean, between, within);
}

namespace {

void WriteRow(std::ostream &os, const Eigen::VectorXd &v) {
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i) os << ' ';
    os << buf;
  }
  os << '\n';
}

Eigen::VectorXd ReadRow(std::istream &is, Eigen::Index d, const char *what) {
  std::string line;
  while (std::getline(is, line)) {
    const auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (static_cast<Eigen::Index>(f.size()) != d)
      throw FormatError(std::string("PLDA model ") + what + ": expected " +
                        std::to_string(d) + " values");
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = ParseDouble(f[i], what);
    return v;
  }
  throw FormatError(std::string("PLDA model truncated before ") + what);
}

}  // namespace

void WritePlda(std::ostream &os, const PldaModel &model) {
  os << model.dim() << '\n';
  WriteRow(os, model.mean());
  for (int r = 0; r < model.dim(); ++r) WriteRow(os, model.between().row(r));
  for (int r = 0; r < model.dim(); ++r) WriteRow(os, model.within().row(r));
}

PldaModel ReadPlda(std::istream &is) {
  const Eigen::VectorXd header = ReadRow(is, 1, "header");
  const auto d = static_cast<Eigen::Index>(header[0]);
  if (d <= 0 || static_cast<double>(d) != header[0])
    throw FormatError("PLDA model header must be a positive dimension");
  Eigen::VectorXd mean = ReadRow(is, d, "mean");
  Eigen::MatrixXd between(d, d), within(d, d);
  for (Eigen::Index r = 0; r < d; ++r) between.row(r) = ReadRow(is, d, "between row");
  for (Eigen::Index r = 0; r < d; ++r) within.row(r) = ReadRow(is, d, "within row");
  return PldaModel(std::move(mean), std::move(between), std::move(within));
}

void WritePldaFile(const std::string &path, const PldaModel &model) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write PLDA model " + path);
  WritePlda(os, model);
}

PldaModel ReadPldaFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open PLDA model " + path);
  return ReadPlda(is);
}

}  // namespace rolediar::plda
