// src/embed/embed.cc

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

#include "rolediar/embed/embed.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include <Eigen/Eigenvalues>

#include "rolediar/core/error.h"
#include "rolediar/core/text.h"

namespace rolediar::embed {

void WindowingOptions::Validate() const {
  if (length <= 0) throw ParameterError("window length must be positive");
  if (!(overlap >= 0.0 && overlap < 1.0))
    throw ParameterError("window overlap must lie in [0, 1)");
  if (min_final < 0) throw ParameterError("minimum final window must be >= 0");
}

std::vector<TimeInterval> UniformWindows(const TimeInterval &interval,
                                         const WindowingOptions &opts) {
  opts.Validate();
  if (interval.duration() < opts.min_final) return {interval};
  const Millis stride =
      std::max<Millis>(1, std::llround(static_cast<double>(opts.length) * (1.0 - opts.overlap)));
  std::vector<TimeInterval> out;
  for (Millis s = interval.start();; s += stride) {
    const Millis e = std::min(s + opts.length, interval.end());
    if (!out.empty() && e == interval.end() && e - s < opts.min_final) {
      out.back() = TimeInterval(out.back().start(), e);
      break;
    }
    out.emplace_back(s, e);
    if (e == interval.end()) break;
  }
  return out;
}

void NormalizationChain::Validate() const {
  if (projection.cols() > projection.rows())
    throw ParameterError("projection output dimension exceeds its input dimension");
  if (projection.cols() == 0) throw ParameterError("empty projection");
  if (mean.size() != projection.rows())
    throw ParameterError("normalization mean does not match the projection input");
  if (!projection.allFinite() || !mean.allFinite())
    throw ParameterError("normalization chain has non-finite entries");
}

NormalizationChain NormalizationChain::Identity(int dim) {
  return {Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim), true};
}

EmbeddingVector LengthNormalize(const EmbeddingVector &x) {
  const double norm = x.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw DegenerateInputError("cannot length-normalize a zero or non-finite vector");
  return x / norm;
}

EmbeddingVector Normalize(const EmbeddingVector &x, const NormalizationChain &chain) {
  if (x.size() != chain.input_dim())
    throw ParameterError("embedding dimension " + std::to_string(x.size()) +
                         " does not match the normalization input " +
                         std::to_string(chain.input_dim()));
  EmbeddingVector y = chain.projection.transpose() * (x - chain.mean);
  return chain.length_norm ? LengthNormalize(y) : y;
}

NormalizationChain EstimateLda(const std::vector<EmbeddingVector> &vectors,
                               const std::vector<std::string> &labels, int output_dim,
                               bool length_norm) {
  if (vectors.size() != labels.size())
    throw ParameterError("one label per vector is required");
  if (vectors.empty()) throw DegenerateInputError("no vectors for LDA");
  const Eigen::Index d = vectors[0].size();
  std::map<std::string, std::pair<Eigen::VectorXd, int>> classes;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw ParameterError("LDA vectors differ in dimension");
    auto &c = classes.try_emplace(labels[i], Eigen::VectorXd::Zero(d), 0).first->second;
    c.first += vectors[i];
    c.second += 1;
    mean += vectors[i];
  }
  if (classes.size() < 2) throw DegenerateInputError("LDA needs at least two classes");
  const double n = static_cast<double>(vectors.size());
  mean /= n;

  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto &c = classes.at(labels[i]);
    const Eigen::VectorXd r = vectors[i] - c.first / c.second;
    within.noalias() += r * r.transpose();
  }
  for (const auto &[label, c] : classes) {
    const Eigen::VectorXd m = c.first / c.second - mean;
    between.noalias() += c.second * m * m.transpose();
  }
  within /= n;
  between /= n;
  // Keep the within scatter invertible when classes are tiny.
  within.diagonal().array() += 1e-9 * std::max(within.trace() / d, 1e-12);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(between, within);
  if (solver.info() != Eigen::Success)
    throw DegenerateInputError("LDA eigen-decomposition failed");
  const int k = std::min<int>(output_dim, static_cast<int>(d));
  if (k <= 0) throw ParameterError("LDA output dimension must be positive");
  // Eigen returns ascending eigenvalues with vectors normalized so that
  // v^T within v = 1.
  NormalizationChain chain{solver.eigenvectors().rightCols(k).rowwise().reverse(), mean,
                           length_norm};
  // Fix the sign of each direction for reproducibility.
  for (int j = 0; j < k; ++j) {
    Eigen::Index arg;
    chain.projection.col(j).cwiseAbs().maxCoeff(&arg);
    if (chain.projection(arg, j) < 0) chain.projection.col(j) *= -1.0;
  }
  return chain;
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

Eigen::VectorXd ReadRow(std::istream &is, Eigen::Index dim, const char *what) {
  std::string line;
  while (std::getline(is, line)) {
    const auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (static_cast<Eigen::Index>(f.size()) != dim)
      throw FormatError(std::string(what) + ": expected " + std::to_string(dim) +
                        " values, got " + std::to_string(f.size()));
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = ParseDouble(f[i], what);
    return v;
  }
  throw FormatError(std::string(what) + ": unexpected end of file");
}

}  // namespace

void WriteChain(std::ostream &os, const NormalizationChain &chain) {
  chain.Validate();
  os << chain.input_dim() << ' ' << chain.output_dim() << ' ' << (chain.length_norm ? 1 : 0)
     << '\n';
  WriteRow(os, chain.mean);
  for (int r = 0; r < chain.input_dim(); ++r) WriteRow(os, chain.projection.row(r));
}

NormalizationChain ReadChain(std::istream &is) {
  const Eigen::VectorXd header = ReadRow(is, 3, "normalization header");
  const auto d_in = static_cast<Eigen::Index>(header[0]);
  const auto d_out = static_cast<Eigen::Index>(header[1]);
  if (d_in <= 0 || d_out <= 0 || d_in != header[0] || d_out != header[1])
    throw FormatError("bad normalization dimensions");
  NormalizationChain chain;
  chain.length_norm = header[2] != 0.0;
  chain.mean = ReadRow(is, d_in, "normalization mean");
  chain.projection.resize(d_in, d_out);
  for (Eigen::Index r = 0; r < d_in; ++r)
    chain.projection.row(r) = ReadRow(is, d_out, "projection row").transpose();
  try {
    chain.Validate();
  } catch (const ParameterError &e) {
    throw FormatError(e.what());
  }
  return chain;
}

void WriteChainFile(const std::string &path, const NormalizationChain &chain) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  WriteChain(os, chain);
}

NormalizationChain ReadChainFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  return ReadChain(is);
}

std::vector<EmbeddingRecord> ReadEmbeddings(std::istream &is) {
  std::vector<EmbeddingRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index dim = -1;
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    const std::string where = "embedding line " + std::to_string(line_no);
    if (f.size() < 5) throw FormatError(where + ": too few fields");
    const Eigen::Index d = static_cast<Eigen::Index>(f.size()) - 4;
    if (dim >= 0 && d != dim)
      throw FormatError(where + ": dimension " + std::to_string(d) + " differs from " +
                        std::to_string(dim));
    dim = d;
    if (!seen.emplace(f[0], f[1]).second)
      throw FormatError(where + ": duplicate window id " + f[1]);
    const double start = ParseDouble(f[2], "window start");
    const double dur = ParseDouble(f[3], "window duration");
    if (start < 0 || dur < 0) throw FormatError(where + ": negative time");
    const Millis s = SecondsToMillis(start);
    EmbeddingRecord rec{f[0], f[1], TimeInterval(s, s + SecondsToMillis(dur)),
                        EmbeddingVector(d)};
    for (Eigen::Index i = 0; i < d; ++i) rec.vector[i] = ParseDouble(f[4 + i], "embedding value");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<EmbeddingRecord> ReadEmbeddingsFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open embedding file " + path);
  return ReadEmbeddings(is);
}

void WriteEmbeddings(std::ostream &os, const std::vector<EmbeddingRecord> &records) {
  for (const auto &r : records) {
    os << r.session_id << ' ' << r.window_id << ' ' << FormatSeconds(r.interval.start())
       << ' ' << FormatSeconds(r.interval.duration()) << ' ';
    WriteRow(os, r.vector);
  }
}

void WriteEmbeddingsFile(const std::string &path,
                         const std::vector<EmbeddingRecord> &records) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write embedding file " + path);
  WriteEmbeddings(os, records);
}

std::map<std::string, std::vector<AudioWindow>> GroupBySession(
    const std::vector<EmbeddingRecord> &records) {
  std::map<std::string, std::vector<AudioWindow>> out;
  for (const auto &r : records) out[r.session_id].push_back({r.interval, r.vector});
  for (auto &[id, windows] : out)
    std::stable_sort(windows.begin(), windows.end(),
                     [](const AudioWindow &a, const AudioWindow &b) {
                       return a.interval < b.interval;
                     });
  return out;
}

std::vector<AudioWindow> NormalizeWindows(const std::vector<AudioWindow> &windows,
                                          const NormalizationChain &chain) {
  std::vector<AudioWindow> out;
  out.reserve(windows.size());
  for (const auto &w : windows) out.push_back({w.interval, Normalize(w.embedding, chain)});
  return out;
}

std::optional<EmbeddingVector> PoolWindows(const std::vector<AudioWindow> &windows,
                                           const TimeInterval &span) {
  std::optional<EmbeddingVector> sum;
  for (const auto &w : windows) {
    const Millis overlap = w.interval.OverlapWith(span);
    if (overlap <= 0) continue;
    if (!sum) sum = EmbeddingVector::Zero(w.embedding.size());
    *sum += static_cast<double>(overlap) * w.embedding;
  }
  if (!sum || !(sum->norm() > 0.0)) return std::nullopt;
  return LengthNormalize(*sum);
}

}  // namespace rolediar::embed
