// include/rolediar/embed/embed.h

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

#ifndef ROLEDIAR_EMBED_EMBED_H_
#define ROLEDIAR_EMBED_EMBED_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/types.h"

namespace rolediar::embed {

struct AudioWindow {
  TimeInterval interval;
  EmbeddingVector embedding;
};

struct WindowingOptions {
  Millis length = 1500;
  double overlap = 0.5;       // fraction of `length` shared by neighbours
  Millis min_final = 500;     // shorter trailing windows join the previous one

  void Validate() const;
};

/// Windows of `opts.length` starting every length*(1-overlap) ms from
/// interval.start(); the last one is cut at interval.end(). A trailing window
/// shorter than min_final is absorbed by extending its predecessor, and an
/// interval shorter than min_final yields itself as the only window.
std::vector<TimeInterval> UniformWindows(const TimeInterval &interval,
                                         const WindowingOptions &opts = {});

/// y = projection^T (x - mean), then scaled to unit length if requested.
struct NormalizationChain {
  Eigen::MatrixXd projection;  // D_in x D_out
  Eigen::VectorXd mean;        // D_in
  bool length_norm = true;

  int input_dim() const { return static_cast<int>(projection.rows()); }
  int output_dim() const { return static_cast<int>(projection.cols()); }
  /// Throws ParameterError on non-finite entries, D_out > D_in or a mean of
  /// the wrong size.
  void Validate() const;

  static NormalizationChain Identity(int dim);
};

/// ParameterError on dimension mismatch; DegenerateInputError when the
/// projected vector is zero and length normalization is on.
EmbeddingVector Normalize(const EmbeddingVector &x, const NormalizationChain &chain);

/// Scales to unit Euclidean norm; DegenerateInputError on a zero vector.
EmbeddingVector LengthNormalize(const EmbeddingVector &x);

/// Fisher LDA from labelled vectors: the leading `output_dim` generalized
/// eigenvectors of (between scatter, within scatter), each scaled so the
/// projected within-class scatter is the identity. output_dim is capped at
/// the input dimension. Needs >= 2 classes (DegenerateInputError otherwise).
NormalizationChain EstimateLda(const std::vector<EmbeddingVector> &vectors,
                               const std::vector<std::string> &labels,
                               int output_dim = 200, bool length_norm = true);

/// "<D_in> <D_out> <length_norm 0|1>", the mean row, then D_in projection rows.
void WriteChain(std::ostream &os, const NormalizationChain &chain);
NormalizationChain ReadChain(std::istream &is);
void WriteChainFile(const std::string &path, const NormalizationChain &chain);
NormalizationChain ReadChainFile(const std::string &path);

/// One line of an embedding file.
struct EmbeddingRecord {
  std::string session_id;
  std::string window_id;
  TimeInterval interval;
  EmbeddingVector vector;
};

/// `<session> <window-id> <start-sec> <dur-sec> <v1> ... <vD>`. All rows must
/// share one dimension and (session, window-id) pairs must be unique;
/// FormatError otherwise. Values are written with 17 significant digits so a
/// write/read cycle is exact.
std::vector<EmbeddingRecord> ReadEmbeddings(std::istream &is);
std::vector<EmbeddingRecord> ReadEmbeddingsFile(const std::string &path);
void WriteEmbeddings(std::ostream &os, const std::vector<EmbeddingRecord> &records);
void WriteEmbeddingsFile(const std::string &path,
                         const std::vector<EmbeddingRecord> &records);

/// Windows per session, ordered by start time.
std::map<std::string, std::vector<AudioWindow>> GroupBySession(
    const std::vector<EmbeddingRecord> &records);

/// Applies the chain to every window embedding.
std::vector<AudioWindow> NormalizeWindows(const std::vector<AudioWindow> &windows,
                                          const NormalizationChain &chain);

/// Representation of an arbitrary time span: the mean of the window
/// embeddings weighted by their overlap with `span`, length-normalized.
/// Empty when no window overlaps the span.
std::optional<EmbeddingVector> PoolWindows(const std::vector<AudioWindow> &windows,
                                           const TimeInterval &span);

}  // namespace rolediar::embed

#endif  // ROLEDIAR_EMBED_EMBED_H_
