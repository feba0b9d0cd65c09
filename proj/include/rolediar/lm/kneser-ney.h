// include/rolediar/lm/kneser-ney.h

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

#ifndef ROLEDIAR_LM_KNESER_NEY_H_
#define ROLEDIAR_LM_KNESER_NEY_H_

#include <optional>

#include "rolediar/lm/corpus.h"
#include "rolediar/lm/ngram-model.h"

namespace rolediar::lm {

struct KneserNeyOptions {
  int order = 3;
  /// Absolute discount in [0, 1) used at every order. When unset each order
  /// estimates D = n1 / (n1 + 2 n2) from its count-of-counts.
  std::optional<double> discount;
  /// Count credited to <unk> in the lowest-order distribution. The
  /// background model is trained with 1 so unseen words keep some mass.
  double unk_floor_count = 0.0;
};

/// Interpolated Kneser-Ney training.
///
/// Sentences are scored as "<s> w1 ... wn </s>"; <s> conditions but is never
/// predicted. The highest order and n-grams starting with <s> use raw counts,
/// every other lower order uses continuation counts N1+(. g). The lowest
/// order interpolates with a uniform distribution over all predictable
/// types. The result is stored in backoff form, whose backoff weights equal
/// the interpolation weights, so scoring reproduces the interpolated
/// recursion exactly.
///
/// Throws TrainingError on an empty corpus and ParameterError on a bad order
/// or discount.
NGramModel TrainKneserNey(const Corpus &corpus, const KneserNeyOptions &opts);

/// Discounts used per order (index 0 = unigrams), as TrainKneserNey would
/// pick them.
std::vector<double> EstimateDiscounts(const Corpus &corpus,
                                      const KneserNeyOptions &opts);

/// Pooled perplexity of a corpus: exp(-sum log P / sum T).
double CorpusPerplexity(const NGramModel &model, const Corpus &corpus);

}  // namespace rolediar::lm

#endif  // ROLEDIAR_LM_KNESER_NEY_H_
