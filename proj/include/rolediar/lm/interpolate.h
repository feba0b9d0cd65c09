// include/rolediar/lm/interpolate.h

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

#ifndef ROLEDIAR_LM_INTERPOLATE_H_
#define ROLEDIAR_LM_INTERPOLATE_H_

#include <vector>

#include "rolediar/lm/corpus.h"
#include "rolediar/lm/ngram-model.h"

namespace rolediar::lm {

/// Non-negative mixture weights summing to one.
struct InterpolationWeights {
  std::vector<double> weights;

  /// Throws ParameterError unless every weight is >= 0 and the sum is 1
  /// within 1e-9.
  void Validate() const;
};

/// Static interpolation of backoff models.
///
/// The union of the components' explicit n-grams is fixed once; each entry
/// keeps its per-component probabilities (words outside a component's
/// vocabulary get 0 from that component, other absent n-grams are evaluated
/// through the component's backoff). For a weight vector the mixed
/// probability of every entry is the weighted sum, and each context's
/// backoff weight is recomputed so the context normalizes again. Contexts
/// whose explicit entries leave no backoff mass are rescaled to sum to one.
///
/// Components with zero weight must be removed before planning; Interpolate
/// and OptimizeWeights do that.
class InterpolationPlan {
 public:
  /// All models must share one order (ParameterError otherwise).
  explicit InterpolationPlan(const std::vector<const NGramModel *> &models);

  int order() const { return order_; }
  int num_components() const { return num_components_; }
  const Vocabulary &vocab() const { return vocab_; }

  NGramModel Materialize(const std::vector<double> &weights) const;

  /// Sequence of lookups one scored event goes through. level/entry point at
  /// the explicit n-gram that ends the walk (entry < 0: probability 0);
  /// `backoffs` lists the (level, context) nodes whose weights multiply in.
  struct Path {
    int level = 0;
    int entry = -1;
    std::vector<std::pair<int, int>> backoffs;
  };

  std::vector<Path> CompileCorpus(const Corpus &corpus) const;

  /// Pooled corpus perplexity of Materialize(weights), computed without
  /// building the model.
  double Perplexity(const std::vector<double> &weights,
                    const std::vector<Path> &events) const;

 private:
  struct LevelPlan {
    std::vector<NGramModel::Context> contexts;
    std::map<NGramModel::Context, int, SequenceLess> index;
    std::vector<int> begin;    // entries of context c: [begin[c], begin[c+1])
    std::vector<int> words;
    std::vector<double> component_probs;  // entry-major, num_components_ wide
    std::vector<Path> lower;   // for level > 0: lookup of (context minus first token, word)
  };
  struct Values {
    std::vector<std::vector<double>> probs;
    std::vector<std::vector<double>> backoffs;
  };

  Path Walk(std::span<const int> history, int word, int max_level) const;
  double Evaluate(const Path &path, const Values &values) const;
  Values Compute(const std::vector<double> &weights) const;

  int order_ = 0;
  int num_components_ = 0;
  Vocabulary vocab_;
  std::vector<LevelPlan> levels_;
};

/// Weighted interpolation of >= 2 models of equal order (ParameterError on
/// mismatched orders, a wrong weight count or invalid weights). The result
/// vocabulary is the union of the input vocabularies.
NGramModel Interpolate(const std::vector<const NGramModel *> &models,
                       const InterpolationWeights &weights);

struct WeightSearchOptions {
  double grid_step = 0.05;
  int golden_iterations = 40;
};

/// Simplex weights minimizing the pooled perplexity of the interpolated
/// model on `dev`: exhaustive grid over the simplex, then one golden-section
/// pass per coordinate (moving that weight, rescaling the others), keeping
/// only strict improvements. A single component yields {1}. Throws
/// ParameterError on an empty dev corpus.
InterpolationWeights OptimizeWeights(const std::vector<const NGramModel *> &components,
                                     const Corpus &dev,
                                     const WeightSearchOptions &opts = {});

/// All points of the simplex grid with the given step, in the order
/// OptimizeWeights visits them.
std::vector<std::vector<double>> SimplexGrid(int num_components, double step);

}  // namespace rolediar::lm

#endif  // ROLEDIAR_LM_INTERPOLATE_H_
