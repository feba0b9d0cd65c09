// include/rolediar/lm/ngram-model.h

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

#ifndef ROLEDIAR_LM_NGRAM_MODEL_H_
#define ROLEDIAR_LM_NGRAM_MODEL_H_

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rolediar::lm {

inline constexpr const char *kBos = "<s>";
inline constexpr const char *kEos = "</s>";
inline constexpr const char *kUnk = "<unk>";

/// Token <-> id map. Ids 0, 1, 2 are always <s>, </s>, <unk>.
class Vocabulary {
 public:
  static constexpr int kBosId = 0;
  static constexpr int kEosId = 1;
  static constexpr int kUnkId = 2;

  Vocabulary();

  /// Returns the id of `token`, adding it if new.
  int Add(const std::string &token);
  /// Returns the id of `token`, or -1.
  int Find(const std::string &token) const;
  /// Like Find but maps unknown tokens to <unk>.
  int Lookup(const std::string &token) const;
  const std::string &Token(int id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

/// Lexicographic order over id sequences that also accepts spans, so lookups
/// need not allocate.
struct SequenceLess {
  using is_transparent = void;
  template <typename A, typename B>
  bool operator()(const A &a, const B &b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Explicit distribution of one context: P(w | context) for the listed words
/// plus the backoff weight applied to every unlisted word.
struct ContextNode {
  std::map<int, double> probs;
  double backoff = 1.0;
};

/// Backoff n-gram model (ARPA semantics) with linear probabilities.
///
/// levels[k] maps contexts of length k to their node, so levels[0] holds the
/// single empty context with the unigram distribution. Unlisted words in a
/// context back off to the context with its first token dropped, multiplied
/// by the context's backoff weight; a missing context node has weight 1.
class NGramModel {
 public:
  using Context = std::vector<int>;
  using Level = std::map<Context, ContextNode, SequenceLess>;

  /// Throws ParameterError if the order is outside [1, 5] or the level
  /// layout does not match the order.
  NGramModel(int order, Vocabulary vocab, std::vector<Level> levels);

  int order() const { return order_; }
  const Vocabulary &vocab() const { return vocab_; }
  const std::vector<Level> &levels() const { return levels_; }

  /// P(word | history); only the last order-1 history ids are used.
  double Prob(std::span<const int> history, int word) const;

  /// Maps tokens to ids, unknown tokens to <unk>.
  std::vector<int> ToIds(const std::vector<std::string> &tokens) const;

  /// Number of explicit n-gram probabilities.
  std::size_t NumEntries() const;

 private:
  int order_;
  Vocabulary vocab_;
  std::vector<Level> levels_;
};

namespace detail {
/// Backoff lookup over a partial level stack (levels.size() may be below the
/// model order while training).
double BackoffProb(const std::vector<NGramModel::Level> &levels,
                   std::span<const int> history, int word);
}  // namespace detail

/// exp(-(1/T) * sum log P) over the tokens plus the end-of-sentence event,
/// conditioned on a leading <s>. Returns +inf if any event has probability 0.
/// Throws ParameterError on an empty token list.
double Perplexity(const NGramModel &model, const std::vector<std::string> &tokens);

/// Natural-log probability of the sentence (all tokens plus </s>).
double SentenceLogProb(const NGramModel &model,
                       const std::vector<std::string> &tokens);

}  // namespace rolediar::lm

#endif  // ROLEDIAR_LM_NGRAM_MODEL_H_
