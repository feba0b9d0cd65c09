// src/lm/ngram-model.cc

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

#include "rolediar/lm/ngram-model.h"

#include <cmath>
#include <limits>

#include "rolediar/core/error.h"

namespace rolediar::lm {

Vocabulary::Vocabulary() {
  Add(kBos);
  Add(kEos);
  Add(kUnk);
}

int Vocabulary::Add(const std::string &token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, id);
  return id;
}

int Vocabulary::Find(const std::string &token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? -1 : it->second;
}

int Vocabulary::Lookup(const std::string &token) const {
  const int id = Find(token);
  return id < 0 ? kUnkId : id;
}

NGramModel::NGramModel(int order, Vocabulary vocab, std::vector<Level> levels)
    : order_(order), vocab_(std::move(vocab)), levels_(std::move(levels)) {
  if (order_ < 1 || order_ > 5)
    throw ParameterError("n-gram order must be in [1, 5], got " +
                         std::to_string(order_));
  if (static_cast<int>(levels_.size()) != order_)
    throw ParameterError("n-gram model needs one level per order");
  for (int k = 0; k < order_; ++k)
    for (const auto &[ctx, node] : levels_[k])
      if (static_cast<int>(ctx.size()) != k)
        throw ParameterError("context length does not match its level");
}

double NGramModel::Prob(std::span<const int> history, int word) const {
  return detail::BackoffProb(levels_, history, word);
}

namespace detail {

double BackoffProb(const std::vector<NGramModel::Level> &levels,
                   std::span<const int> history, int word) {
  if (levels.empty()) return 0.0;
  std::size_t k = std::min<std::size_t>(history.size(), levels.size() - 1);
  double bow = 1.0;
  for (;; --k) {
    std::span<const int> ctx = history.subspan(history.size() - k, k);
    const NGramModel::Level &level = levels[k];
    auto node = level.find(ctx);
    if (node != level.end()) {
      auto p = node->second.probs.find(word);
      if (p != node->second.probs.end()) return bow * p->second;
      bow *= node->second.backoff;
    }
    if (k == 0) break;
  }
  return 0.0;
}

}  // namespace detail

std::vector<int> NGramModel::ToIds(const std::vector<std::string> &tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) ids.push_back(vocab_.Lookup(t));
  return ids;
}

std::size_t NGramModel::NumEntries() const {
  std::size_t n = 0;
  for (const Level &level : levels_)
    for (const auto &[ctx, node] : level) n += node.probs.size();
  return n;
}

double SentenceLogProb(const NGramModel &model,
                       const std::vector<std::string> &tokens) {
  std::vector<int> seq;
  seq.reserve(tokens.size() + 2);
  seq.push_back(Vocabulary::kBosId);
  for (int id : model.ToIds(tokens)) seq.push_back(id);
  seq.push_back(Vocabulary::kEosId);
  double logprob = 0.0;
  const std::span<const int> all(seq);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const double p = model.Prob(all.first(t), seq[t]);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    logprob += std::log(p);
  }
  return logprob;
}

double Perplexity(const NGramModel &model, const std::vector<std::string> &tokens) {
  if (tokens.empty()) throw ParameterError("perplexity of an empty token list");
  const double logprob = SentenceLogProb(model, tokens);
  return std::exp(-logprob / static_cast<double>(tokens.size() + 1));
}

}  // namespace rolediar::lm
