// src/lm/kneser-ney.cc

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

#include "rolediar/lm/kneser-ney.h"

#include <cmath>

#include "rolediar/core/error.h"

namespace rolediar::lm {

namespace {

using Gram = std::vector<int>;
using CountMap = std::map<Gram, double, SequenceLess>;

struct KneserNeyCounts {
  Vocabulary vocab;
  // counts[k] holds grams of length k + 1.
  std::vector<CountMap> counts;
};

void Validate(const Corpus &corpus, const KneserNeyOptions &opts) {
  if (opts.order < 1 || opts.order > 5)
    throw ParameterError("n-gram order must be in [1, 5], got " +
                         std::to_string(opts.order));
  if (opts.discount && (*opts.discount < 0.0 || *opts.discount >= 1.0))
    throw ParameterError("discount must be in [0, 1)");
  if (opts.unk_floor_count < 0.0)
    throw ParameterError("unk floor count must be non-negative");
  if (corpus.sentences.empty())
    throw TrainingError("cannot train a language model on an empty corpus '" +
                        corpus.name + "'");
  for (const auto &s : corpus.sentences)
    if (s.empty())
      throw TrainingError("corpus '" + corpus.name + "' has an empty sentence");
}

// Raw counts at the top order and for <s>-initial grams; continuation
// counts everywhere else.
KneserNeyCounts CollectCounts(const Corpus &corpus, int order) {
  KneserNeyCounts kn;
  std::vector<CountMap> raw(order);
  std::vector<int> seq;
  for (const auto &sentence : corpus.sentences) {
    seq.assign(1, Vocabulary::kBosId);
    for (const std::string &tok : sentence) seq.push_back(kn.vocab.Add(tok));
    seq.push_back(Vocabulary::kEosId);
    for (std::size_t t = 1; t < seq.size(); ++t) {
      const std::size_t max_len = std::min<std::size_t>(order, t + 1);
      for (std::size_t len = 1; len <= max_len; ++len)
        raw[len - 1][Gram(seq.begin() + (t + 1 - len), seq.begin() + t + 1)] += 1.0;
    }
  }
  kn.counts.resize(order);
  kn.counts[order - 1] = raw[order - 1];
  for (int k = order - 2; k >= 0; --k) {
    CountMap &level = kn.counts[k];
    for (const auto &[gram, c] : raw[k])
      if (gram.front() == Vocabulary::kBosId) level[gram] = c;
    for (const auto &[longer, c] : raw[k + 1])
      level[Gram(longer.begin() + 1, longer.end())] += 1.0;
  }
  return kn;
}

std::vector<double> DiscountsFromCounts(const KneserNeyCounts &kn,
                                        const KneserNeyOptions &opts) {
  std::vector<double> d(opts.order);
  for (int k = 0; k < opts.order; ++k) {
    if (opts.discount) {
      d[k] = *opts.discount;
      continue;
    }
    double n1 = 0, n2 = 0;
    for (const auto &[gram, c] : kn.counts[k]) {
      if (c == 1.0) n1 += 1;
      else if (c == 2.0) n2 += 1;
    }
    // Count-of-counts estimate is undefined without both singletons and
    // doubletons; fall back to a mid-range discount.
    d[k] = (n1 > 0 && n2 > 0) ? n1 / (n1 + 2.0 * n2) : 0.5;
  }
  return d;
}

}  // namespace

std::vector<double> EstimateDiscounts(const Corpus &corpus,
                                      const KneserNeyOptions &opts) {
  Validate(corpus, opts);
  return DiscountsFromCounts(CollectCounts(corpus, opts.order), opts);
}

NGramModel TrainKneserNey(const Corpus &corpus, const KneserNeyOptions &opts) {
  Validate(corpus, opts);
  KneserNeyCounts kn = CollectCounts(corpus, opts.order);
  const std::vector<double> discount = DiscountsFromCounts(kn, opts);
  if (opts.unk_floor_count > 0.0)
    kn.counts[0][Gram{Vocabulary::kUnkId}] += opts.unk_floor_count;

  std::vector<NGramModel::Level> levels;
  levels.reserve(opts.order);

  // Lowest order, interpolated with the uniform distribution over every
  // predictable type (everything except <s>).
  {
    const int vocab_size = kn.vocab.size();
    const double num_predictable = vocab_size - 1;
    std::vector<double> counts(vocab_size, 0.0);
    double total = 0.0;
    for (const auto &[gram, c] : kn.counts[0]) {
      counts[gram[0]] = c;
      total += c;
    }
    const double d = discount[0];
    double discounted_mass = 0.0;
    for (int w = 1; w < vocab_size; ++w) discounted_mass += std::max(counts[w] - d, 0.0);
    const double uniform_weight = (total - discounted_mass) / total;
    ContextNode node;
    for (int w = 1; w < vocab_size; ++w) {
      const double p = std::max(counts[w] - d, 0.0) / total +
                       uniform_weight / num_predictable;
      if (p > 0.0) node.probs.emplace(w, p);
    }
    NGramModel::Level level;
    level.emplace(NGramModel::Context{}, std::move(node));
    levels.push_back(std::move(level));
  }

  for (int k = 1; k < opts.order; ++k) {
    const double d = discount[k];
    const CountMap &grams = kn.counts[k];
    NGramModel::Level level;
    auto it = grams.begin();
    while (it != grams.end()) {
      const std::span<const int> ctx(it->first.data(), k);
      auto end = it;
      double context_count = 0.0, discounted = 0.0;
      while (end != grams.end() && std::equal(ctx.begin(), ctx.end(), end->first.begin())) {
        context_count += end->second;
        discounted += std::max(end->second - d, 0.0);
        ++end;
      }
      const double gamma = (context_count - discounted) / context_count;
      ContextNode node;
      node.backoff = gamma;
      const std::span<const int> lower_history = ctx.subspan(1);
      for (auto g = it; g != end; ++g) {
        const int w = g->first.back();
        const double lower = detail::BackoffProb(levels, lower_history, w);
        node.probs.emplace(w, std::max(g->second - d, 0.0) / context_count +
                                  gamma * lower);
      }
      level.emplace(NGramModel::Context(ctx.begin(), ctx.end()), std::move(node));
      it = end;
    }
    levels.push_back(std::move(level));
  }
  return NGramModel(opts.order, std::move(kn.vocab), std::move(levels));
}

double CorpusPerplexity(const NGramModel &model, const Corpus &corpus) {
  if (corpus.sentences.empty()) throw ParameterError("perplexity of an empty corpus");
  double logprob = 0.0;
  double events = 0.0;
  for (const auto &s : corpus.sentences) {
    logprob += SentenceLogProb(model, s);
    events += static_cast<double>(s.size() + 1);
  }
  return std::exp(-logprob / events);
}

}  // namespace rolediar::lm
