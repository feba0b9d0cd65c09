// src/lm/interpolate.cc

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

#include "rolediar/lm/interpolate.h"

#include <cmath>
#include <limits>
#include <set>

#include "rolediar/core/error.h"

namespace rolediar::lm {

namespace {

constexpr double kNoMass = 1e-12;

// Maps a union id sequence into one component's ids; tokens the component
// lacks become its <unk>.
std::vector<int> ToComponentIds(std::span<const int> ids,
                                const std::vector<int> &to_component) {
  std::vector<int> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int c = to_component[ids[i]];
    out[i] = c < 0 ? Vocabulary::kUnkId : c;
  }
  return out;
}

}  // namespace

void InterpolationWeights::Validate() const {
  if (weights.empty()) throw ParameterError("no interpolation weights");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ParameterError("interpolation weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ParameterError("interpolation weights must sum to 1");
}

InterpolationPlan::InterpolationPlan(const std::vector<const NGramModel *> &models) {
  if (models.empty()) throw ParameterError("interpolation needs at least one model");
  order_ = models.front()->order();
  num_components_ = static_cast<int>(models.size());
  for (const NGramModel *m : models)
    if (m->order() != order_)
      throw ParameterError("cannot interpolate models of different orders");

  // Union vocabulary, in first-seen order.
  for (const NGramModel *m : models)
    for (int id = 0; id < m->vocab().size(); ++id) vocab_.Add(m->vocab().Token(id));
  std::vector<std::vector<int>> to_component(num_components_,
                                             std::vector<int>(vocab_.size(), -1));
  std::vector<std::vector<int>> to_union(num_components_);
  for (int i = 0; i < num_components_; ++i) {
    const Vocabulary &v = models[i]->vocab();
    to_union[i].resize(v.size());
    for (int id = 0; id < v.size(); ++id) {
      const int u = vocab_.Find(v.Token(id));
      to_union[i][id] = u;
      to_component[i][u] = id;
    }
  }

  levels_.resize(order_);
  for (int k = 0; k < order_; ++k) {
    std::map<NGramModel::Context, std::set<int>, SequenceLess> explicit_words;
    for (int i = 0; i < num_components_; ++i) {
      for (const auto &[ctx, node] : models[i]->levels()[k]) {
        if (node.probs.empty()) continue;
        NGramModel::Context uctx(ctx.size());
        for (std::size_t j = 0; j < ctx.size(); ++j) uctx[j] = to_union[i][ctx[j]];
        std::set<int> &words = explicit_words[uctx];
        for (const auto &[w, p] : node.probs) words.insert(to_union[i][w]);
      }
    }
    LevelPlan &level = levels_[k];
    for (const auto &[ctx, words] : explicit_words) {
      level.index.emplace(ctx, static_cast<int>(level.contexts.size()));
      level.contexts.push_back(ctx);
      level.begin.push_back(static_cast<int>(level.words.size()));
      std::vector<std::vector<int>> comp_ctx(num_components_);
      for (int i = 0; i < num_components_; ++i)
        comp_ctx[i] = ToComponentIds(ctx, to_component[i]);
      for (int w : words) {
        level.words.push_back(w);
        for (int i = 0; i < num_components_; ++i) {
          const int cw = to_component[i][w];
          level.component_probs.push_back(cw < 0 ? 0.0 : models[i]->Prob(comp_ctx[i], cw));
        }
      }
    }
    level.begin.push_back(static_cast<int>(level.words.size()));
    if (k > 0) {
      level.lower.reserve(level.words.size());
      for (std::size_t c = 0; c < level.contexts.size(); ++c) {
        const std::span<const int> suffix = std::span<const int>(level.contexts[c]).subspan(1);
        for (int e = level.begin[c]; e < level.begin[c + 1]; ++e)
          level.lower.push_back(Walk(suffix, level.words[e], k - 1));
      }
    }
  }
}

InterpolationPlan::Path InterpolationPlan::Walk(std::span<const int> history, int word,
                                                int max_level) const {
  Path path;
  int k = static_cast<int>(std::min<std::size_t>(history.size(), max_level));
  for (; k >= 0; --k) {
    const LevelPlan &level = levels_[k];
    auto ctx = level.index.find(history.subspan(history.size() - k, k));
    if (ctx == level.index.end()) continue;
    const int c = ctx->second;
    const auto first = level.words.begin() + level.begin[c];
    const auto last = level.words.begin() + level.begin[c + 1];
    const auto hit = std::lower_bound(first, last, word);
    if (hit != last && *hit == word) {
      path.level = k;
      path.entry = static_cast<int>(hit - level.words.begin());
      return path;
    }
    path.backoffs.emplace_back(k, c);
  }
  path.entry = -1;
  return path;
}

double InterpolationPlan::Evaluate(const Path &path, const Values &values) const {
  if (path.entry < 0) return 0.0;
  double bow = 1.0;
  for (const auto &[k, c] : path.backoffs) bow *= values.backoffs[k][c];
  return bow * values.probs[path.level][path.entry];
}

InterpolationPlan::Values InterpolationPlan::Compute(
    const std::vector<double> &weights) const {
  if (static_cast<int>(weights.size()) != num_components_)
    throw ParameterError("weight count does not match the number of models");
  Values values;
  values.probs.resize(order_);
  values.backoffs.resize(order_);
  const int K = num_components_;
  for (int k = 0; k < order_; ++k) {
    const LevelPlan &level = levels_[k];
    std::vector<double> &probs = values.probs[k];
    std::vector<double> &backoffs = values.backoffs[k];
    probs.resize(level.words.size());
    backoffs.assign(level.contexts.size(), 1.0);
    for (std::size_t e = 0; e < level.words.size(); ++e) {
      double p = 0.0;
      for (int i = 0; i < K; ++i) p += weights[i] * level.component_probs[e * K + i];
      probs[e] = p;
    }
    for (std::size_t c = 0; c < level.contexts.size(); ++c) {
      const int b = level.begin[c], end = level.begin[c + 1];
      double explicit_mass = 0.0, lower_mass = 0.0;
      for (int e = b; e < end; ++e) {
        explicit_mass += probs[e];
        if (k > 0) lower_mass += Evaluate(level.lower[e], values);
      }
      const double numerator = 1.0 - explicit_mass;
      const double denominator = 1.0 - lower_mass;
      if (k > 0 && numerator > 0.0 && denominator > kNoMass) {
        backoffs[c] = numerator / denominator;
      } else {
        // Nothing left to back off to: renormalize the explicit entries.
        for (int e = b; e < end; ++e) probs[e] /= explicit_mass;
        backoffs[c] = k > 0 ? 0.0 : 1.0;
      }
    }
  }
  return values;
}

NGramModel InterpolationPlan::Materialize(const std::vector<double> &weights) const {
  const Values values = Compute(weights);
  std::vector<NGramModel::Level> levels(order_);
  for (int k = 0; k < order_; ++k) {
    const LevelPlan &level = levels_[k];
    for (std::size_t c = 0; c < level.contexts.size(); ++c) {
      ContextNode node;
      node.backoff = values.backoffs[k][c];
      for (int e = level.begin[c]; e < level.begin[c + 1]; ++e)
        node.probs.emplace_hint(node.probs.end(), level.words[e], values.probs[k][e]);
      levels[k].emplace(level.contexts[c], std::move(node));
    }
  }
  return NGramModel(order_, vocab_, std::move(levels));
}

std::vector<InterpolationPlan::Path> InterpolationPlan::CompileCorpus(
    const Corpus &corpus) const {
  std::vector<Path> events;
  std::vector<int> seq;
  for (const auto &sentence : corpus.sentences) {
    seq.assign(1, Vocabulary::kBosId);
    for (const std::string &tok : sentence) seq.push_back(vocab_.Lookup(tok));
    seq.push_back(Vocabulary::kEosId);
    const std::span<const int> all(seq);
    for (std::size_t t = 1; t < seq.size(); ++t)
      events.push_back(Walk(all.first(t), seq[t], order_ - 1));
  }
  return events;
}

double InterpolationPlan::Perplexity(const std::vector<double> &weights,
                                     const std::vector<Path> &events) const {
  if (events.empty()) throw ParameterError("perplexity over no events");
  const Values values = Compute(weights);
  double logprob = 0.0;
  for (const Path &path : events) {
    const double p = Evaluate(path, values);
    if (p <= 0.0) return std::numeric_limits<double>::infinity();
    logprob += std::log(p);
  }
  return std::exp(-logprob / static_cast<double>(events.size()));
}

NGramModel Interpolate(const std::vector<const NGramModel *> &models,
                       const InterpolationWeights &weights) {
  if (models.size() < 2) throw ParameterError("interpolation needs at least two models");
  if (weights.weights.size() != models.size())
    throw ParameterError("weight count does not match the number of models");
  weights.Validate();
  for (const NGramModel *m : models)
    if (m->order() != models.front()->order())
      throw ParameterError("cannot interpolate models of different orders");
  std::vector<const NGramModel *> active;
  std::vector<double> active_weights;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (weights.weights[i] > 0.0) {
      active.push_back(models[i]);
      active_weights.push_back(weights.weights[i]);
    }
  }
  return InterpolationPlan(active).Materialize(active_weights);
}

std::vector<std::vector<double>> SimplexGrid(int num_components, double step) {
  if (num_components < 1) throw ParameterError("simplex grid needs a component");
  if (!(step > 0.0) || step > 1.0) throw ParameterError("grid step must be in (0, 1]");
  const int units = static_cast<int>(std::lround(1.0 / step));
  std::vector<std::vector<double>> grid;
  std::vector<int> parts(num_components, 0);
  // Enumerate compositions of `units` into num_components parts,
  // lexicographically on the leading parts.
  auto recurse = [&](auto &&self, int i, int remaining) -> void {
    if (i == num_components - 1) {
      parts[i] = remaining;
      std::vector<double> w(num_components);
      for (int j = 0; j < num_components; ++j)
        w[j] = static_cast<double>(parts[j]) / units;
      grid.push_back(std::move(w));
      return;
    }
    for (int u = 0; u <= remaining; ++u) {
      parts[i] = u;
      self(self, i + 1, remaining - u);
    }
  };
  recurse(recurse, 0, units);
  return grid;
}

namespace {

// Evaluates interpolated perplexities, caching one plan per set of
// components with non-zero weight.
class MixtureEvaluator {
 public:
  MixtureEvaluator(const std::vector<const NGramModel *> &models, const Corpus &dev)
      : models_(models), dev_(dev) {}

  double operator()(const std::vector<double> &weights) {
    unsigned mask = 0;
    std::vector<double> active;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) {
        mask |= 1u << i;
        active.push_back(weights[i]);
      }
    }
    auto it = cache_.find(mask);
    if (it == cache_.end()) {
      std::vector<const NGramModel *> subset;
      for (std::size_t i = 0; i < models_.size(); ++i)
        if (mask & (1u << i)) subset.push_back(models_[i]);
      Entry entry{InterpolationPlan(subset), {}};
      entry.events = entry.plan.CompileCorpus(dev_);
      it = cache_.emplace(mask, std::move(entry)).first;
    }
    return it->second.plan.Perplexity(active, it->second.events);
  }

 private:
  struct Entry {
    InterpolationPlan plan;
    std::vector<InterpolationPlan::Path> events;
  };
  const std::vector<const NGramModel *> &models_;
  const Corpus &dev_;
  std::map<unsigned, Entry> cache_;
};

// Moves coordinate i to t and rescales the other weights to keep the sum.
std::vector<double> MoveCoordinate(const std::vector<double> &base, std::size_t i,
                                   double t) {
  std::vector<double> w(base.size());
  const double rest = 1.0 - base[i];
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (j == i) w[j] = t;
    else if (rest > 0.0) w[j] = (1.0 - t) * base[j] / rest;
    else w[j] = (1.0 - t) / static_cast<double>(base.size() - 1);
  }
  return w;
}

}  // namespace

InterpolationWeights OptimizeWeights(const std::vector<const NGramModel *> &components,
                                     const Corpus &dev,
                                     const WeightSearchOptions &opts) {
  if (components.empty()) throw ParameterError("no components to weight");
  if (dev.sentences.empty()) throw ParameterError("empty development corpus");
  if (components.size() == 1) return InterpolationWeights{{1.0}};
  if (components.size() > 8) throw ParameterError("too many interpolation components");
  for (const NGramModel *m : components)
    if (m->order() != components.front()->order())
      throw ParameterError("cannot interpolate models of different orders");

  MixtureEvaluator perplexity(components, dev);
  std::vector<double> best;
  double best_ppl = std::numeric_limits<double>::infinity();
  for (const std::vector<double> &w : SimplexGrid(static_cast<int>(components.size()),
                                                  opts.grid_step)) {
    const double ppl = perplexity(w);
    if (best.empty() || ppl < best_ppl) {
      best = w;
      best_ppl = ppl;
    }
  }

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    double lo = std::max(0.0, best[i] - opts.grid_step);
    double hi = std::min(1.0, best[i] + opts.grid_step);
    const std::vector<double> base = best;
    auto f = [&](double t) { return perplexity(MoveCoordinate(base, i, t)); };
    double a = hi - golden * (hi - lo), b = lo + golden * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < opts.golden_iterations; ++it) {
      if (fa <= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - golden * (hi - lo);
        fa = f(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + golden * (hi - lo);
        fb = f(b);
      }
    }
    const double t = fa <= fb ? a : b;
    const double ppl = std::min(fa, fb);
    if (ppl < best_ppl) {
      best = MoveCoordinate(base, i, t);
      best_ppl = ppl;
    }
  }
  // Exact simplex membership after floating-point rescaling.
  double sum = 0.0;
  for (double &w : best) {
    w = std::max(w, 0.0);
    sum += w;
  }
  for (double &w : best) w /= sum;
  return InterpolationWeights{best};
}

}  // namespace rolediar::lm
