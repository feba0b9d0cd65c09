// src/synth/world.cc

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

#include <algorithm>
#include <cmath>

#include "rolediar/core/error.h"
#include "rolediar/synth/synth.h"

namespace rolediar::synth {

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t tag) {
  // splitmix64 over the combined state.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void WorldOptions::Validate() const {
  if (!(role_vocab_divergence >= 0.0) || !std::isfinite(role_vocab_divergence))
    throw ParameterError("role_vocab_divergence must be finite and >= 0");
  if (dim < 2) throw ParameterError("embedding dimension must be >= 2");
  if (function_words < 1 || shared_words < 1 || exclusive_words < 1)
    throw ParameterError("vocabulary sizes must be positive");
  if (!(successor_weight >= 0.0 && successor_weight <= 1.0))
    throw ParameterError("successor_weight must lie in [0, 1]");
  if (min_sentence_length < 1 || max_sentence_length < min_sentence_length)
    throw ParameterError("bad sentence length range");
  if (role_names.size() < 2) throw ParameterError("at least two roles are required");
  if (filler_rates.size() != role_names.size())
    throw ParameterError("one filler rate per role is required");
  for (double r : filler_rates)
    if (!(r >= 0.0 && r < 1.0)) throw ParameterError("filler rates must lie in [0, 1)");
}

namespace {

// Pronounceable, distinct pseudo-words: index written in base-|syllables|.
std::string PseudoWord(int index) {
  static const char *kSyllables[] = {"ba", "ko", "mi", "tu", "le", "ra", "so", "ni",
                                     "de", "pu", "ga", "fo", "zi", "ve", "lu", "ha"};
  constexpr int kBase = 16;
  std::string word;
  int n = index;
  do {
    word += kSyllables[n % kBase];
    n /= kBase;
  } while (n > 0);
  if (word.size() < 4) word += "n";
  return word;
}

double Zipf(int rank) { return 1.0 / (rank + 1.0); }

Eigen::MatrixXd RandomSpd(int dim, double lo, double hi, Rng &rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = uniform(rng);
  return q * d.asDiagonal() * q.transpose();
}

Eigen::MatrixXd SymmetricRoot(const Eigen::MatrixXd &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

int World::Distribution::Sample(Rng &rng) const {
  std::uniform_real_distribution<double> u(0.0, cumulative.back());
  const double x = u(rng);
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  if (it == cumulative.end()) --it;
  return ids[it - cumulative.begin()];
}

World::Distribution World::Make(const std::vector<std::pair<int, double>> &weights) {
  Distribution d;
  double acc = 0.0;
  for (const auto &[id, w] : weights) {
    if (w <= 0.0) continue;
    acc += w;
    d.ids.push_back(id);
    d.cumulative.push_back(acc);
  }
  return d;
}

World::World(const WorldOptions &opts) : opts_(opts) {
  opts_.Validate();
  Rng rng(DeriveSeed(opts_.seed, 0x77));
  static const char *kFunction[] = {
      "the", "a", "and", "to", "of", "i", "you", "it", "that", "is", "in", "we",
      "was", "so", "but", "not", "this", "have", "be", "on", "with", "do", "what",
      "just", "can", "for", "my", "your", "are", "there", "if", "about", "they",
      "think", "know", "like", "when", "how", "would", "me"};
  constexpr int kNamedFunction = sizeof(kFunction) / sizeof(kFunction[0]);
  static const char *kFillers[] = {"yeah", "mhm", "okay", "right", "uh", "um", "hmm", "sure"};

  const int num_roles = this->num_roles();
  int next = 0;
  std::vector<int> function_ids, shared_ids;
  std::vector<std::vector<int>> exclusive_ids(num_roles);
  for (int i = 0; i < opts_.function_words; ++i) {
    tokens_.push_back(i < kNamedFunction ? std::string(kFunction[i]) : PseudoWord(next++) + "s");
    function_ids.push_back(static_cast<int>(tokens_.size()) - 1);
  }
  for (int i = 0; i < opts_.shared_words; ++i) {
    tokens_.push_back(PseudoWord(next++));
    shared_ids.push_back(static_cast<int>(tokens_.size()) - 1);
  }
  for (int r = 0; r < num_roles; ++r)
    for (int i = 0; i < opts_.exclusive_words; ++i) {
      tokens_.push_back(PseudoWord(next++));
      exclusive_ids[r].push_back(static_cast<int>(tokens_.size()) - 1);
    }
  for (const char *f : kFillers) {
    fillers_.push_back(f);
    tokens_.push_back(f);
  }

  // Base mass: function words and shared content, each Zipf-ranked.
  std::vector<std::pair<int, double>> base;
  double fsum = 0.0, ssum = 0.0;
  for (int i = 0; i < opts_.function_words; ++i) fsum += Zipf(i);
  for (int i = 0; i < opts_.shared_words; ++i) ssum += Zipf(i);
  for (int i = 0; i < opts_.function_words; ++i)
    base.emplace_back(function_ids[i], 0.45 * Zipf(i) / fsum);
  // Shared content ranks are shuffled so content frequency is not index order.
  std::vector<int> shuffled = shared_ids;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (int i = 0; i < opts_.shared_words; ++i)
    base.emplace_back(shuffled[i], 0.55 * Zipf(i) / ssum);

  double esum = 0.0;
  for (int i = 0; i < opts_.exclusive_words; ++i) esum += Zipf(i);
  const double rho = 1.0 - std::exp(-opts_.role_vocab_divergence);
  for (int r = 0; r < num_roles; ++r) {
    std::vector<std::pair<int, double>> w;
    for (const auto &[id, p] : base) w.emplace_back(id, (1.0 - rho) * p);
    for (int i = 0; i < opts_.exclusive_words; ++i)
      w.emplace_back(exclusive_ids[r][i], rho * Zipf(i) / esum);
    role_unigram_.push_back(Make(w));
    // Planted bigrams: three successors per word, drawn from the role's own mass.
    std::vector<std::vector<int>> succ(tokens_.size());
    for (auto &s : succ)
      for (int k = 0; k < 3; ++k) s.push_back(role_unigram_.back().Sample(rng));
    role_successors_.push_back(std::move(succ));
  }

  // General text: base plus every role's exclusive words, evenly.
  std::vector<std::pair<int, double>> g;
  for (const auto &[id, p] : base) g.emplace_back(id, 0.7 * p);
  for (int r = 0; r < num_roles; ++r)
    for (int i = 0; i < opts_.exclusive_words; ++i)
      g.emplace_back(exclusive_ids[r][i], 0.3 / num_roles * Zipf(i) / esum);
  general_ = Make(g);

  // Embedding model.
  std::normal_distribution<double> normal;
  mean_.resize(opts_.dim);
  for (int i = 0; i < opts_.dim; ++i) mean_(i) = 2.0 * normal(rng);
  between_ = RandomSpd(opts_.dim, 0.5, 3.0, rng);
  within_ = RandomSpd(opts_.dim, 0.5, 1.5, rng);
  between_root_ = SymmetricRoot(between_);
  within_root_ = SymmetricRoot(within_);
}

std::vector<std::string> World::SampleFrom(const Distribution &unigram,
                                           const std::vector<std::vector<int>> *successors,
                                           Rng &rng) const {
  std::uniform_int_distribution<int> length(opts_.min_sentence_length,
                                            opts_.max_sentence_length);
  std::uniform_real_distribution<double> u;
  std::uniform_int_distribution<int> pick(0, 2);
  const int n = length(rng);
  std::vector<std::string> out;
  int prev = -1;
  for (int i = 0; i < n; ++i) {
    int id;
    if (successors != nullptr && prev >= 0 && u(rng) < opts_.successor_weight)
      id = (*successors)[prev][pick(rng)];
    else
      id = unigram.Sample(rng);
    out.push_back(tokens_[id]);
    prev = id;
  }
  return out;
}

std::vector<std::string> World::RoleSentence(int role, Rng &rng) const {
  if (role < 0 || role >= num_roles()) throw ParameterError("role index out of range");
  return SampleFrom(role_unigram_[role], &role_successors_[role], rng);
}

std::vector<std::string> World::FillerSentence(Rng &rng) const {
  std::uniform_int_distribution<int> count(1, 2);
  std::uniform_int_distribution<std::size_t> pick(0, fillers_.size() - 1);
  std::vector<std::string> out(count(rng));
  for (auto &t : out) t = fillers_[pick(rng)];
  return out;
}

std::vector<std::string> World::GeneralSentence(Rng &rng) const {
  return SampleFrom(general_, nullptr, rng);
}

std::string World::SampleToken(Rng &rng) const { return tokens_[general_.Sample(rng)]; }

lm::Corpus World::RoleCorpus(int role, int sentences, std::uint64_t seed) const {
  if (role < 0 || role >= num_roles()) throw ParameterError("role index out of range");
  Rng rng(seed);
  std::uniform_real_distribution<double> u;
  lm::Corpus c{opts_.role_names[role], {}};
  for (int i = 0; i < sentences; ++i)
    c.sentences.push_back(u(rng) < opts_.filler_rates[role] ? FillerSentence(rng)
                                                             : RoleSentence(role, rng));
  return c;
}

lm::Corpus World::GeneralCorpus(int sentences, std::uint64_t seed) const {
  Rng rng(seed);
  std::uniform_real_distribution<double> u;
  lm::Corpus c{"background", {}};
  for (int i = 0; i < sentences; ++i)
    c.sentences.push_back(u(rng) < 0.05 ? FillerSentence(rng) : GeneralSentence(rng));
  return c;
}

Eigen::VectorXd World::SampleSpeaker(Rng &rng) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(opts_.dim);
  for (int i = 0; i < opts_.dim; ++i) z(i) = normal(rng);
  return mean_ + between_root_ * z;
}

Eigen::VectorXd World::SampleObservation(const Eigen::VectorXd &speaker, Rng &rng) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(opts_.dim);
  for (int i = 0; i < opts_.dim; ++i) z(i) = normal(rng);
  return speaker + within_root_ * z;
}

}  // namespace rolediar::synth
