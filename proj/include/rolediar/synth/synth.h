// include/rolediar/synth/synth.h

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

#ifndef ROLEDIAR_SYNTH_SYNTH_H_
#define ROLEDIAR_SYNTH_SYNTH_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolediar/core/hypothesis.h"
#include "rolediar/core/types.h"
#include "rolediar/embed/embed.h"
#include "rolediar/lm/corpus.h"

namespace rolediar::synth {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a tag.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t tag);

// ---------------------------------------------------------------------------
// The planted world: role-specific text distributions and a two-covariance
// speaker-embedding model.

struct WorldOptions {
  std::uint64_t seed = 1;
  /// Mass of each role's exclusive vocabulary is 1 - exp(-divergence).
  double role_vocab_divergence = 1.0;
  int dim = 32;
  int function_words = 40;
  int shared_words = 300;
  int exclusive_words = 200;
  double successor_weight = 0.3;  // chance the next word follows a planted bigram
  int min_sentence_length = 3;
  int max_sentence_length = 11;
  /// Share of filler-only sentences in each role's own text.
  std::vector<double> filler_rates = {0.25, 0.01};
  std::vector<std::string> role_names = {"therapist", "patient"};

  void Validate() const;
};

class World {
 public:
  explicit World(const WorldOptions &opts);

  const WorldOptions &options() const { return opts_; }
  int num_roles() const { return static_cast<int>(opts_.role_names.size()); }
  const std::vector<std::string> &vocabulary() const { return tokens_; }
  const std::vector<std::string> &fillers() const { return fillers_; }

  /// A sentence of role `role` (0-based); never a filler sentence.
  std::vector<std::string> RoleSentence(int role, Rng &rng) const;
  /// One or two filler tokens.
  std::vector<std::string> FillerSentence(Rng &rng) const;
  /// Out-of-domain text covering the whole vocabulary.
  std::vector<std::string> GeneralSentence(Rng &rng) const;
  /// A token drawn from the general distribution.
  std::string SampleToken(Rng &rng) const;

  /// Role text as found in training data: fillers at the role's rate.
  lm::Corpus RoleCorpus(int role, int sentences, std::uint64_t seed) const;
  lm::Corpus GeneralCorpus(int sentences, std::uint64_t seed) const;

  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::MatrixXd &between() const { return between_; }
  const Eigen::MatrixXd &within() const { return within_; }
  const Eigen::MatrixXd &between_root() const { return between_root_; }
  const Eigen::MatrixXd &within_root() const { return within_root_; }

  /// A speaker identity mu + y, y ~ N(0, B).
  Eigen::VectorXd SampleSpeaker(Rng &rng) const;
  /// An observation of `speaker`: speaker + e, e ~ N(0, W).
  Eigen::VectorXd SampleObservation(const Eigen::VectorXd &speaker, Rng &rng) const;

 private:
  struct Distribution {
    std::vector<int> ids;
    std::vector<double> cumulative;
    int Sample(Rng &rng) const;
  };
  static Distribution Make(const std::vector<std::pair<int, double>> &weights);
  std::vector<std::string> SampleFrom(const Distribution &unigram,
                                      const std::vector<std::vector<int>> *successors,
                                      Rng &rng) const;

  WorldOptions opts_;
  std::vector<std::string> tokens_;
  std::vector<std::string> fillers_;
  std::vector<Distribution> role_unigram_;
  std::vector<std::vector<std::vector<int>>> role_successors_;
  Distribution general_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd between_, within_, between_root_, within_root_;
};

// ---------------------------------------------------------------------------
// Sessions.

struct SyntheticSessionSpec {
  std::uint64_t seed = 1;
  int num_turns = 40;
  double role_vocab_divergence = 1.0;  // used when the spec builds its own world
  double speaker_separation = 8.0;     // Mahalanobis distance under W
  double noise_fraction = 0.0;         // windows replaced by noise embeddings
  double substitution_rate = 0.0;      // transcript corruption
  double deletion_rate = 0.0;
  /// Share of sentences that are listener backchannels (filler words only),
  /// inserted between two sentences of the other speaker's turn; the
  /// listener's role is picked in proportion to the world's filler rates.
  double filler_fraction = 0.0;
  /// Chance that a window overlapping a backchannel is replaced by a noise
  /// embedding (interjections corrupt the acoustic evidence around them).
  double backchannel_noise = 0.0;
  /// Mahalanobis distance (under W) of the noise source from the speakers'
  /// midpoint, drawn per session uniformly from the range.
  double noise_distance_min = 2.0;
  double noise_distance_max = 8.0;
  /// Mean turn length in sentences, per role (geometric).
  std::vector<double> mean_sentences_per_turn = {1.5, 3.5};
  embed::WindowingOptions windowing;
  Millis gap_threshold = 1000;  // pre-segmentation used for the windows
  Millis merge_gap = 200;       // in-turn silence bridged in the reference

  void Validate() const;
};

struct CorruptedTranscript {
  std::vector<TimedWord> words;
  std::vector<std::size_t> kept;  // source index of every surviving word
};

/// Deletes each word with probability `deletion_rate`, otherwise replaces
/// its token by a uniform draw from `vocabulary` with probability
/// `substitution_rate`. Timing and speaker of surviving words are kept.
CorruptedTranscript CorruptTranscript(const std::vector<TimedWord> &words,
                                      double substitution_rate, double deletion_rate,
                                      const std::vector<std::string> &vocabulary, Rng &rng);

struct SyntheticSession {
  std::string session_id;
  std::vector<TimedWord> reference_words;  // clean, with speaker
  std::vector<std::size_t> sentence_of;    // sentence index per reference word
  std::vector<bool> filler_sentence;       // per sentence
  std::vector<TimedWord> transcript;       // possibly corrupted
  std::vector<std::size_t> kept;           // transcript[i] came from reference_words[kept[i]]
  std::vector<std::size_t> sentence_marks; // sentence starts within the transcript
  std::vector<embed::EmbeddingRecord> windows;
  std::vector<bool> noise_window;
  DiarizationHypothesis reference;
};

SyntheticSession GenerateSession(const World &world, const SyntheticSessionSpec &spec,
                                 const std::string &session_id);

/// Labelled embeddings from `speakers` fresh speakers.
struct LabelledEmbeddings {
  std::vector<EmbeddingVector> vectors;
  std::vector<std::string> speakers;
};
LabelledEmbeddings GenerateTrainingEmbeddings(const World &world, int speakers, int per_speaker,
                                              std::uint64_t seed);

/// Everything generate() promises for a single spec: a world seeded from the
/// spec, one session, and role corpora for LM training.
struct Generated {
  World world;
  SyntheticSession session;
  lm::Corpus background;
  std::vector<lm::Corpus> role_train;
  std::vector<lm::Corpus> role_dev;
};
Generated Generate(const SyntheticSessionSpec &spec, int train_sentences = 1500,
                   int dev_sentences = 300, int background_sentences = 4000);

}  // namespace rolediar::synth

#endif  // ROLEDIAR_SYNTH_SYNTH_H_
