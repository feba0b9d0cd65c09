// src/synth/session.cc

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
#include <cstdio>

#include "rolediar/core/error.h"
#include "rolediar/core/intervals.h"
#include "rolediar/segmenter/segmenter.h"
#include "rolediar/synth/synth.h"

namespace rolediar::synth {

void SyntheticSessionSpec::Validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  auto below_one = [](double x) { return x >= 0.0 && x < 1.0; };
  if (num_turns < 2) throw ParameterError("num_turns must be >= 2");
  if (!(role_vocab_divergence >= 0.0) || !std::isfinite(role_vocab_divergence))
    throw ParameterError("role_vocab_divergence must be finite and >= 0");
  if (!(speaker_separation >= 0.0) || !std::isfinite(speaker_separation))
    throw ParameterError("speaker_separation must be finite and >= 0");
  if (!below_one(noise_fraction)) throw ParameterError("noise_fraction must lie in [0, 1)");
  if (!below_one(substitution_rate) || !below_one(deletion_rate))
    throw ParameterError("corruption rates must lie in [0, 1)");
  if (!unit(filler_fraction)) throw ParameterError("filler_fraction must lie in [0, 1]");
  if (!unit(backchannel_noise)) throw ParameterError("backchannel_noise must lie in [0, 1]");
  if (!(noise_distance_min >= 0.0) || noise_distance_max < noise_distance_min)
    throw ParameterError("bad noise distance range");
  if (mean_sentences_per_turn.size() != 2 ||
      !(mean_sentences_per_turn[0] >= 1.0 && mean_sentences_per_turn[1] >= 1.0))
    throw ParameterError("mean_sentences_per_turn needs two values >= 1");
  if (gap_threshold < 0 || merge_gap < 0) throw ParameterError("gaps must be >= 0");
  windowing.Validate();
}

CorruptedTranscript CorruptTranscript(const std::vector<TimedWord> &words,
                                      double substitution_rate, double deletion_rate,
                                      const std::vector<std::string> &vocabulary, Rng &rng) {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(substitution_rate) || !unit(deletion_rate))
    throw ParameterError("corruption rates must lie in [0, 1]");
  if (substitution_rate > 0.0 && vocabulary.empty())
    throw ParameterError("substitution needs a vocabulary");
  std::uniform_real_distribution<double> u;
  CorruptedTranscript out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    // Both draws are always taken so the stream does not depend on outcomes.
    const double del = u(rng), sub = u(rng);
    if (del < deletion_rate) continue;
    TimedWord w = words[i];
    if (sub < substitution_rate) {
      std::uniform_int_distribution<std::size_t> pick(0, vocabulary.size() - 1);
      w.token = vocabulary[pick(rng)];
    }
    out.words.push_back(std::move(w));
    out.kept.push_back(i);
  }
  return out;
}

namespace {

Eigen::VectorXd RandomUnit(int dim, Rng &rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-9);
  return v.normalized();
}

Millis UniformMs(double lo_s, double hi_s, Rng &rng) {
  std::uniform_real_distribution<double> u(lo_s, hi_s);
  return SecondsToMillis(u(rng));
}

}  // namespace

SyntheticSession GenerateSession(const World &world, const SyntheticSessionSpec &spec,
                                 const std::string &session_id) {
  spec.Validate();
  if (world.num_roles() != 2) throw ParameterError("sessions need exactly two roles");
  SyntheticSession s;
  s.session_id = session_id;
  Rng text_rng(DeriveSeed(spec.seed, 1));
  Rng time_rng(DeriveSeed(spec.seed, 2));
  Rng asr_rng(DeriveSeed(spec.seed, 3));
  Rng emb_rng(DeriveSeed(spec.seed, 4));

  // Text and timing.
  std::uniform_real_distribution<double> u;
  const auto &names = world.options().role_names;
  const int first = u(text_rng) < 0.5 ? 0 : 1;
  Millis t = UniformMs(0.2, 1.0, time_rng);
  // Backchannels go between two sentences of the same turn. The listener's
  // share follows the world's filler rates; the overall rate is scaled so
  // fillers make up filler_fraction of all sentences on average.
  const auto &rates = world.options().filler_rates;
  const auto &mean_sent = spec.mean_sentences_per_turn;
  double backchannel[2] = {0.0, 0.0};
  const double gaps = (mean_sent[0] - 1.0) * rates[1] + (mean_sent[1] - 1.0) * rates[0];
  if (spec.filler_fraction > 0.0 && gaps > 0.0) {
    const double per_sentence = spec.filler_fraction >= 1.0
                                    ? 1.0
                                    : spec.filler_fraction / (1.0 - spec.filler_fraction);
    const double kappa = per_sentence * (mean_sent[0] + mean_sent[1]) / gaps;
    for (int r = 0; r < 2; ++r) backchannel[r] = std::min(1.0, kappa * rates[r]);
  }
  std::geometric_distribution<int> extra_sentences[2] = {
      std::geometric_distribution<int>(1.0 / mean_sent[0]),
      std::geometric_distribution<int>(1.0 / mean_sent[1])};
  auto emit = [&](const std::vector<std::string> &tokens, int role, bool filler) {
    const std::size_t sentence = s.filler_sentence.size();
    s.filler_sentence.push_back(filler);
    for (std::size_t w = 0; w < tokens.size(); ++w) {
      if (w > 0) t += UniformMs(0.0, 0.1, time_rng);
      const Millis dur = UniformMs(0.2, 0.5, time_rng);
      s.reference_words.push_back(
          TimedWord{tokens[w], TimeInterval(t, t + dur), names[role], std::nullopt});
      s.sentence_of.push_back(sentence);
      t += dur;
    }
  };
  for (int turn = 0; turn < spec.num_turns; ++turn) {
    const int role = (first + turn) % 2;
    const int listener = 1 - role;
    if (turn > 0) t += UniformMs(0.2, 1.6, time_rng);
    const int sentences = 1 + extra_sentences[role](text_rng);
    for (int k = 0; k < sentences; ++k) {
      if (k > 0) t += UniformMs(0.05, 0.2, time_rng);
      emit(world.RoleSentence(role, text_rng), role, false);
      if (k + 1 < sentences && u(text_rng) < backchannel[listener]) {
        t += UniformMs(0.05, 0.2, time_rng);
        emit(world.FillerSentence(text_rng), listener, true);
      }
    }
  }

  // Reference: per-word speech, short in-turn pauses bridged.
  std::vector<LabeledInterval> speech;
  for (const auto &w : s.reference_words) speech.push_back({w.interval, *w.speaker});
  s.reference.session_id = session_id;
  s.reference.records = MergeAdjacent(speech, spec.merge_gap);
  s.reference.Sort();

  // Transcript.
  auto corrupted = CorruptTranscript(s.reference_words, spec.substitution_rate,
                                     spec.deletion_rate, world.vocabulary(), asr_rng);
  s.transcript = std::move(corrupted.words);
  s.kept = std::move(corrupted.kept);
  for (std::size_t i = 0; i < s.kept.size(); ++i)
    if (i == 0 || s.sentence_of[s.kept[i]] != s.sentence_of[s.kept[i - 1]])
      s.sentence_marks.push_back(i);

  // Speakers and noise source in embedding space.
  const int dim = world.options().dim;
  const Eigen::VectorXd centre = world.SampleSpeaker(emb_rng);
  const Eigen::VectorXd axis = world.within_root() * RandomUnit(dim, emb_rng);
  Eigen::VectorXd speaker_mean[2] = {centre + 0.5 * spec.speaker_separation * axis,
                                     centre - 0.5 * spec.speaker_separation * axis};
  std::uniform_real_distribution<double> noise_scale(spec.noise_distance_min,
                                                     spec.noise_distance_max);
  const Eigen::VectorXd noise_mean =
      centre + noise_scale(emb_rng) * (world.within_root() * RandomUnit(dim, emb_rng));

  // Windows over the transcript's pre-segments; content from the reference.
  if (s.transcript.empty()) return s;
  const auto presegments = segmenter::Presegment(s.transcript, spec.gap_threshold);
  std::size_t window_index = 0;
  for (const auto &seg : presegments) {
    for (const auto &iv : embed::UniformWindows(seg.interval(), spec.windowing)) {
      double weight[2] = {0.0, 0.0};
      Millis nearest = -1;
      int nearest_role = 0;
      for (const auto &w : s.reference_words) {
        const int role = *w.speaker == names[0] ? 0 : 1;
        weight[role] += static_cast<double>(iv.OverlapWith(w.interval));
        const Millis d = std::max<Millis>(
            0, std::max(w.interval.start() - iv.end(), iv.start() - w.interval.end()));
        if (nearest < 0 || d < nearest) {
          nearest = d;
          nearest_role = role;
        }
      }
      Eigen::VectorXd m;
      if (weight[0] + weight[1] > 0.0)
        m = (weight[0] * speaker_mean[0] + weight[1] * speaker_mean[1]) /
            (weight[0] + weight[1]);
      else
        m = speaker_mean[nearest_role];
      bool in_backchannel = false;
      for (std::size_t w = 0; w < s.reference_words.size() && !in_backchannel; ++w)
        in_backchannel = s.filler_sentence[s.sentence_of[w]] &&
                         iv.Overlaps(s.reference_words[w].interval);
      const double draw = u(emb_rng), backchannel_draw = u(emb_rng);
      const bool noise = draw < spec.noise_fraction ||
                         (in_backchannel && backchannel_draw < spec.backchannel_noise);
      Eigen::VectorXd x = world.SampleObservation(noise ? noise_mean : m, emb_rng);
      char id[32];
      std::snprintf(id, sizeof(id), "w%05zu", window_index++);
      s.windows.push_back({session_id, id, iv, std::move(x)});
      s.noise_window.push_back(noise);
    }
  }
  return s;
}

LabelledEmbeddings GenerateTrainingEmbeddings(const World &world, int speakers, int per_speaker,
                                              std::uint64_t seed) {
  if (speakers < 1 || per_speaker < 1) throw ParameterError("counts must be positive");
  Rng rng(seed);
  LabelledEmbeddings out;
  for (int k = 0; k < speakers; ++k) {
    const Eigen::VectorXd y = world.SampleSpeaker(rng);
    for (int j = 0; j < per_speaker; ++j) {
      out.vectors.push_back(world.SampleObservation(y, rng));
      out.speakers.push_back("train" + std::to_string(k));
    }
  }
  return out;
}

Generated Generate(const SyntheticSessionSpec &spec, int train_sentences, int dev_sentences,
                   int background_sentences) {
  spec.Validate();
  WorldOptions wo;
  wo.seed = DeriveSeed(spec.seed, 100);
  wo.role_vocab_divergence = spec.role_vocab_divergence;
  World world(wo);
  Generated g{world, {}, {}, {}, {}};
  g.session = GenerateSession(g.world, spec, "session");
  g.background = g.world.GeneralCorpus(background_sentences, DeriveSeed(spec.seed, 101));
  for (int r = 0; r < g.world.num_roles(); ++r) {
    g.role_train.push_back(g.world.RoleCorpus(r, train_sentences, DeriveSeed(spec.seed, 200 + r)));
    g.role_dev.push_back(g.world.RoleCorpus(r, dev_sentences, DeriveSeed(spec.seed, 300 + r)));
  }
  return g;
}

}  // namespace rolediar::synth
