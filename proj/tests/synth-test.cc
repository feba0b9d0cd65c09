// tests/synth-test.cc

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
#include <map>
#include <set>

#include "doctest.h"
#include "rolediar/core/error.h"
#include "rolediar/diarize/diarize.h"
#include "rolediar/embed/embed.h"
#include "rolediar/eval/der.h"
#include "rolediar/plda/plda.h"
#include "rolediar/roles/roles.h"
#include "rolediar/segmenter/segmenter.h"
#include "rolediar/synth/synth.h"

using namespace rolediar;
using namespace rolediar::synth;

namespace {

World SmallWorld(std::uint64_t seed = 7, double divergence = 1.0) {
  WorldOptions wo;
  wo.seed = seed;
  wo.role_vocab_divergence = divergence;
  return World(wo);
}

SyntheticSessionSpec Spec(std::uint64_t seed) {
  SyntheticSessionSpec s;
  s.seed = seed;
  s.num_turns = 20;
  return s;
}

std::vector<TimedWord> ManyWords(int n) {
  std::vector<TimedWord> w;
  for (int i = 0; i < n; ++i)
    w.push_back({"w" + std::to_string(i), TimeInterval(i * 300, i * 300 + 250), "a", 0.9});
  return w;
}

struct AudioSystem {
  embed::NormalizationChain chain;
  plda::PldaModel model;
};

AudioSystem TrainAudio(const World &world) {
  auto train = GenerateTrainingEmbeddings(world, 200, 8, 99);
  auto chain = embed::EstimateLda(train.vectors, train.speakers, 200, true);
  std::vector<EmbeddingVector> projected;
  for (const auto &v : train.vectors) projected.push_back(embed::Normalize(v, chain));
  auto trained = plda::TrainPlda(projected, train.speakers);
  return {chain, trained.model};
}

double AudioOnlyDer(const World &world, const AudioSystem &sys, double separation,
                    double noise, int sessions, std::uint64_t seed0) {
  HypothesisSet ref, hyp;
  for (int i = 0; i < sessions; ++i) {
    auto spec = Spec(seed0 + i);
    spec.speaker_separation = separation;
    spec.noise_fraction = noise;
    const std::string id = "s" + std::to_string(i);
    auto s = GenerateSession(world, spec, id);
    std::vector<embed::AudioWindow> windows;
    for (const auto &w : s.windows) windows.push_back({w.interval, w.vector});
    ref[id] = s.reference;
    hyp[id] = diarize::HacCluster(id, embed::NormalizeWindows(windows, sys.chain), sys.model, 2);
  }
  return eval::ScoreDerSet(ref, hyp).der;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("session spec validation") {
  World world = SmallWorld();
  auto bad = [&](auto mutate) {
    auto s = Spec(1);
    mutate(s);
    CHECK_THROWS_AS(GenerateSession(world, s, "x"), ParameterError);
  };
  bad([](SyntheticSessionSpec &s) { s.num_turns = 1; });
  bad([](SyntheticSessionSpec &s) { s.noise_fraction = 1.0; });
  bad([](SyntheticSessionSpec &s) { s.substitution_rate = 1.0; });
  bad([](SyntheticSessionSpec &s) { s.speaker_separation = -1.0; });
  bad([](SyntheticSessionSpec &s) { s.noise_fraction = 1.5; });
  bad([](SyntheticSessionSpec &s) { s.substitution_rate = -0.1; });
  bad([](SyntheticSessionSpec &s) { s.deletion_rate = 2.0; });
  bad([](SyntheticSessionSpec &s) { s.filler_fraction = -0.5; });
  bad([](SyntheticSessionSpec &s) { s.role_vocab_divergence = -1.0; });
  bad([](SyntheticSessionSpec &s) { s.noise_distance_max = s.noise_distance_min - 1.0; });
  bad([](SyntheticSessionSpec &s) { s.mean_sentences_per_turn = {0.5, 2.0}; });

  WorldOptions wo;
  wo.filler_rates = {0.1};
  CHECK_THROWS_AS(World{wo}, ParameterError);
  wo = WorldOptions{};
  wo.dim = 1;
  CHECK_THROWS_AS(World{wo}, ParameterError);
}

TEST_CASE("same seed gives identical output") {
  World a = SmallWorld(3), b = SmallWorld(3);
  auto spec = Spec(11);
  spec.noise_fraction = 0.2;
  spec.substitution_rate = 0.1;
  spec.deletion_rate = 0.1;
  spec.filler_fraction = 0.2;
  auto s1 = GenerateSession(a, spec, "x");
  auto s2 = GenerateSession(b, spec, "x");
  REQUIRE(s1.reference_words.size() == s2.reference_words.size());
  for (std::size_t i = 0; i < s1.reference_words.size(); ++i) {
    CHECK(s1.reference_words[i].token == s2.reference_words[i].token);
    CHECK(s1.reference_words[i].interval == s2.reference_words[i].interval);
  }
  REQUIRE(s1.transcript.size() == s2.transcript.size());
  for (std::size_t i = 0; i < s1.transcript.size(); ++i)
    CHECK(s1.transcript[i].token == s2.transcript[i].token);
  CHECK(s1.reference.records == s2.reference.records);
  CHECK(s1.sentence_marks == s2.sentence_marks);
  REQUIRE(s1.windows.size() == s2.windows.size());
  for (std::size_t i = 0; i < s1.windows.size(); ++i) {
    CHECK(s1.windows[i].interval == s2.windows[i].interval);
    CHECK(s1.windows[i].vector == s2.windows[i].vector);  // bitwise
  }

  auto g1 = Generate(spec, 50, 20, 50), g2 = Generate(spec, 50, 20, 50);
  CHECK(g1.background.sentences == g2.background.sentences);
  CHECK(g1.role_train[1].sentences == g2.role_train[1].sentences);
  CHECK(g1.session.windows.back().vector == g2.session.windows.back().vector);

  auto other = Spec(12);
  auto s3 = GenerateSession(a, other, "x");
  CHECK(s3.reference.records != s1.reference.records);
}

TEST_CASE("session structure invariants") {
  World world = SmallWorld();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto spec = Spec(seed);
    spec.filler_fraction = 0.2;
    spec.deletion_rate = 0.1;
    spec.substitution_rate = 0.1;
    spec.noise_fraction = 0.15;
    auto s = GenerateSession(world, spec, "x");
    REQUIRE_FALSE(s.reference_words.empty());
    // Words are time ordered and disjoint; sentences are speaker pure.
    for (std::size_t i = 1; i < s.reference_words.size(); ++i) {
      CHECK(s.reference_words[i - 1].interval.end() <= s.reference_words[i].interval.start());
      CHECK(s.sentence_of[i - 1] <= s.sentence_of[i]);
      if (s.sentence_of[i - 1] == s.sentence_of[i])
        CHECK(*s.reference_words[i - 1].speaker == *s.reference_words[i].speaker);
    }
    for (const auto &w : s.reference_words) {
      CHECK(w.interval.duration() >= 200);
      CHECK(w.interval.duration() <= 500);
    }
    // Reference covers exactly the words, with only short pauses bridged.
    CHECK(s.reference.IsNonOverlapping());
    Millis speech = 0;
    for (const auto &w : s.reference_words) speech += w.interval.duration();
    CHECK(s.reference.LabeledDuration() >= speech);
    for (std::size_t i = 1; i < s.reference.records.size(); ++i)
      if (s.reference.records[i].label == s.reference.records[i - 1].label)
        CHECK(s.reference.records[i].interval.start() -
                  s.reference.records[i - 1].interval.end() > spec.merge_gap);
    // Transcript indices and sentence marks.
    REQUIRE(s.kept.size() == s.transcript.size());
    for (std::size_t i = 1; i < s.kept.size(); ++i) CHECK(s.kept[i - 1] < s.kept[i]);
    for (std::size_t i = 0; i < s.kept.size(); ++i)
      CHECK(s.transcript[i].interval == s.reference_words[s.kept[i]].interval);
    std::set<std::size_t> marks(s.sentence_marks.begin(), s.sentence_marks.end());
    for (std::size_t i = 0; i < s.kept.size(); ++i) {
      const bool starts = i == 0 || s.sentence_of[s.kept[i]] != s.sentence_of[s.kept[i - 1]];
      CHECK(marks.count(i) == (starts ? 1u : 0u));
    }
    // Sentence-mark segmentation is speaker pure.
    auto segments = segmenter::SegmentSession(
        s.transcript, {segmenter::StrategyKind::kSentenceMarks}, s.sentence_marks);
    for (const auto &seg : segments) CHECK(segmenter::IsSpeakerPure(seg));
    // Windows lie inside the transcript's pre-segments and are ordered.
    auto pre = segmenter::Presegment(s.transcript, spec.gap_threshold);
    REQUIRE(s.noise_window.size() == s.windows.size());
    for (std::size_t i = 0; i < s.windows.size(); ++i) {
      const auto &iv = s.windows[i].interval;
      bool inside = false;
      for (const auto &p : pre)
        inside = inside || (p.interval().start() <= iv.start() && iv.end() <= p.interval().end());
      CHECK(inside);
      CHECK(s.windows[i].vector.size() == world.options().dim);
      if (i > 0) CHECK(s.windows[i - 1].interval.start() < iv.start());
    }
  }
}

TEST_CASE("transcript corruption") {
  const auto words = ManyWords(10000);
  const std::vector<std::string> vocab = {"x", "y", "z"};
  Rng rng(5);
  auto same = CorruptTranscript(words, 0.0, 0.0, vocab, rng);
  REQUIRE(same.words.size() == words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(same.words[i].token == words[i].token);
    CHECK(same.kept[i] == i);
  }
  CHECK(CorruptTranscript(words, 0.0, 1.0, vocab, rng).words.empty());

  auto deleted = CorruptTranscript(words, 0.0, 0.1, vocab, rng);
  const auto removed = static_cast<long>(words.size() - deleted.words.size());
  CHECK(removed >= 900);
  CHECK(removed <= 1100);

  auto subbed = CorruptTranscript(words, 1.0, 0.0, vocab, rng);
  REQUIRE(subbed.words.size() == words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(std::find(vocab.begin(), vocab.end(), subbed.words[i].token) != vocab.end());
    CHECK(subbed.words[i].interval == words[i].interval);
  }
  CHECK_THROWS_AS(CorruptTranscript(words, 0.5, 0.0, {}, rng), ParameterError);
  CHECK_THROWS_AS(CorruptTranscript(words, 0.0, 1.2, vocab, rng), ParameterError);
}

TEST_CASE("filler and noise rates match their targets") {
  World world = SmallWorld();
  std::size_t sentences = 0, fillers = 0, windows = 0, noisy = 0;
  std::map<std::string, int> filler_speaker;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto spec = Spec(seed);
    spec.filler_fraction = 0.2;
    spec.noise_fraction = 0.15;
    auto s = GenerateSession(world, spec, "x");
    sentences += s.filler_sentence.size();
    for (std::size_t k = 0; k < s.filler_sentence.size(); ++k) fillers += s.filler_sentence[k];
    for (std::size_t i = 0; i < s.reference_words.size(); ++i)
      if (s.filler_sentence[s.sentence_of[i]] &&
          (i == 0 || s.sentence_of[i] != s.sentence_of[i - 1]))
        ++filler_speaker[*s.reference_words[i].speaker];
    windows += s.windows.size();
    for (bool b : s.noise_window) noisy += b;
  }
  CHECK(static_cast<double>(fillers) / sentences == doctest::Approx(0.2).epsilon(0.15));
  CHECK(static_cast<double>(noisy) / windows == doctest::Approx(0.15).epsilon(0.15));
  // Listener shares follow the filler rates (0.25 : 0.01).
  const double share = static_cast<double>(filler_speaker["therapist"]) /
                       (filler_speaker["therapist"] + filler_speaker["patient"]);
  CHECK(share == doctest::Approx(0.25 / 0.26).epsilon(0.05));

  auto spec = Spec(1);
  spec.noise_fraction = 0.99;
  auto mostly_noise = GenerateSession(world, spec, "x");
  const auto clean = std::count(mostly_noise.noise_window.begin(),
                                mostly_noise.noise_window.end(), false);
  CHECK(clean < static_cast<long>(mostly_noise.noise_window.size() / 10 + 1));
}

TEST_CASE("role corpora follow the planted filler rates") {
  World world = SmallWorld();
  const std::set<std::string> fillers(world.fillers().begin(), world.fillers().end());
  for (int r = 0; r < 2; ++r) {
    auto c = world.RoleCorpus(r, 4000, 17 + r);
    int filler_only = 0;
    for (const auto &s : c.sentences)
      filler_only += std::all_of(s.begin(), s.end(),
                                 [&](const std::string &t) { return fillers.count(t) > 0; });
    const double rate = world.options().filler_rates[r];
    CHECK(std::abs(filler_only / 4000.0 - rate) < 4.0 * std::sqrt(rate * (1 - rate) / 4000) + 1e-3);
  }
}

TEST_CASE("planted embedding model is recovered from samples") {
  World world = SmallWorld();
  auto train = GenerateTrainingEmbeddings(world, 400, 40, 3);
  const int d = world.options().dim;
  // Independent moment estimates: within scatter around speaker means.
  std::map<std::string, std::vector<int>> by;
  for (std::size_t i = 0; i < train.speakers.size(); ++i) by[train.speakers[i]].push_back(i);
  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd grand = Eigen::VectorXd::Zero(d);
  std::size_t n = 0;
  for (const auto &[spk, idx] : by) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(d);
    for (int i : idx) m += train.vectors[i];
    m /= idx.size();
    for (int i : idx) within += (train.vectors[i] - m) * (train.vectors[i] - m).transpose();
    n += idx.size() - 1;
    grand += m;
  }
  within /= static_cast<double>(n);
  grand /= by.size();
  CHECK((within - world.within()).norm() / world.within().norm() < 0.05);
  CHECK((grand - world.mean()).norm() < 0.5);
  CHECK((world.within_root() * world.within_root() - world.within()).norm() < 1e-9);
  CHECK((world.between_root() * world.between_root() - world.between()).norm() < 1e-9);
}

TEST_CASE("zero divergence lowers role confidence") {
  auto median_confidence = [](double divergence) {
    SyntheticSessionSpec spec = Spec(21);
    spec.role_vocab_divergence = divergence;
    spec.num_turns = 20;
    auto g = Generate(spec, 800, 200, 1500);
    roles::RoleLmTrainingData data{g.background, g.world.options().role_names, g.role_train,
                                   g.role_dev};
    auto lms = roles::BuildRoleModels(data, {});
    // Pooled over 50 sessions so a single unlucky draw cannot decide the test.
    std::vector<double> conf;
    for (std::uint64_t k = 0; k < 50; ++k) {
      auto s = spec;
      s.seed = 500 + k;
      auto session = GenerateSession(g.world, s, "x");
      auto segments = segmenter::SegmentSession(
          session.transcript, {segmenter::StrategyKind::kSentenceMarks}, session.sentence_marks);
      for (const auto &a : roles::AssignRoles(segments, lms.scoring)) conf.push_back(a.confidence);
    }
    return Median(conf);
  };
  CHECK(median_confidence(0.0) < median_confidence(1.0));
}

TEST_CASE("audio-only clustering on clean, well separated speakers") {
  World world = SmallWorld(9);
  const AudioSystem sys = TrainAudio(world);
  CHECK(AudioOnlyDer(world, sys, 16.0, 0.0, 4, 300) < 5.0);
}

TEST_CASE("larger speaker separation never hurts clustering on average") {
  World world = SmallWorld(10);
  const AudioSystem sys = TrainAudio(world);
  double previous = 101.0;
  for (double sep : {4.0, 8.0, 16.0}) {
    const double der = AudioOnlyDer(world, sys, sep, 0.0, 6, 500);
    CHECK(der <= previous);
    previous = der;
  }
}
