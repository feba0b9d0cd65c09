// tests/roles-test.cc

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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lm-oracles.h"
#include "rolediar/core/error.h"
#include "rolediar/roles/roles.h"

using namespace rolediar;
using namespace rolediar::roles;

namespace {

const std::vector<std::string> kFunction = {"the", "a", "and", "you", "i", "to", "it", "is"};
const std::vector<std::string> kTopicA = {"sleep", "night", "tired", "dream", "bed", "wake"};
const std::vector<std::string> kTopicB = {"work", "boss", "office", "meeting", "email", "desk"};

std::vector<std::string> Sample(std::mt19937 &rng, const std::vector<std::string> &content,
                                int len) {
  std::vector<std::string> s;
  for (int i = 0; i < len; ++i) {
    const auto &pool = (rng() % 2) ? content : kFunction;
    s.push_back(pool[rng() % pool.size()]);
  }
  return s;
}

lm::Corpus SampleCorpus(std::mt19937 &rng, const std::vector<std::string> &content, int n,
                        const std::string &name) {
  lm::Corpus c{name, {}};
  for (int i = 0; i < n; ++i) c.sentences.push_back(Sample(rng, content, 4 + rng() % 6));
  return c;
}

TextSegment Segment(const std::vector<std::string> &tokens, std::size_t id, Millis t0) {
  std::vector<TimedWord> words;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    words.push_back({tokens[i], TimeInterval(t0 + 400 * i, t0 + 400 * i + 300), {}, {}});
  return TextSegment(words, id);
}

// Length-normalised perplexity straight from conditional probabilities.
double OraclePerplexity(const lm::NGramModel &m, const std::vector<std::string> &tokens) {
  std::vector<int> ids{0};
  for (const auto &t : tokens) ids.push_back(m.vocab().Lookup(t));
  ids.push_back(1);
  double nll = 0;
  for (std::size_t t = 1; t < ids.size(); ++t) {
    const std::size_t lo = t + 1 >= static_cast<std::size_t>(m.order())
                               ? t + 1 - m.order()
                               : 0;
    std::vector<int> hist(ids.begin() + lo, ids.begin() + t);
    nll -= std::log(m.Prob(hist, ids[t]));
  }
  return std::exp(nll / (ids.size() - 1));
}

RoleModels DisjointModels(std::mt19937 &rng) {
  std::vector<lm::NGramModel> m;
  m.push_back(lm::TrainKneserNey(SampleCorpus(rng, kTopicA, 300, "a"), {3, {}, 0}));
  m.push_back(lm::TrainKneserNey(SampleCorpus(rng, kTopicB, 300, "b"), {3, {}, 0}));
  return RoleModels({"therapist", "patient"}, std::move(m));
}

}  // namespace

TEST_CASE("assignment arithmetic") {
  const std::vector<RoleLabel> roles = {{1, "t"}, {2, "p"}};
  auto a = AssignFromPerplexities(3, {120, 180}, roles);
  CHECK(a.role.index == 1);
  CHECK(a.confidence == 60.0);
  CHECK(a.segment_id == 3);
  auto tie = AssignFromPerplexities(0, {50, 50}, roles);
  CHECK(tie.role.index == 1);
  CHECK(tie.confidence == 0.0);

  const std::vector<RoleLabel> three = {{1, "a"}, {2, "b"}, {3, "c"}};
  auto b = AssignFromPerplexities(0, {90, 40, 45}, three);
  CHECK(b.role.name == "b");
  CHECK(b.confidence == 5.0);
  CHECK(AssignFromPerplexities(0, {7, 3, 3}, three).role.index == 2);
  CHECK_THROWS_AS(AssignFromPerplexities(0, {1}, {{1, "a"}}), ParameterError);
  CHECK_THROWS_AS(AssignFromPerplexities(0, {1, 2, 3}, roles), ParameterError);
}

TEST_CASE("property: scale invariance and confidence") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pp(1.0, 500.0), shift(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<RoleLabel> roles;
    std::vector<double> p;
    for (std::size_t i = 0; i < n; ++i) {
      roles.push_back({static_cast<int>(i + 1), "r" + std::to_string(i)});
      // Occasional exact ties.
      p.push_back(trial % 7 == 0 && i == 1 ? p[0] : pp(rng));
    }
    const auto base = AssignFromPerplexities(0, p, roles);
    // A constant added to every log-probability scales all perplexities by
    // exp(-c).
    const double factor = std::exp(-shift(rng));
    std::vector<double> scaled;
    for (double x : p) scaled.push_back(x * factor);
    CHECK(AssignFromPerplexities(0, scaled, roles).role == base.role);

    std::vector<double> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(base.confidence == doctest::Approx(sorted[1] - sorted[0]));
    CHECK((base.confidence == 0.0) == (sorted[0] == sorted[1]));
    if (n == 2) CHECK(base.confidence == std::abs(p[0] - p[1]));
  }
}

TEST_CASE("disjoint topical roles are recognized") {
  std::mt19937 rng(7);
  const RoleModels models = DisjointModels(rng);
  CHECK_THROWS_AS(RoleModels({"x"}, {}), ParameterError);

  int correct = 0;
  std::vector<TextSegment> segments;
  std::vector<std::string> oracle_labels;
  for (int i = 0; i < 40; ++i) {
    const bool second = i % 2;
    const auto tokens = Sample(rng, second ? kTopicB : kTopicA, 8);
    const TextSegment seg = Segment(tokens, i, 5000 * i);
    const RoleAssignment a = AssignRole(seg, models);
    const double pp1 = OraclePerplexity(models.model(0), tokens);
    const double pp2 = OraclePerplexity(models.model(1), tokens);
    CHECK(a.perplexities[0] == doctest::Approx(pp1).epsilon(1e-9));
    CHECK(a.perplexities[1] == doctest::Approx(pp2).epsilon(1e-9));
    CHECK(a.role.index == (pp2 < pp1 ? 2 : 1));
    correct += a.role.index == (second ? 2 : 1);
    segments.push_back(seg);
    oracle_labels.push_back(second ? "patient" : "therapist");
  }
  CHECK(correct == 40);

  const auto hyp = LanguageOnlyDiarize("s", segments, models, 2);
  REQUIRE(hyp.records.size() == segments.size());
  Millis total = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    CHECK(hyp.records[i].label == oracle_labels[i]);
    CHECK(hyp.records[i].interval == segments[i].interval());
    total += segments[i].interval().duration();
  }
  CHECK(hyp.LabeledDuration() == total);
  CHECK(hyp.IsNonOverlapping());

  const auto single = LanguageOnlyDiarize("s", {segments[0]}, models);
  CHECK(single.records.size() == 1);

  // Parallel scoring keeps input order and values.
  const auto serial = AssignRoles(segments, models, 1);
  const auto parallel = AssignRoles(segments, models, 4);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    CHECK(serial[i].segment_id == parallel[i].segment_id);
    CHECK(serial[i].perplexities == parallel[i].perplexities);
  }

  std::ostringstream os;
  WriteAssignments(os, "s", {serial[0]});
  std::istringstream is(os.str());
  std::string sess, id, role;
  double p1, p2, conf;
  is >> sess >> id >> role >> p1 >> p2 >> conf;
  CHECK(sess == "s");
  CHECK(role == serial[0].role.name);
  CHECK(conf == doctest::Approx(serial[0].confidence).epsilon(1e-6));
}

TEST_CASE("role model construction") {
  std::mt19937 rng(3);
  RoleLmTrainingData data;
  std::vector<std::string> general = kTopicA;
  general.insert(general.end(), kTopicB.begin(), kTopicB.end());
  general.push_back("weather");
  data.background = SampleCorpus(rng, general, 200, "g");
  data.role_names = {"therapist", "patient", "observer"};
  const std::vector<std::vector<std::string>> topics = {kTopicA, kTopicB, {"music", "song"}};
  for (const auto &t : topics) {
    data.role_train.push_back(SampleCorpus(rng, t, 150, "train"));
    data.role_dev.push_back(SampleCorpus(rng, t, 40, "dev"));
  }
  RoleLmOptions opts;
  opts.search.golden_iterations = 10;
  opts.jobs = 2;
  const RoleLmSet set = BuildRoleModels(data, opts);
  REQUIRE(set.scoring.size() == 3);
  REQUIRE(set.background_plus.size() == 1);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto &w = set.role_weights[i].weights;
    REQUIRE(w.size() == 3);
    CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0).epsilon(1e-9));
    // The in-role component carries the most weight for in-role dev text.
    CHECK(w[1] >= w[0]);
    CHECK(w[1] >= w[2]);
    CHECK(testing::MaxNormalizationError(set.scoring.model(i)) < 1e-6);
    // A background-only word is still scored by every role model.
    CHECK(set.scoring.model(i).vocab().Find("weather") >= 0);
  }
  CHECK(testing::MaxNormalizationError(set.background_plus[0]) < 1e-6);
  CHECK(set.scoring.role(2).name == "observer");
  CHECK(set.scoring.role(2).index == 3);

  // Each role's dev text goes to that role.
  for (std::size_t i = 0; i < 3; ++i) {
    int hits = 0;
    for (std::size_t k = 0; k < 20; ++k) {
      const TextSegment seg = Segment(data.role_dev[i].sentences[k], k, 0);
      hits += AssignRole(seg, set.scoring).role.index == static_cast<int>(i + 1);
    }
    CHECK(hits >= 18);
  }

  data.role_dev.pop_back();
  CHECK_THROWS_AS(BuildRoleModels(data, opts), ParameterError);
}
