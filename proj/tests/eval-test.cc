// tests/eval-test.cc

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
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "model-oracles.h"
#include "rolediar/core/error.h"
#include "rolediar/eval/curve.h"
#include "rolediar/eval/der.h"

using namespace rolediar;
using namespace rolediar::eval;

namespace {

LabeledInterval LI(Millis s, Millis e, const std::string &l) { return {TimeInterval(s, e), l}; }

using testing::RandomRttm;

// Millisecond frames, exhaustive search over label maps.
struct FrameOracle {
  Millis scored = 0, errors = 0;
};

FrameOracle OracleScore(const DiarizationHypothesis &ref, const DiarizationHypothesis &hyp,
                        Millis collar, bool ignore_overlap) {
  Millis lo = ref.records.front().interval.start(), hi = 0;
  std::vector<Millis> bounds;
  for (const auto &r : ref.records) {
    lo = std::min(lo, r.interval.start());
    hi = std::max(hi, r.interval.end());
    bounds.push_back(r.interval.start());
    bounds.push_back(r.interval.end());
  }
  const auto rl = ref.Labels(), hl = hyp.Labels();
  struct Frame {
    std::set<int> r, h;
  };
  std::vector<Frame> frames;
  for (Millis t = lo; t < hi; ++t) {
    bool excluded = false;
    for (Millis b : bounds)
      if (t >= b - collar && t + 1 <= b + collar) excluded = true;
    if (excluded) continue;
    Frame f;
    for (const auto &r : ref.records)
      if (r.interval.start() <= t && t + 1 <= r.interval.end())
        f.r.insert(static_cast<int>(std::find(rl.begin(), rl.end(), r.label) - rl.begin()));
    for (const auto &h : hyp.records)
      if (h.interval.start() <= t && t + 1 <= h.interval.end())
        f.h.insert(static_cast<int>(std::find(hl.begin(), hl.end(), h.label) - hl.begin()));
    if (ignore_overlap && f.r.size() >= 2) continue;
    frames.push_back(f);
  }
  FrameOracle best{0, std::numeric_limits<Millis>::max()};
  std::vector<int> map(hl.size(), -1);
  std::function<void(std::size_t, std::vector<bool> &)> rec = [&](std::size_t i,
                                                                  std::vector<bool> &used) {
    if (i == hl.size()) {
      Millis scored = 0, err = 0;
      for (const auto &f : frames) {
        const Millis nr = f.r.size(), nh = f.h.size();
        Millis correct = 0;
        for (int h : f.h) correct += map[h] >= 0 && f.r.count(map[h]);
        scored += nr;
        err += std::max(nr, nh) - correct;
      }
      if (err < best.errors) best = {scored, err};
      return;
    }
    map[i] = -1;
    rec(i + 1, used);
    for (std::size_t r = 0; r < rl.size(); ++r) {
      if (used[r]) continue;
      used[r] = true;
      map[i] = static_cast<int>(r);
      rec(i + 1, used);
      used[r] = false;
    }
    map[i] = -1;
  };
  std::vector<bool> used(rl.size(), false);
  rec(0, used);
  return best;
}

}  // namespace

TEST_CASE("der worked example") {
  const DiarizationHypothesis ref{"s", {LI(0, 10000, "A"), LI(10000, 20000, "B")}};
  const DiarizationHypothesis hyp{"s", {LI(0, 20000, "X")}};
  const DerReport r = ScoreDer(ref, hyp, {250, true});
  CHECK(r.der == doctest::Approx(50.0).epsilon(1e-12));
  // +-0.25 s around all four boundaries leaves 9.5 s per speaker.
  CHECK(r.scored_time == doctest::Approx(19.0));
  CHECK(r.counts.confusion == 9500);
  CHECK(r.mapping.size() == 1);
  // A quarter-second collar in total (0.125 s per side) gives 19.5 s / 9.75 s.
  const DerReport half = ScoreDer(ref, hyp, {125, true});
  CHECK(half.scored_time == doctest::Approx(19.5));
  CHECK(half.counts.confusion == 9750);
  CHECK(half.der == doctest::Approx(50.0));

  CHECK(ScoreDer(ref, ref).der == 0.0);
  CHECK_THROWS_AS(ScoreDer(DiarizationHypothesis{"s", {}}, hyp), ScoringError);

  // Missed and false-alarm bookkeeping.
  const DiarizationHypothesis partial{"s", {LI(0, 5000, "X"), LI(25000, 26000, "Y")}};
  const DerReport p = ScoreDer(ref, partial, {0, true});
  CHECK(p.counts.scored == 20000);
  CHECK(p.counts.missed == 15000);
  CHECK(p.counts.false_alarm == 0);  // outside the reference extent
  CHECK(p.der == doctest::Approx(75.0));
}

TEST_CASE("overlap handling") {
  const DiarizationHypothesis ref{"s", {LI(0, 6000, "A"), LI(4000, 10000, "B")}};
  const DiarizationHypothesis hyp{"s", {LI(0, 5000, "1"), LI(5000, 10000, "2")}};
  const DerReport skip = ScoreDer(ref, hyp, {0, true});
  CHECK(skip.counts.scored == 8000);
  CHECK(skip.der == 0.0);
  const DerReport keep = ScoreDer(ref, hyp, {0, false});
  CHECK(keep.counts.scored == 12000);
  CHECK(keep.counts.missed == 2000);
}

TEST_CASE("der against the frame oracle") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ref = RandomRttm(rng, "r", 2 + trial % 3, trial % 2 == 0, 12000);
    const auto hyp = RandomRttm(rng, "h", 1 + trial % 4, false, 12000);
    for (Millis collar : {Millis{0}, Millis{250}}) {
      for (bool ignore : {true, false}) {
        const DerReport r = ScoreDer(ref, hyp, {collar, ignore});
        const FrameOracle o = OracleScore(ref, hyp, collar, ignore);
        CHECK(r.counts.scored == o.scored);
        CHECK(r.counts.missed + r.counts.false_alarm + r.counts.confusion == o.errors);
        CHECK(r.der == doctest::Approx(r.missed + r.false_alarm + r.confusion).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: identity, permutation and collar monotonicity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ref = RandomRttm(rng, "r", 3, trial % 3 == 0, 30000);
    CHECK(ScoreDer(ref, ref).der == 0.0);
    auto hyp = RandomRttm(rng, "h", 3, false, 30000);
    const double base = ScoreDer(ref, hyp).der;
    std::vector<std::string> names = {"p", "q", "z"};
    std::shuffle(names.begin(), names.end(), rng);
    auto renamed = hyp;
    for (auto &rec : renamed.records) rec.label = names[rec.label.back() - '0'];
    CHECK(ScoreDer(ref, renamed).der == base);
    Millis prev = std::numeric_limits<Millis>::max();
    for (Millis c : {0, 100, 250, 500}) {
      const Millis s = ScoreDer(ref, hyp, {c, true}).counts.scored;
      CHECK(s <= prev);
      prev = s;
    }
  }
}

TEST_CASE("assignment equals exhaustive bijection search") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 500; ++trial) {
    const int rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = (trial % 3 == 0) ? std::floor(u(rng) / 3) : u(rng);
    const auto got = MaxWeightAssignment(w);
    double got_total = 0;
    std::set<int> used;
    for (int i = 0; i < rows; ++i)
      if (got[i] >= 0) {
        got_total += w(i, got[i]);
        CHECK(used.insert(got[i]).second);
      }
    const double best = testing::BestBijectionWeight(w);
    CHECK(got_total == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK(MaxWeightAssignment(Eigen::MatrixXd(0, 0)).empty());
}

TEST_CASE("pooled scoring and report table") {
  HypothesisSet ref, hyp;
  ref["a"] = {"a", {LI(0, 10000, "A"), LI(10000, 20000, "B")}};
  ref["b"] = {"b", {LI(0, 10000, "A")}};
  hyp["a"] = {"a", {LI(0, 20000, "X")}};
  const DerReport pooled = ScoreDerSet(ref, hyp, {0, true});
  // Session a: 10 s confusion of 20 s; session b: all 10 s missed.
  CHECK(pooled.counts.scored == 30000);
  CHECK(pooled.der == doctest::Approx(100.0 * 20000 / 30000));
  std::ostringstream os;
  WriteDerTable(os, {{"a", ScoreDer(ref["a"], hyp["a"])}}, pooled);
  CHECK(os.str().rfind("session\tDER", 0) == 0);
  CHECK(os.str().find("ALL\t66.67") != std::string::npos);
}

TEST_CASE("der curve") {
  const int d = 3;
  const plda::PldaModel model(Eigen::VectorXd::Zero(d), 4 * Eigen::MatrixXd::Identity(d, d),
                              0.25 * Eigen::MatrixXd::Identity(d, d));
  std::mt19937 rng(1);
  std::normal_distribution<double> n;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(d), b = Eigen::VectorXd::Zero(d);
  a[0] = 3;
  b[0] = -3;
  CurveSession s;
  s.input = {"s", std::vector<TextSegment>{}, std::vector<embed::AudioWindow>{}};
  s.reference.session_id = "s";
  const std::vector<RoleLabel> roles = {{1, "therapist"}, {2, "patient"}};
  for (int turn = 0; turn < 8; ++turn) {
    const Millis t0 = turn * 4000;
    std::vector<TimedWord> words;
    for (int k = 0; k < 4; ++k)
      words.push_back({"w", TimeInterval(t0 + 900 * k, t0 + 900 * k + 800), {}, {}});
    s.input.segments->emplace_back(words, turn);
    const bool second = turn % 2;
    s.reference.records.push_back({TimeInterval(t0, t0 + 3500), second ? "P" : "T"});
    for (const auto &iv : embed::UniformWindows(TimeInterval(t0, t0 + 3500))) {
      Eigen::VectorXd e = (second ? b : a);
      for (int k = 0; k < d; ++k) e[k] += 0.3 * n(rng);
      s.input.windows->push_back({iv, embed::LengthNormalize(e)});
    }
    roles::RoleAssignment as;
    as.segment_id = turn;
    // Two confident correct labels per role; the rest are weak and wrong.
    const bool confident = turn < 4;
    as.role = roles[confident ? second : !second];
    as.confidence = confident ? 10.0 + turn : 1.0;
    s.assignments.push_back(as);
  }
  diarize::PipelineOptions base;
  const auto curve = DerCurve({s}, {50, 100}, roles, model, base, {250, true}, 2);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].a_percent == 50);
  CHECK(curve[0].report.der < curve[1].report.der);
  CHECK(curve[0].report.der == doctest::Approx(0.0).epsilon(1e-12));

  base.a_percent = 100;
  const auto direct =
      diarize::RunAidedFromAssignments(s.input, s.assignments, roles, model, base);
  CHECK(curve[1].report.der == ScoreDer(s.reference, direct.hypothesis).der);

  std::ostringstream os;
  WriteCurveCsv(os, curve);
  const std::string csv = os.str();
  CHECK(csv.rfind("a,der,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK_THROWS_AS(DerCurve({s}, {0}, roles, model, base), ParameterError);
}
