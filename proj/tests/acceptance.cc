// tests/acceptance.cc

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

// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "lm-oracles.h"
#include "model-oracles.h"
#include "rolediar/cli/app.h"
#include "rolediar/cli/experiment.h"
#include "rolediar/core/error.h"
#include "rolediar/diarize/diarize.h"
#include "rolediar/eval/der.h"
#include "rolediar/lm/interpolate.h"
#include "rolediar/lm/kneser-ney.h"
#include "rolediar/plda/plda.h"

using namespace rolediar;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kNormTol = 1e-6;         // LM probability mass per context
constexpr double kCountTol = 1e-12;       // discount-0 vs counting oracle
constexpr double kLogPplTol = 1e-9;       // perplexity, log space
constexpr double kUniformTol = 1e-9;      // uniform-model perplexity
constexpr double kScoreTol = 1e-8;        // PLDA score vs density oracle
constexpr double kZeroBetweenTol = 1e-12; // PLDA score with zero between-class covariance
constexpr double kEmSlack = 1e-8;         // EM log-likelihood decrease allowed (round-off)
constexpr double kHacSimTol = 1e-12;      // merge similarity vs oracle
constexpr double kDerExampleTol = 0.01;   // worked DER example, percentage points
constexpr double kAssignTol = 1e-12;      // assignment weight vs exhaustive search
constexpr double kMinModeGap = 1.0;       // DER points between modes
constexpr double kRoleAccLo = 75.0, kRoleAccHi = 85.0;
constexpr double kMaxGateA = 90.0;
constexpr double kMinGateGain = 0.3;      // DER points below DER(a = 100)
constexpr double kLmSeconds = 60.0, kBenchmarkSeconds = 300.0;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

/// Collects failures for one criterion; the first few are reported.
class Check {
 public:
  void operator()(bool ok, const std::string &what) {
    ++total_;
    if (ok) return;
    if (failures_.size() < 3) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::ostringstream os;
    os << total_ - failed_ << "/" << total_ << " checks";
    for (const auto &f : failures_) os << "; " << f;
    return os.str();
  }

 private:
  int total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(double x, int precision = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << x;
  return os.str();
}

double P(const lm::NGramModel &m, const std::vector<std::string> &history, const std::string &w) {
  std::vector<int> h;
  for (const auto &t : history)
    h.push_back(t == lm::kBos ? lm::Vocabulary::kBosId : m.vocab().Lookup(t));
  return m.Prob(h, m.vocab().Lookup(w));
}

Outcome LmNormalization() {
  const auto start = Clock::now();
  Check check;
  std::mt19937 rng(20);
  std::vector<lm::Corpus> corpora;
  for (int i = 0; i < 20; ++i)
    corpora.push_back(testing::RandomCorpus(rng, 4 + i, 15 + 5 * i, 2 + i % 7));
  const std::vector<std::vector<std::string>> extra = {{"w0", "w1", "w2"}, {"unseen"}};
  for (int i = 0; i < 20; ++i) {
    const auto &c = corpora[i];
    for (int order = 1; order <= 4; ++order) {
      const lm::KneserNeyOptions opts{order, std::nullopt, i % 2 ? 1.0 : 0.0};
      const auto m = lm::TrainKneserNey(c, opts);
      check(testing::MaxNormalizationError(m, extra) < kNormTol,
            "trained model " + std::to_string(i) + " order " + std::to_string(order));
    }
    // Interpolations with the neighbouring corpora's models.
    const int order = 1 + i % 3;
    const auto a = lm::TrainKneserNey(c, {order, 0.3, 1.0});
    const auto b = lm::TrainKneserNey(corpora[(i + 1) % 20], {order, std::nullopt, 0.0});
    const auto g = lm::TrainKneserNey(corpora[(i + 7) % 20], {order, std::nullopt, 1.0});
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w = {u(rng), u(rng), u(rng)};
    const double sum = w[0] + w[1] + w[2];
    for (auto &x : w) x /= sum;
    const auto mix3 = lm::Interpolate({&a, &b, &g}, {w});
    check(testing::MaxNormalizationError(mix3, extra) < kNormTol,
          "interpolated model " + std::to_string(i));
    const auto opt = lm::OptimizeWeights({&a, &g}, corpora[(i + 3) % 20]);
    check(testing::MaxNormalizationError(lm::Interpolate({&a, &g}, opt), extra) < kNormTol,
          "optimized interpolation " + std::to_string(i));

    // Discount 0 equals relative frequencies of the Kneser-Ney counts.
    for (int n_order = 1; n_order <= 3; ++n_order) {
      const auto m = lm::TrainKneserNey(c, {n_order, 0.0, 0.0});
      const auto counts = testing::CountingOracle(c, n_order);
      for (int n = 1; n <= n_order; ++n) {
        std::map<std::vector<std::string>, double> totals;
        for (const auto &[gram, cnt] : counts[n - 1])
          totals[std::vector<std::string>(gram.begin(), gram.end() - 1)] += cnt;
        for (const auto &[gram, cnt] : counts[n - 1]) {
          const std::vector<std::string> h(gram.begin(), gram.end() - 1);
          check(std::abs(P(m, h, gram.back()) - cnt / totals[h]) < kCountTol,
                "counting oracle, corpus " + std::to_string(i));
        }
      }
    }
  }
  const double secs = Seconds(start);
  check(secs < kLmSeconds, "runtime " + Fmt(secs) + " s");
  return {check.ok(), "20 corpora, " + check.Summary() + ", " + Fmt(secs) + " s"};
}

Outcome PerplexityOracle() {
  Check check;
  // Interpolated Kneser-Ney by hand for {"a b", "b a"}, order 2, D = 0.5:
  // continuation counts a = b = </s> = 2 of 6, four predictable types with
  // <unk>, so P1(a) = 1.5/6 + 0.25/4 = 0.3125. Each history is seen twice
  // with two successors: P(w|h) = 0.5/2 + 0.5 * 0.3125 = 0.40625.
  const double p1 = 1.5 / 6.0 + (0.5 * 3 / 6.0) / 4.0;
  const double seen = 0.5 / 2.0 + 0.5 * p1;
  const double unseen = 0.5 * p1;
  const lm::Corpus corpus{"two", {{"a", "b"}, {"b", "a"}}};
  const auto m = lm::TrainKneserNey(corpus, {2, 0.5, 0.0});
  const double want_ab = std::exp(-(3 * std::log(seen)) / 3.0);
  check(std::abs(std::log(lm::Perplexity(m, {"a", "b"})) - std::log(want_ab)) < kLogPplTol,
        "pp(a b)");
  check(std::abs(std::log(lm::CorpusPerplexity(m, corpus)) - std::log(want_ab)) < kLogPplTol,
        "corpus perplexity");
  const double want_bb = std::exp(-(2 * std::log(seen) + std::log(unseen)) / 3.0);
  check(std::abs(std::log(lm::Perplexity(m, {"b", "b"})) - std::log(want_bb)) < kLogPplTol,
        "pp(b b)");
  check(std::abs(want_ab - 32.0 / 13.0) < 1e-12, "closed form 32/13");

  // Uniform unigram: every type (including </s>) seen once, no discount.
  for (int v : {2, 5, 10, 50}) {
    std::vector<std::string> sentence;
    for (int i = 0; i + 1 < v; ++i) sentence.push_back("t" + std::to_string(i));
    const auto u = lm::TrainKneserNey(lm::Corpus{"u", {sentence}}, {1, 0.0, 0.0});
    for (const auto &x : std::vector<std::vector<std::string>>{
             {"t0"}, {"t0", "t0", "t0"}, sentence})
      check(std::abs(lm::Perplexity(u, x) - v) < kUniformTol,
            "uniform model over " + std::to_string(v) + " types");
  }
  return {check.ok(), "pp(a b) = " + Fmt(lm::Perplexity(m, {"a", "b"}), 12) + " vs 32/13, " +
                          check.Summary()};
}

Outcome PldaOracle() {
  Check check;
  std::mt19937 rng(3);
  double worst = 0.0;
  const int dims[] = {2, 3, 5};
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dims[trial % 3];
    const Eigen::VectorXd mu = testing::Gaussian(rng, d);
    const Eigen::MatrixXd b = testing::RandomSpd(rng, d, 0.05);
    const Eigen::MatrixXd w = testing::RandomSpd(rng, d, 0.1);
    const plda::PldaModel model(mu, b, w);
    const Eigen::VectorXd v = mu + testing::Gaussian(rng, d);
    const Eigen::VectorXd r = mu + testing::Gaussian(rng, d);
    const double err = std::abs(model.Score(v, r) - testing::OraclePairScore(mu, b, w, v, r));
    worst = std::max(worst, err);
    check(err < kScoreTol, "score oracle");
    check(model.Score(v, r) == model.Score(r, v), "symmetry");
    const plda::PldaModel flat(mu, Eigen::MatrixXd::Zero(d, d), w);
    check(std::abs(flat.Score(v, r)) < kZeroBetweenTol, "zero between-class covariance");
  }
  for (int set = 0; set < 20; ++set) {
    const int d = dims[set % 3];
    const Eigen::MatrixXd b = testing::RandomSpd(rng, d, 0.05);
    const Eigen::MatrixXd w = testing::RandomSpd(rng, d, 0.05);
    const Eigen::MatrixXd lb = Eigen::LLT<Eigen::MatrixXd>(b).matrixL();
    const Eigen::MatrixXd lw = Eigen::LLT<Eigen::MatrixXd>(w).matrixL();
    std::vector<EmbeddingVector> xs;
    std::vector<std::string> labels;
    for (int k = 0; k < 12 + set; ++k) {
      const Eigen::VectorXd y = lb * testing::Gaussian(rng, d);
      const int per = 1 + static_cast<int>(rng() % 8);
      for (int j = 0; j < per; ++j) {
        xs.push_back(y + lw * testing::Gaussian(rng, d));
        labels.push_back("k" + std::to_string(k));
      }
    }
    const auto trained = plda::TrainPlda(xs, labels, {10});
    check(trained.log_likelihoods.size() == 11, "EM iteration count");
    for (std::size_t i = 1; i < trained.log_likelihoods.size(); ++i)
      check(trained.log_likelihoods[i] >= trained.log_likelihoods[i - 1] - kEmSlack,
            "EM step " + std::to_string(i) + " on dataset " + std::to_string(set));
  }
  std::ostringstream worst_s;
  worst_s << std::scientific << std::setprecision(1) << worst;
  return {check.ok(), "max |score - oracle| = " + worst_s.str() + ", " + check.Summary()};
}

Outcome HacOracle() {
  Check check;
  std::mt19937 rng(41);
  int instances = 0;
  for (int trial = 0; trial < 6000; ++trial) {
    const int n = 1 + trial % 6;
    const int k = 1 + static_cast<int>(rng() % n);
    const Eigen::MatrixXd s = testing::RandomSymmetric(rng, n, trial % 2 == 0);
    const auto got = diarize::AverageLinkHac(s, k);
    const auto want = testing::OracleHac(s, k);
    ++instances;
    bool same = got.merges.size() == want.size();
    for (std::size_t m = 0; same && m < want.size(); ++m)
      same = got.merges[m].first == want[m].first && got.merges[m].second == want[m].second &&
             std::abs(got.merges[m].similarity - want[m].similarity) < kHacSimTol;
    check(same, "merge sequence, n = " + std::to_string(n));
  }
  // Constructed ties: equal similarities merge the smallest cluster ids first.
  const auto ones = diarize::AverageLinkHac(Eigen::MatrixXd::Ones(4, 4), 1);
  check(ones.merges.size() == 3 && ones.merges[0].first == 0 && ones.merges[0].second == 1 &&
            ones.merges[1].first == 0 && ones.merges[1].second == 2 &&
            ones.merges[2].second == 3,
        "all-equal ties");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  s(0, 2) = s(2, 0) = 5;
  s(1, 3) = s(3, 1) = 5;
  const auto t = diarize::AverageLinkHac(s, 2);
  check(t.merges[0].first == 0 && t.merges[0].second == 2 &&
            t.cluster == std::vector<int>{0, 1, 0, 1},
        "lexicographic tie-break");
  return {check.ok(), std::to_string(instances) + " instances, " + check.Summary()};
}

Outcome DerScorer() {
  Check check;
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ref = testing::RandomRttm(rng, "r", 2 + trial % 3, trial % 3 == 0, 30000);
    check(eval::ScoreDer(ref, ref).der == 0.0, "ref vs ref");
    const auto hyp = testing::RandomRttm(rng, "h", 3, false, 30000);
    const double base = eval::ScoreDer(ref, hyp).der;
    std::vector<std::string> names = {"p", "q", "z"};
    std::shuffle(names.begin(), names.end(), rng);
    auto renamed = hyp;
    for (auto &rec : renamed.records) rec.label = names[rec.label.back() - '0'];
    check(eval::ScoreDer(ref, renamed).der == base, "label permutation");
  }
  // A:(0,10) B:(10,20) against one label over (0,20); a quarter second of
  // collar in total around each boundary leaves 19.5 s, 9.75 s confused.
  const DiarizationHypothesis ref{
      "s", {{TimeInterval(0, 10000), "A"}, {TimeInterval(10000, 20000), "B"}}};
  const DiarizationHypothesis hyp{"s", {{TimeInterval(0, 20000), "X"}}};
  const auto r = eval::ScoreDer(ref, hyp, {125, true});
  check(std::abs(r.der - 50.0) < kDerExampleTol, "worked example DER");
  check(std::abs(r.scored_time - 19.5) < 1e-9, "worked example scored time");
  check(r.counts.confusion == 9750, "worked example confusion");

  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = trial % 3 == 0 ? std::floor(u(rng) / 3) : u(rng);
    const auto got = eval::MaxWeightAssignment(w);
    double total = 0;
    std::set<int> used;
    bool injective = true;
    for (int i = 0; i < rows; ++i)
      if (got[i] >= 0) {
        total += w(i, got[i]);
        injective = injective && used.insert(got[i]).second;
      }
    check(injective, "one-to-one mapping");
    check(std::abs(total - testing::BestBijectionWeight(w)) < kAssignTol, "optimal mapping");
  }
  return {check.ok(), "worked example " + Fmt(r.der) + "%, " + check.Summary()};
}

Outcome ModeOrdering(const experiment::BenchmarkResult &r, double secs) {
  const double audio = r.pooled.at(diarize::Mode::kAudioOnly).der;
  const double text = r.pooled.at(diarize::Mode::kLanguageOnly).der;
  const double aided = r.pooled.at(diarize::Mode::kLinguisticallyAided).der;
  const double acc = 100.0 * r.role_accuracy;
  const bool ok = aided + kMinModeGap <= audio && audio + kMinModeGap <= text &&
                  acc >= kRoleAccLo && acc <= kRoleAccHi && secs < kBenchmarkSeconds;
  return {ok, "aided " + Fmt(aided) + " < audio " + Fmt(audio) + " < language " + Fmt(text) +
                  " (a = " + Fmt(r.chosen_a, 0) + ", role accuracy " + Fmt(acc, 1) + "%, " +
                  Fmt(secs, 1) + " s)"};
}

Outcome GateCurve(const experiment::BenchmarkResult &r) {
  const auto &curve = r.test_curve;
  if (curve.empty() || curve.back().a_percent != 100.0) return {false, "curve missing a = 100"};
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].report.der < curve[best].report.der) best = i;
  const double at100 = curve.back().report.der, at_best = curve[best].report.der;
  const bool ok = curve[best].a_percent <= kMaxGateA && at_best <= at100 - kMinGateGain;
  std::ostringstream os;
  os << "a* = " << Fmt(curve[best].a_percent, 0) << ", DER(a*) " << Fmt(at_best)
     << " vs DER(100) " << Fmt(at100) << "; curve";
  for (const auto &p : curve) os << " " << Fmt(p.report.der);
  return {ok, os.str()};
}

Outcome ProfileGating() {
  Check check;
  Eigen::VectorXd e1(2), e2(2), e3(2), e4(2);
  e1 << 1, 0;
  e2 << 0, 1;
  e3 << 2, 2;
  e4 << -1, 5;
  const std::vector<RoleLabel> roles = {{1, "therapist"}, {2, "patient"}};
  auto assign = [](int role, double conf) {
    roles::RoleAssignment a;
    a.role = RoleLabel{role, role == 1 ? "therapist" : "patient"};
    a.confidence = conf;
    return a;
  };
  const std::vector<diarize::ProfileInput> in = {
      {assign(1, 0.5), e1}, {assign(1, 2.0), e2}, {assign(1, 3.0), e3}, {assign(2, 4.0), e4}};
  const auto all = diarize::EstimateProfiles(in, -1.0, roles);
  check(all[0].vector == (e1 + e2 + e3) / 3.0 && all[1].vector == e4, "all-pass mean");
  const auto single = diarize::EstimateProfiles(in, 2.5, roles);
  check(single[0].vector == e3 && single[0].support_count == 1, "single survivor");
  Eigen::VectorXd mixed_want(2);
  mixed_want << 1.0, 1.5;
  const auto mixed = diarize::EstimateProfiles(in, 1.0, roles);
  check(mixed[0].vector == mixed_want && mixed[0].support_count == 2, "mixed case");
  const auto gated = diarize::EstimateProfiles(in, 3.5, roles);
  check(gated[0].gate_fallback && gated[0].vector == (e1 + e2 + e3) / 3.0 &&
            !gated[1].gate_fallback,
        "empty-after-gating fallback");
  bool threw = false;
  try {
    diarize::EstimateProfiles({in[0], in[1]}, 0.0, roles);
  } catch (const ProfileEstimationError &) {
    threw = true;
  }
  check(threw, "role without segments");

  // Sessions with no usable text segments fall back to clustering.
  std::mt19937 rng(1);
  const int d = 3;
  const plda::PldaModel model(Eigen::VectorXd::Zero(d), 4.0 * Eigen::MatrixXd::Identity(d, d),
                              0.25 * Eigen::MatrixXd::Identity(d, d));
  diarize::SessionInput session{"s", std::vector<TextSegment>{},
                                std::vector<embed::AudioWindow>{}};
  for (int turn = 0; turn < 6; ++turn) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    c[2] = turn % 2 ? -3.0 : 3.0;
    for (const auto &iv : embed::UniformWindows(TimeInterval(turn * 3000, turn * 3000 + 2900)))
      session.windows->push_back(
          {iv, embed::LengthNormalize(c + 0.05 * testing::Gaussian(rng, d))});
  }
  diarize::PipelineOptions opts;
  opts.mode = diarize::Mode::kLinguisticallyAided;
  const auto none = diarize::RunAidedFromAssignments(session, {}, roles, model, opts);
  check(none.fallback && none.hypothesis.Labels().size() == 2, "zero-segment clustering fallback");
  return {check.ok(), check.Summary()};
}

std::map<std::string, std::string> ReadTree(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream is(e.path(), std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    files[fs::relative(e.path(), root).string()] = buf.str();
  }
  return files;
}

Outcome Determinism(const fs::path &in_process) {
  const fs::path root = fs::temp_directory_path() / "rolediar-acceptance";
  std::map<std::string, std::map<std::string, std::string>> trees;
  for (const std::string jobs : {"1", "3"}) {
    const fs::path dir = root / ("cli-jobs" + jobs);
    fs::remove_all(dir);
    const std::vector<std::string> args = {"rolediar", "--seed", "1",       "--jobs",
                                           jobs,       "reproduce", "--out-dir", dir.string()};
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) return {false, "reproduce --jobs " + jobs + " exited " + std::to_string(code)};
    trees[jobs] = ReadTree(dir);
  }
  if (trees["1"] != trees["3"]) return {false, "outputs differ between --jobs 1 and --jobs 3"};
  // The earlier in-process run must match file for file (it has no manifest).
  auto cli_tree = trees["1"];
  cli_tree.erase("manifest.json");
  const auto first = ReadTree(in_process);
  if (cli_tree != first) return {false, "outputs differ between two runs with the same seed"};
  int rttm = 0;
  for (const auto &[name, _] : first) rttm += name.size() > 5 && name.ends_with(".rttm");
  return {rttm >= 6, std::to_string(first.size()) + " files (" + std::to_string(rttm) +
                         " RTTM) identical across 3 runs and --jobs 1/3"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> unit = {
      {"LM normalization suite", LmNormalization},
      {"perplexity oracle", PerplexityOracle},
      {"PLDA scoring oracle", PldaOracle},
      {"HAC oracle", HacOracle},
      {"DER scorer", DerScorer}};
  bool all = true;
  auto report = [&](int n, const std::string &name, const Outcome &o) {
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << " -- "
              << o.detail << std::endl;
    all = all && o.pass;
  };
  auto guarded = [](const std::function<Outcome()> &fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception &e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };
  for (std::size_t i = 0; i < unit.size(); ++i)
    report(static_cast<int>(i) + 1, unit[i].first, guarded(unit[i].second));

  const fs::path first_run = fs::temp_directory_path() / "rolediar-acceptance" / "in-process";
  std::optional<experiment::ReproduceResult> bench;
  double bench_secs = 0.0;
  const Outcome bench_status = guarded([&] {
    fs::remove_all(first_run);
    experiment::BenchmarkOptions opts;
    opts.seed = 1;
    const auto start = Clock::now();
    bench = experiment::ReproduceAll(opts, 0.2, first_run.string());
    bench_secs = Seconds(start);
    return Outcome{true, ""};
  });
  if (bench) {
    // The runtime covers both conditions.
    report(6, "mode ordering", ModeOrdering(bench->base, bench_secs));
    report(7, "confidence-gate curve", GateCurve(bench->fillers));
  } else {
    report(6, "mode ordering", bench_status);
    report(7, "confidence-gate curve", bench_status);
  }
  report(8, "profile gating", guarded(ProfileGating));
  report(9, "end-to-end determinism",
         bench ? guarded([&] { return Determinism(first_run); }) : bench_status);
  return all ? 0 : 1;
}
