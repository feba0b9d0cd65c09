// src/cli/experiment.cc

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

#include "rolediar/cli/experiment.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rolediar/core/error.h"
#include "rolediar/core/parallel.h"

namespace rolediar::experiment {

namespace {

// Stream tags for DeriveSeed; fixed so outputs are reproducible.
constexpr std::uint64_t kWorldTag = 1;
constexpr std::uint64_t kBackgroundTag = 2;
constexpr std::uint64_t kRoleTrainTag = 10;
constexpr std::uint64_t kRoleDevTag = 20;
constexpr std::uint64_t kEmbeddingTag = 30;
constexpr std::uint64_t kDevSessionTag = 1000;
constexpr std::uint64_t kTestSessionTag = 100000;

std::vector<embed::AudioWindow> ToWindows(const std::vector<embed::EmbeddingRecord> &records) {
  std::vector<embed::AudioWindow> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back({r.interval, r.vector});
  return out;
}

std::vector<synth::SyntheticSession> MakeSessions(const synth::World &world,
                                                  const BenchmarkOptions &opts, int count,
                                                  std::uint64_t tag, const std::string &prefix) {
  std::vector<synth::SyntheticSession> out(count);
  ParallelFor(count, opts.jobs, [&](std::size_t i) {
    synth::SyntheticSessionSpec spec = opts.session;
    spec.seed = synth::DeriveSeed(opts.seed, tag + i);
    std::ostringstream id;
    id << prefix << std::setw(3) << std::setfill('0') << i;
    out[i] = synth::GenerateSession(world, spec, id.str());
  });
  return out;
}

synth::World MakeWorld(const BenchmarkOptions &opts) {
  synth::WorldOptions wo = opts.world;
  wo.seed = synth::DeriveSeed(opts.seed, kWorldTag);
  return synth::World(wo);
}

}  // namespace

// The reference condition: ASR-grade transcripts (~80% role accuracy) and
// 15% of the windows replaced by noise.
BenchmarkOptions::BenchmarkOptions() {
  world.role_vocab_divergence = 0.2;
  session.noise_fraction = 0.15;
  session.substitution_rate = 0.2;
  session.deletion_rate = 0.05;
}

SystemModels TrainSystem(const synth::World &world, const BenchmarkOptions &opts,
                         const std::vector<synth::SyntheticSession> &dev) {
  roles::RoleLmTrainingData data;
  data.background = world.GeneralCorpus(opts.background_sentences,
                                        synth::DeriveSeed(opts.seed, kBackgroundTag));
  data.role_names = world.options().role_names;
  for (int r = 0; r < world.num_roles(); ++r) {
    data.role_train.push_back(world.RoleCorpus(r, opts.role_train_sentences,
                                               synth::DeriveSeed(opts.seed, kRoleTrainTag + r)));
    data.role_dev.push_back(world.RoleCorpus(r, opts.role_dev_sentences,
                                             synth::DeriveSeed(opts.seed, kRoleDevTag + r)));
  }
  roles::RoleLmOptions lm_opts;
  lm_opts.jobs = opts.jobs;
  auto lms = roles::BuildRoleModels(data, lm_opts);

  const auto train = synth::GenerateTrainingEmbeddings(
      world, opts.train_speakers, opts.train_per_speaker,
      synth::DeriveSeed(opts.seed, kEmbeddingTag));
  auto chain = embed::EstimateLda(train.vectors, train.speakers, opts.lda_dim, true);
  std::vector<EmbeddingVector> projected;
  projected.reserve(train.vectors.size());
  for (const auto &v : train.vectors) projected.push_back(embed::Normalize(v, chain));
  auto trained = plda::TrainPlda(projected, train.speakers, {opts.plda_iterations});

  std::vector<EmbeddingVector> in_domain;
  for (const auto &s : dev)
    for (const auto &w : s.windows) in_domain.push_back(embed::Normalize(w.vector, chain));
  plda::PldaModel adapted =
      in_domain.size() >= 2 ? plda::Adapt(trained.model, in_domain, opts.adapt_alpha)
                            : trained.model;
  return SystemModels{std::move(lms), std::move(chain), std::move(adapted),
                      std::move(trained.model)};
}

PreparedSession PrepareSession(synth::SyntheticSession raw, const SystemModels &models,
                               const BenchmarkOptions &opts) {
  PreparedSession p;
  p.curve.input.session_id = raw.session_id;
  std::vector<TextSegment> segments;
  if (!raw.transcript.empty())
    segments = segmenter::SegmentSession(raw.transcript, opts.segmentation, raw.sentence_marks);
  p.curve.assignments = roles::AssignRoles(segments, models.lms.scoring, 1);
  p.curve.input.segments = std::move(segments);
  p.curve.input.windows =
      embed::NormalizeWindows(ToWindows(raw.windows), models.chain);
  p.curve.reference = raw.reference;
  p.raw = std::move(raw);
  return p;
}

std::pair<int, int> CountRoleAgreement(const std::vector<TextSegment> &segments,
                                       const std::vector<roles::RoleAssignment> &assignments) {
  if (segments.size() != assignments.size())
    throw ParameterError("segments and assignments differ in length");
  int correct = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::map<std::string, int> votes;
    for (const auto &w : segments[i].words())
      if (w.speaker) ++votes[*w.speaker];
    if (votes.empty()) continue;
    auto best = std::max_element(votes.begin(), votes.end(),
                                 [](const auto &a, const auto &b) { return a.second < b.second; });
    if (best->first == assignments[i].role.name) ++correct;
  }
  return {correct, static_cast<int>(segments.size())};
}

BenchmarkResult RunBenchmark(const BenchmarkOptions &opts) {
  if (opts.test_sessions < 1) throw ParameterError("need at least one test session");
  if (opts.a_values.empty() && !opts.a_percent) throw ParameterError("no gate values");
  const synth::World world = MakeWorld(opts);
  auto dev_raw = MakeSessions(world, opts, opts.dev_sessions, kDevSessionTag, "dev");
  auto test_raw = MakeSessions(world, opts, opts.test_sessions, kTestSessionTag, "test");
  const SystemModels models = TrainSystem(world, opts, dev_raw);

  auto prepare = [&](std::vector<synth::SyntheticSession> &raw) {
    std::vector<PreparedSession> out(raw.size());
    ParallelFor(raw.size(), opts.jobs,
                [&](std::size_t i) { out[i] = PrepareSession(std::move(raw[i]), models, opts); });
    return out;
  };
  auto dev = prepare(dev_raw);
  auto test = prepare(test_raw);

  const auto &roles = models.lms.scoring.roles();
  BenchmarkResult result;
  diarize::PipelineOptions base;
  auto curve_of = [&](const std::vector<PreparedSession> &sessions) {
    std::vector<eval::CurveSession> cs;
    for (const auto &s : sessions) cs.push_back(s.curve);
    return eval::DerCurve(cs, opts.a_values, roles, models.plda, base, opts.scoring, opts.jobs);
  };
  if (!opts.a_values.empty()) {
    if (!dev.empty()) result.dev_curve = curve_of(dev);
    result.test_curve = curve_of(test);
  }
  if (opts.a_percent) {
    result.chosen_a = *opts.a_percent;
  } else {
    const auto &curve = result.dev_curve.empty() ? result.test_curve : result.dev_curve;
    auto best = std::min_element(curve.begin(), curve.end(), [](const auto &x, const auto &y) {
      return x.report.der < y.report.der;
    });
    result.chosen_a = best->a_percent;
  }

  int correct = 0, total = 0;
  for (const auto &s : test) {
    auto [c, n] = CountRoleAgreement(*s.curve.input.segments, s.curve.assignments);
    correct += c;
    total += n;
  }
  result.role_accuracy = total > 0 ? static_cast<double>(correct) / total : 0.0;

  const diarize::Mode modes[] = {diarize::Mode::kAudioOnly, diarize::Mode::kLanguageOnly,
                                 diarize::Mode::kLinguisticallyAided};
  HypothesisSet reference;
  for (const auto &s : test) reference[s.curve.input.session_id] = s.curve.reference;
  for (diarize::Mode mode : modes) {
    std::vector<diarize::PipelineResult> out(test.size());
    diarize::PipelineOptions po;
    po.mode = mode;
    po.a_percent = result.chosen_a;
    ParallelFor(test.size(), opts.jobs, [&](std::size_t i) {
      const auto &cs = test[i].curve;
      switch (mode) {
        case diarize::Mode::kAudioOnly:
          out[i] = diarize::RunPipeline(cs.input, nullptr, &models.plda, po);
          break;
        case diarize::Mode::kLanguageOnly:
          out[i].hypothesis =
              roles::LanguageOnlyDiarize(cs.input.session_id, *cs.input.segments, cs.assignments);
          break;
        case diarize::Mode::kLinguisticallyAided:
          out[i] = diarize::RunAidedFromAssignments(cs.input, cs.assignments, roles,
                                                    models.plda, po);
          break;
      }
    });
    HypothesisSet hyp;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto &id = test[i].curve.input.session_id;
      hyp[id] = out[i].hypothesis;
      if (mode == diarize::Mode::kLinguisticallyAided && out[i].fallback)
        ++result.aided_fallbacks;
      HypothesisSet one_ref{{id, reference.at(id)}}, one_hyp{{id, out[i].hypothesis}};
      result.per_session[mode][id] = eval::ScoreDerSet(one_ref, one_hyp, opts.scoring);
    }
    result.pooled[mode] = eval::ScoreDerSet(reference, hyp, opts.scoring);
    result.hypotheses[mode] = std::move(hyp);
  }
  result.reference = std::move(reference);
  return result;
}

BenchmarkResult Reproduce(const BenchmarkOptions &opts, const std::string &out_dir) {
  namespace fs = std::filesystem;
  BenchmarkResult r = RunBenchmark(opts);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  WriteRttmFile((dir / "reference.rttm").string(), r.reference);
  for (const auto &[mode, set] : r.hypotheses) {
    WriteRttmFile((dir / (diarize::ModeName(mode) + ".rttm")).string(), set);
    std::ofstream os(dir / ("der-" + diarize::ModeName(mode) + ".tsv"));
    eval::WriteDerTable(os, r.per_session.at(mode), r.pooled.at(mode));
    if (!os) throw FormatError("cannot write DER table in " + out_dir);
  }
  {
    std::ofstream os(dir / "curve.csv");
    eval::WriteCurveCsv(os, r.test_curve);
    std::ofstream dos(dir / "dev-curve.csv");
    eval::WriteCurveCsv(dos, r.dev_curve);
    if (!os || !dos) throw FormatError("cannot write curves in " + out_dir);
  }
  std::ofstream os(dir / "report.txt");
  os << std::fixed << std::setprecision(2);
  os << "sessions\t" << opts.test_sessions << "\n";
  os << "role_accuracy\t" << 100.0 * r.role_accuracy << "\n";
  os << "chosen_a\t" << r.chosen_a << "\n";
  os << "aided_fallbacks\t" << r.aided_fallbacks << "\n";
  for (const auto &[mode, rep] : r.pooled)
    os << "der_" << diarize::ModeName(mode) << "\t" << rep.der << "\n";
  if (!os) throw FormatError("cannot write report in " + out_dir);
  return r;
}

ReproduceResult ReproduceAll(const BenchmarkOptions &opts, double filler_fraction,
                             const std::string &out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  ReproduceResult r;
  BenchmarkOptions base = opts;
  base.session.filler_fraction = 0.0;
  r.base = Reproduce(base, (dir / "base").string());
  BenchmarkOptions fill = opts;
  fill.session.filler_fraction = filler_fraction;
  r.fillers = Reproduce(fill, (dir / "fillers").string());

  std::ofstream os(dir / "report.txt");
  os << std::fixed << std::setprecision(2);
  os << "# mode comparison (pooled DER %, " << opts.test_sessions << " sessions)\n";
  os << "role_accuracy\t" << 100.0 * r.base.role_accuracy << "\n";
  for (const auto &[mode, rep] : r.base.pooled)
    os << diarize::ModeName(mode) << "\t" << rep.der << "\tmissed " << rep.missed
       << "\tfalse_alarm " << rep.false_alarm << "\tconfusion " << rep.confusion << "\n";
  os << "aided_a\t" << r.base.chosen_a << "\n";
  os << "# DER over the confidence gate a, with " << 100.0 * filler_fraction
     << "% filler segments\n";
  for (const auto &p : r.fillers.test_curve)
    os << "a=" << p.a_percent << "\t" << p.report.der << "\tfallbacks " << p.fallbacks << "\n";
  if (!os) throw FormatError("cannot write report in " + out_dir);
  return r;
}

}  // namespace rolediar::experiment
