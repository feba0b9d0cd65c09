// src/cli/app.cc

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

#include "rolediar/cli/app.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rolediar/cli/experiment.h"
#include "rolediar/core/ctm.h"
#include "rolediar/core/error.h"
#include "rolediar/core/hypothesis.h"
#include "rolediar/core/parallel.h"
#include "rolediar/lm/arpa.h"
#include "rolediar/lm/corpus.h"
#include "rolediar/lm/interpolate.h"
#include "rolediar/lm/kneser-ney.h"

#ifndef ROLEDIAR_VERSION
#define ROLEDIAR_VERSION "unknown"
#endif

namespace rolediar::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string Hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string FileHash(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot read " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return Hex(Fnv1a64(buf.str()));
}

Millis Ms(double seconds) { return SecondsToMillis(seconds); }

/// Records what a subcommand read and wrote; saved as manifest.json.
class Manifest {
 public:
  Manifest(std::string command, const PipelineConfig &cfg) : command_(std::move(command)) {
    config_ = {{"mode", cfg.mode},           {"window", cfg.window},
               {"overlap", cfg.overlap},     {"gap", cfg.gap},
               {"merge-gap", cfg.merge_gap}, {"collar", cfg.collar},
               {"a", cfg.a_percent},         {"alpha", cfg.alpha},
               {"segmentation", cfg.segmentation},
               {"speakers", cfg.num_speakers}, {"seed", cfg.seed}};
    config_["theta"] = cfg.theta ? json(*cfg.theta) : json(nullptr);
  }
  void Set(const std::string &key, json value) { config_[key] = std::move(value); }
  void Input(const std::string &path) { inputs_.push_back({{"path", path}, {"fnv1a64", FileHash(path)}}); }
  void Output(const std::string &name) { outputs_.push_back(name); }

  /// Results do not depend on --jobs, so it is not recorded.
  void Write(const fs::path &dir) const {
    json m;
    m["tool"] = "rolediar";
    m["version"] = ROLEDIAR_VERSION;
    m["command"] = command_;
    m["config"] = config_;
    m["config_hash"] = Hex(Fnv1a64(config_.dump()));
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    std::ofstream os(dir / "manifest.json");
    os << m.dump(2) << "\n";
    if (!os) throw FormatError("cannot write manifest in " + dir.string());
  }

 private:
  std::string command_;
  json config_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
};

fs::path PrepareOutDir(const std::string &dir) {
  if (dir.empty()) throw ParameterError("--out-dir is required");
  fs::create_directories(dir);
  return fs::path(dir);
}

void Validate(const PipelineConfig &cfg) {
  diarize::ParseMode(cfg.mode);
  segmenter::ParseStrategyKind(cfg.segmentation);
  if (!(cfg.window > 0.0)) throw ParameterError("window must be positive");
  if (!(cfg.overlap >= 0.0 && cfg.overlap < 1.0)) throw ParameterError("overlap must lie in [0, 1)");
  if (!(cfg.gap > 0.0)) throw ParameterError("gap must be positive");
  if (!(cfg.merge_gap >= 0.0)) throw ParameterError("merge-gap must be non-negative");
  if (!(cfg.collar >= 0.0)) throw ParameterError("collar must be non-negative");
  if (!(cfg.a_percent > 0.0 && cfg.a_percent <= 100.0)) throw ParameterError("a must lie in (0, 100]");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
  if (cfg.num_speakers < 1) throw ParameterError("speakers must be >= 1");
  if (cfg.jobs < 1) throw ParameterError("jobs must be >= 1");
}

embed::WindowingOptions Windowing(const PipelineConfig &cfg) {
  embed::WindowingOptions w;
  w.length = Ms(cfg.window);
  w.overlap = cfg.overlap;
  return w;
}

diarize::PipelineOptions PipelineOptionsFrom(const PipelineConfig &cfg) {
  diarize::PipelineOptions po;
  po.mode = diarize::ParseMode(cfg.mode);
  po.num_speakers = cfg.num_speakers;
  po.a_percent = cfg.a_percent;
  po.theta = cfg.theta;
  po.jobs = 1;
  return po;
}

eval::ScoringOptions Scoring(const PipelineConfig &cfg) {
  eval::ScoringOptions s;
  s.collar = Ms(cfg.collar);
  return s;
}

/// Role models named on the command line as name=path.arpa, in role order.
roles::RoleModels LoadRoleModels(const std::vector<std::string> &specs, Manifest &manifest) {
  std::vector<std::string> names;
  std::vector<lm::NGramModel> models;
  for (const auto &s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw ParameterError("--role-lm expects name=path, got '" + s + "'");
    names.push_back(s.substr(0, eq));
    const std::string path = s.substr(eq + 1);
    manifest.Input(path);
    models.push_back(lm::ReadArpaFile(path));
  }
  return roles::RoleModels(std::move(names), std::move(models));
}

/// Inputs shared by diarize and curve.
struct SessionFiles {
  std::string ctm, marks, embeddings, chain, plda;
  std::vector<std::string> role_lms;
};

void AddSessionOptions(CLI::App *sub, SessionFiles &f) {
  sub->add_option("--ctm", f.ctm, "Word alignments (CTM)");
  sub->add_option("--marks", f.marks, "Sentence marks file");
  sub->add_option("--embeddings", f.embeddings, "Raw window embeddings");
  sub->add_option("--chain", f.chain, "Normalization chain");
  sub->add_option("--plda", f.plda, "PLDA model");
  sub->add_option("--role-lm", f.role_lms, "Role model as name=path.arpa (repeat, in role order)");
}

struct LoadedSessions {
  std::map<std::string, diarize::SessionInput> inputs;
  std::optional<roles::RoleModels> roles;
  std::optional<plda::PldaModel> plda;
};

LoadedSessions LoadSessions(const SessionFiles &f, const PipelineConfig &cfg, Manifest &manifest) {
  LoadedSessions out;
  const auto strategy = segmenter::SegmentationStrategy{
      segmenter::ParseStrategyKind(cfg.segmentation), Ms(cfg.gap)};
  if (!f.ctm.empty()) {
    manifest.Input(f.ctm);
    segmenter::SentenceMarks marks;
    if (!f.marks.empty()) {
      manifest.Input(f.marks);
      marks = segmenter::ReadSentenceMarksFile(f.marks);
    } else if (strategy.kind == segmenter::StrategyKind::kSentenceMarks) {
      throw ParameterError("the sentence-marks segmentation needs --marks");
    }
    for (auto &[id, words] : ReadCtmFile(f.ctm)) {
      auto it = marks.find(id);
      const std::vector<std::size_t> none;
      out.inputs[id].session_id = id;
      out.inputs[id].segments =
          segmenter::SegmentSession(words, strategy, it == marks.end() ? none : it->second);
    }
  }
  if (!f.embeddings.empty()) {
    if (f.chain.empty()) throw ParameterError("--embeddings needs --chain");
    manifest.Input(f.embeddings);
    manifest.Input(f.chain);
    const auto chain = embed::ReadChainFile(f.chain);
    for (auto &[id, windows] : embed::GroupBySession(embed::ReadEmbeddingsFile(f.embeddings))) {
      out.inputs[id].session_id = id;
      out.inputs[id].windows = embed::NormalizeWindows(windows, chain);
    }
  }
  if (!f.plda.empty()) {
    manifest.Input(f.plda);
    out.plda = plda::ReadPldaFile(f.plda);
  }
  if (!f.role_lms.empty()) out.roles = LoadRoleModels(f.role_lms, manifest);
  if (out.inputs.empty()) throw ParameterError("no session input given (--ctm or --embeddings)");
  return out;
}

std::vector<double> ParseList(const std::string &s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ParameterError("bad number '" + item + "' in list");
    }
  }
  return v;
}

}  // namespace

int Run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Linguistically-aided speaker diarization toolkit", "rolediar"};
  app.set_version_flag("--version", std::string(ROLEDIAR_VERSION));
  app.set_config("--config", "", "key=value config file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  PipelineConfig cfg;
  app.add_option("--mode", cfg.mode, "audio-only | language-only | linguistically-aided");
  app.add_option("--window", cfg.window, "Window length in seconds");
  app.add_option("--overlap", cfg.overlap, "Window overlap fraction");
  app.add_option("--gap", cfg.gap, "Pre-segmentation silence threshold in seconds");
  app.add_option("--merge-gap", cfg.merge_gap, "Reference merge gap in seconds");
  app.add_option("--collar", cfg.collar, "Scoring collar in seconds");
  app.add_option("--a", cfg.a_percent, "Percentage of most confident segments kept");
  app.add_option("--theta", cfg.theta, "Confidence threshold (overrides --a)");
  app.add_option("--alpha", cfg.alpha, "PLDA adaptation weight");
  app.add_option("--segmentation", cfg.segmentation, "sentence-marks | silence-gap | oracle");
  app.add_option("--speakers", cfg.num_speakers, "Number of speakers for clustering");
  app.add_option("--seed", cfg.seed, "Seed for all randomness");
  app.add_option("--jobs", cfg.jobs, "Parallel jobs");

  std::string out_dir;
  std::function<void()> action;

  // train-lm
  auto *train_lm = app.add_subcommand("train-lm", "Train a Kneser-Ney n-gram model");
  std::string corpus_path;
  lm::KneserNeyOptions kn;
  std::optional<double> discount;
  train_lm->add_option("--corpus", corpus_path, "One sentence per line")->required();
  train_lm->add_option("--order", kn.order, "n-gram order");
  train_lm->add_option("--discount", discount, "Fixed discount (estimated when unset)");
  train_lm->add_option("--unk-floor", kn.unk_floor_count, "Count credited to <unk>");
  train_lm->add_option("--out-dir", out_dir, "Output directory")->required();
  train_lm->callback([&] {
    action = [&] {
      kn.discount = discount;
      Manifest m("train-lm", cfg);
      m.Set("order", kn.order);
      m.Set("discount", discount ? json(*discount) : json(nullptr));
      m.Set("unk-floor", kn.unk_floor_count);
      m.Input(corpus_path);
      const auto model = lm::TrainKneserNey(lm::ReadCorpusFile(corpus_path), kn);
      const auto dir = PrepareOutDir(out_dir);
      lm::WriteArpaFile((dir / "model.arpa").string(), model);
      m.Output("model.arpa");
      m.Write(dir);
    };
  });

  // interpolate-lm
  auto *interp = app.add_subcommand("interpolate-lm", "Interpolate n-gram models");
  std::vector<std::string> model_paths;
  std::string weights_list, dev_path;
  interp->add_option("--model", model_paths, "Component model (repeat)")->required();
  interp->add_option("--weights", weights_list, "Comma-separated weights");
  interp->add_option("--dev", dev_path, "Dev corpus for weight optimization");
  interp->add_option("--out-dir", out_dir, "Output directory")->required();
  interp->callback([&] {
    action = [&] {
      if (weights_list.empty() == dev_path.empty())
        throw ParameterError("give exactly one of --weights and --dev");
      Manifest m("interpolate-lm", cfg);
      std::vector<lm::NGramModel> models;
      for (const auto &p : model_paths) {
        m.Input(p);
        models.push_back(lm::ReadArpaFile(p));
      }
      std::vector<const lm::NGramModel *> ptrs;
      for (const auto &mdl : models) ptrs.push_back(&mdl);
      lm::InterpolationWeights w;
      if (!dev_path.empty()) {
        m.Input(dev_path);
        w = lm::OptimizeWeights(ptrs, lm::ReadCorpusFile(dev_path), {});
      } else {
        w.weights = ParseList(weights_list);
      }
      m.Set("weights", w.weights);
      const auto dir = PrepareOutDir(out_dir);
      lm::WriteArpaFile((dir / "model.arpa").string(), lm::Interpolate(ptrs, w));
      std::ofstream ws(dir / "weights.txt");
      ws << std::setprecision(17);
      for (double x : w.weights) ws << x << "\n";
      m.Output("model.arpa");
      m.Output("weights.txt");
      m.Write(dir);
    };
  });

  // perplexity
  auto *ppl = app.add_subcommand("perplexity", "Perplexity of a text under a model");
  std::string ppl_model, ppl_text;
  ppl->add_option("--model", ppl_model, "ARPA model")->required();
  ppl->add_option("--text", ppl_text, "One sentence per line")->required();
  ppl->callback([&] {
    action = [&] {
      const auto model = lm::ReadArpaFile(ppl_model);
      const auto text = lm::ReadCorpusFile(ppl_text);
      out << std::setprecision(10) << "sentences " << text.sentences.size() << " perplexity "
          << lm::CorpusPerplexity(model, text) << "\n";
    };
  });

  // train-plda
  auto *train_plda = app.add_subcommand("train-plda", "Estimate LDA and PLDA from labelled embeddings");
  std::string train_emb;
  int lda_dim = 200, iterations = 10;
  bool no_length_norm = false;
  train_plda->add_option("--embeddings", train_emb, "Embeddings; the session column is the speaker")
      ->required();
  train_plda->add_option("--lda-dim", lda_dim, "LDA output dimension");
  train_plda->add_option("--iterations", iterations, "EM iterations");
  train_plda->add_flag("--no-length-norm", no_length_norm, "Skip length normalization");
  train_plda->add_option("--out-dir", out_dir, "Output directory")->required();
  train_plda->callback([&] {
    action = [&] {
      Manifest m("train-plda", cfg);
      m.Set("lda-dim", lda_dim);
      m.Set("iterations", iterations);
      m.Set("length-norm", !no_length_norm);
      m.Input(train_emb);
      std::vector<EmbeddingVector> vectors;
      std::vector<std::string> speakers;
      for (auto &r : embed::ReadEmbeddingsFile(train_emb)) {
        vectors.push_back(std::move(r.vector));
        speakers.push_back(r.session_id);
      }
      const auto chain = embed::EstimateLda(vectors, speakers, lda_dim, !no_length_norm);
      for (auto &v : vectors) v = embed::Normalize(v, chain);
      const auto trained = plda::TrainPlda(vectors, speakers, {iterations});
      const auto dir = PrepareOutDir(out_dir);
      embed::WriteChainFile((dir / "chain.txt").string(), chain);
      plda::WritePldaFile((dir / "plda.txt").string(), trained.model);
      std::ofstream ll(dir / "log-likelihood.txt");
      ll << std::setprecision(17);
      for (double x : trained.log_likelihoods) ll << x << "\n";
      for (const char *f : {"chain.txt", "plda.txt", "log-likelihood.txt"}) m.Output(f);
      m.Write(dir);
    };
  });

  // adapt-plda
  auto *adapt = app.add_subcommand("adapt-plda", "Adapt a PLDA model to in-domain embeddings");
  std::string adapt_plda, adapt_chain, adapt_emb;
  adapt->add_option("--plda", adapt_plda, "Out-of-domain PLDA model")->required();
  adapt->add_option("--chain", adapt_chain, "Normalization chain")->required();
  adapt->add_option("--embeddings", adapt_emb, "Raw in-domain embeddings")->required();
  adapt->add_option("--out-dir", out_dir, "Output directory")->required();
  adapt->callback([&] {
    action = [&] {
      Manifest m("adapt-plda", cfg);
      for (const auto &p : {adapt_plda, adapt_chain, adapt_emb}) m.Input(p);
      const auto chain = embed::ReadChainFile(adapt_chain);
      std::vector<EmbeddingVector> in_domain;
      for (const auto &r : embed::ReadEmbeddingsFile(adapt_emb))
        in_domain.push_back(embed::Normalize(r.vector, chain));
      const auto adapted = plda::Adapt(plda::ReadPldaFile(adapt_plda), in_domain, cfg.alpha);
      const auto dir = PrepareOutDir(out_dir);
      plda::WritePldaFile((dir / "plda.txt").string(), adapted);
      m.Output("plda.txt");
      m.Write(dir);
    };
  });

  // synth
  auto *synth_cmd = app.add_subcommand("synth", "Generate a synthetic benchmark");
  synth::SyntheticSessionSpec spec;
  synth::WorldOptions world_opts;
  int sessions = 1, train_speakers = 300, per_speaker = 10;
  int background_sentences = 4000, train_sentences = 1500, dev_sentences = 300;
  synth_cmd->add_option("--sessions", sessions, "Number of sessions");
  synth_cmd->add_option("--turns", spec.num_turns, "Turns per session");
  synth_cmd->add_option("--divergence", world_opts.role_vocab_divergence, "Role vocabulary divergence");
  synth_cmd->add_option("--separation", spec.speaker_separation, "Speaker separation (Mahalanobis)");
  synth_cmd->add_option("--noise", spec.noise_fraction, "Fraction of noise windows");
  synth_cmd->add_option("--substitution", spec.substitution_rate, "Transcript substitution rate");
  synth_cmd->add_option("--deletion", spec.deletion_rate, "Transcript deletion rate");
  synth_cmd->add_option("--fillers", spec.filler_fraction, "Share of backchannel filler sentences");
  synth_cmd->add_option("--dim", world_opts.dim, "Embedding dimension");
  synth_cmd->add_option("--train-speakers", train_speakers, "Speakers in the PLDA training set");
  synth_cmd->add_option("--per-speaker", per_speaker, "Embeddings per training speaker");
  synth_cmd->add_option("--background-sentences", background_sentences, "Background corpus size");
  synth_cmd->add_option("--train-sentences", train_sentences, "Role training corpus size");
  synth_cmd->add_option("--dev-sentences", dev_sentences, "Role dev corpus size");
  synth_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  synth_cmd->callback([&] {
    action = [&] {
      if (sessions < 1) throw ParameterError("sessions must be >= 1");
      world_opts.seed = synth::DeriveSeed(cfg.seed, 1);
      spec.windowing = Windowing(cfg);
      spec.gap_threshold = Ms(cfg.gap);
      spec.merge_gap = Ms(cfg.merge_gap);
      Manifest m("synth", cfg);
      m.Set("sessions", sessions);
      m.Set("turns", spec.num_turns);
      m.Set("divergence", world_opts.role_vocab_divergence);
      m.Set("separation", spec.speaker_separation);
      m.Set("noise", spec.noise_fraction);
      m.Set("substitution", spec.substitution_rate);
      m.Set("deletion", spec.deletion_rate);
      m.Set("fillers", spec.filler_fraction);
      m.Set("dim", world_opts.dim);
      const synth::World world(world_opts);
      const auto dir = PrepareOutDir(out_dir);
      std::ofstream ctm(dir / "words.ctm");
      segmenter::SentenceMarks marks;
      HypothesisSet reference;
      std::vector<embed::EmbeddingRecord> windows;
      for (int i = 0; i < sessions; ++i) {
        auto s = spec;
        s.seed = synth::DeriveSeed(cfg.seed, 100000 + i);
        std::ostringstream id;
        id << "session" << std::setw(3) << std::setfill('0') << i;
        auto session = synth::GenerateSession(world, s, id.str());
        WriteCtm(ctm, session.session_id, session.transcript);
        marks[session.session_id] = session.sentence_marks;
        reference[session.session_id] = session.reference;
        windows.insert(windows.end(), session.windows.begin(), session.windows.end());
      }
      {
        std::ofstream ms(dir / "marks.txt");
        segmenter::WriteSentenceMarks(ms, marks);
      }
      WriteRttmFile((dir / "reference.rttm").string(), reference);
      embed::WriteEmbeddingsFile((dir / "embeddings.txt").string(), windows);

      const auto train = synth::GenerateTrainingEmbeddings(world, train_speakers, per_speaker,
                                                           synth::DeriveSeed(cfg.seed, 30));
      std::vector<embed::EmbeddingRecord> train_records;
      for (std::size_t i = 0; i < train.vectors.size(); ++i)
        train_records.push_back({train.speakers[i], "e" + std::to_string(i),
                                 TimeInterval(0, 0), train.vectors[i]});
      embed::WriteEmbeddingsFile((dir / "plda-train.txt").string(), train_records);

      auto write_corpus = [&](const lm::Corpus &c, const std::string &name) {
        std::ofstream os(dir / name);
        lm::WriteCorpus(os, c);
        m.Output(name);
      };
      write_corpus(world.GeneralCorpus(background_sentences, synth::DeriveSeed(cfg.seed, 2)),
                   "background.txt");
      for (int r = 0; r < world.num_roles(); ++r) {
        const auto &name = world.options().role_names[r];
        write_corpus(world.RoleCorpus(r, train_sentences, synth::DeriveSeed(cfg.seed, 10 + r)),
                     "train-" + name + ".txt");
        write_corpus(world.RoleCorpus(r, dev_sentences, synth::DeriveSeed(cfg.seed, 20 + r)),
                     "dev-" + name + ".txt");
      }
      for (const char *f : {"words.ctm", "marks.txt", "reference.rttm", "embeddings.txt",
                            "plda-train.txt"})
        m.Output(f);
      m.Write(dir);
    };
  });

  // diarize
  auto *diar = app.add_subcommand("diarize", "Run a diarization pipeline");
  SessionFiles files;
  AddSessionOptions(diar, files);
  diar->add_option("--out-dir", out_dir, "Output directory")->required();
  diar->callback([&] {
    action = [&] {
      Manifest m("diarize", cfg);
      auto loaded = LoadSessions(files, cfg, m);
      const auto po = PipelineOptionsFrom(cfg);
      std::vector<std::string> ids;
      for (const auto &[id, _] : loaded.inputs) ids.push_back(id);
      std::vector<diarize::PipelineResult> results(ids.size());
      ParallelFor(ids.size(), cfg.jobs, [&](std::size_t i) {
        results[i] = diarize::RunPipeline(loaded.inputs.at(ids[i]),
                                          loaded.roles ? &*loaded.roles : nullptr,
                                          loaded.plda ? &*loaded.plda : nullptr, po);
      });
      const auto dir = PrepareOutDir(out_dir);
      HypothesisSet hyp;
      std::ofstream assignments(dir / "assignments.txt");
      std::ofstream fallbacks(dir / "fallbacks.txt");
      for (std::size_t i = 0; i < ids.size(); ++i) {
        hyp[ids[i]] = results[i].hypothesis;
        if (!results[i].assignments.empty())
          roles::WriteAssignments(assignments, ids[i], results[i].assignments);
        if (results[i].fallback) {
          fallbacks << ids[i] << "\t" << results[i].fallback_reason << "\n";
          err << "warning: " << ids[i] << " fell back to clustering: "
              << results[i].fallback_reason << "\n";
        }
      }
      WriteRttmFile((dir / "hypothesis.rttm").string(), hyp);
      for (const char *f : {"hypothesis.rttm", "assignments.txt", "fallbacks.txt"}) m.Output(f);
      m.Write(dir);
    };
  });

  // score-der
  auto *score = app.add_subcommand("score-der", "Score a hypothesis RTTM against a reference");
  std::string ref_path, hyp_path;
  bool keep_overlap = false;
  score->add_option("reference", ref_path, "Reference RTTM")->required();
  score->add_option("hypothesis", hyp_path, "Hypothesis RTTM")->required();
  score->add_flag("--score-overlap", keep_overlap, "Also score overlapped reference speech");
  score->add_option("--out-dir", out_dir, "Write a per-session table here");
  score->callback([&] {
    action = [&] {
      auto scoring = Scoring(cfg);
      scoring.ignore_overlap = !keep_overlap;
      const auto ref = ReadRttmFile(ref_path);
      const auto hyp = ReadRttmFile(hyp_path);
      const auto pooled = eval::ScoreDerSet(ref, hyp, scoring);
      out << std::fixed << std::setprecision(2) << "DER " << pooled.der << "% (missed "
          << pooled.missed << "%, false alarm " << pooled.false_alarm << "%, confusion "
          << pooled.confusion << "%, scored " << pooled.scored_time << " s)\n";
      if (!out_dir.empty()) {
        Manifest m("score-der", cfg);
        m.Input(ref_path);
        m.Input(hyp_path);
        std::map<std::string, eval::DerReport> per;
        for (const auto &[id, r] : ref) {
          auto h = hyp.find(id);
          HypothesisSet one_ref{{id, r}}, one_hyp;
          if (h != hyp.end()) one_hyp[id] = h->second;
          per[id] = eval::ScoreDerSet(one_ref, one_hyp, scoring);
        }
        const auto dir = PrepareOutDir(out_dir);
        std::ofstream os(dir / "der.tsv");
        eval::WriteDerTable(os, per, pooled);
        m.Output("der.tsv");
        m.Write(dir);
      }
    };
  });

  // curve
  auto *curve = app.add_subcommand("curve", "DER of the aided pipeline over confidence gates");
  SessionFiles curve_files;
  std::string curve_ref, a_values = "10,20,30,40,50,60,70,80,90,100";
  AddSessionOptions(curve, curve_files);
  curve->add_option("--reference", curve_ref, "Reference RTTM")->required();
  curve->add_option("--a-values", a_values, "Comma-separated gate percentages");
  curve->add_option("--out-dir", out_dir, "Output directory")->required();
  curve->callback([&] {
    action = [&] {
      Manifest m("curve", cfg);
      m.Set("a-values", a_values);
      auto loaded = LoadSessions(curve_files, cfg, m);
      if (!loaded.roles || !loaded.plda)
        throw ConfigurationError("curve needs --role-lm and --plda");
      m.Input(curve_ref);
      const auto ref = ReadRttmFile(curve_ref);
      std::vector<eval::CurveSession> cs;
      for (auto &[id, input] : loaded.inputs) {
        if (!input.segments || !input.windows)
          throw ConfigurationError("session " + id + " lacks text or embeddings");
        auto r = ref.find(id);
        if (r == ref.end()) throw FormatError("session " + id + " missing from the reference");
        auto assignments = roles::AssignRoles(*input.segments, *loaded.roles, 1);
        cs.push_back({input, std::move(assignments), r->second});
      }
      auto po = PipelineOptionsFrom(cfg);
      po.mode = diarize::Mode::kLinguisticallyAided;
      const auto points = eval::DerCurve(cs, ParseList(a_values), loaded.roles->roles(),
                                         *loaded.plda, po, Scoring(cfg), cfg.jobs);
      const auto dir = PrepareOutDir(out_dir);
      std::ofstream os(dir / "curve.csv");
      eval::WriteCurveCsv(os, points);
      m.Output("curve.csv");
      m.Write(dir);
    };
  });

  // reproduce
  auto *repro = app.add_subcommand("reproduce", "Run the full synthetic benchmark");
  experiment::BenchmarkOptions bench;
  double repro_fillers = 0.2;
  repro->add_option("--sessions", bench.test_sessions, "Test sessions");
  repro->add_option("--dev-sessions", bench.dev_sessions, "Dev sessions");
  repro->add_option("--turns", bench.session.num_turns, "Turns per session");
  repro->add_option("--divergence", bench.world.role_vocab_divergence, "Role vocabulary divergence");
  repro->add_option("--separation", bench.session.speaker_separation, "Speaker separation");
  repro->add_option("--noise", bench.session.noise_fraction, "Fraction of noise windows");
  repro->add_option("--substitution", bench.session.substitution_rate, "Substitution rate");
  repro->add_option("--deletion", bench.session.deletion_rate, "Deletion rate");
  repro->add_option("--fillers", repro_fillers, "Filler share in the gate-curve condition");
  repro->add_option("--out-dir", out_dir, "Output directory")->required();
  repro->callback([&] {
    action = [&] {
      bench.seed = cfg.seed;
      bench.jobs = cfg.jobs;
      bench.session.windowing = Windowing(cfg);
      bench.session.gap_threshold = Ms(cfg.gap);
      bench.session.merge_gap = Ms(cfg.merge_gap);
      bench.segmentation = {segmenter::ParseStrategyKind(cfg.segmentation), Ms(cfg.gap)};
      bench.scoring = Scoring(cfg);
      bench.adapt_alpha = cfg.alpha;
      Manifest m("reproduce", cfg);
      m.Set("sessions", bench.test_sessions);
      m.Set("dev-sessions", bench.dev_sessions);
      m.Set("turns", bench.session.num_turns);
      m.Set("divergence", bench.world.role_vocab_divergence);
      m.Set("separation", bench.session.speaker_separation);
      m.Set("noise", bench.session.noise_fraction);
      m.Set("substitution", bench.session.substitution_rate);
      m.Set("deletion", bench.session.deletion_rate);
      m.Set("fillers", repro_fillers);
      const auto dir = PrepareOutDir(out_dir);
      const auto r = experiment::ReproduceAll(bench, repro_fillers, dir.string());
      std::ifstream report(dir / "report.txt");
      out << report.rdbuf();
      m.Output("report.txt");
      m.Output("base");
      m.Output("fillers");
      m.Write(dir);
      if (r.base.aided_fallbacks > 0)
        err << "warning: " << r.base.aided_fallbacks << " sessions fell back to clustering\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion &e) {
    out << ROLEDIAR_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    Validate(cfg);
    if (action) action();
    return kExitOk;
  } catch (const ParameterError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError &e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const OrderingError &e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error &e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error &e) {
    err << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception &e) {
    err << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  }
}

}  // namespace rolediar::cli
