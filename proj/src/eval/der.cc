// src/eval/der.cc

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

#include "rolediar/eval/der.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>

#include "rolediar/core/error.h"

namespace rolediar::eval {

DerCounts &DerCounts::operator+=(const DerCounts &o) {
  scored += o.scored;
  missed += o.missed;
  false_alarm += o.false_alarm;
  confusion += o.confusion;
  return *this;
}

DerReport DerReport::FromCounts(const DerCounts &counts) {
  DerReport r;
  r.counts = counts;
  r.scored_time = MillisToSeconds(counts.scored);
  if (counts.scored > 0) {
    const double s = static_cast<double>(counts.scored);
    r.missed = 100.0 * counts.missed / s;
    r.false_alarm = 100.0 * counts.false_alarm / s;
    r.confusion = 100.0 * counts.confusion / s;
    r.der = 100.0 * (counts.missed + counts.false_alarm + counts.confusion) / s;
  }
  return r;
}

std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight) {
  // Hungarian algorithm (shortest augmenting paths with potentials) on the
  // square cost matrix max(weight) - weight, padded with zeros.
  const int rows = static_cast<int>(weight.rows()), cols = static_cast<int>(weight.cols());
  const int n = std::max(rows, cols);
  if (n == 0) return {};
  const double top = weight.size() ? weight.maxCoeff() : 0.0;
  Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(n, n, top);
  cost.topLeftCorner(rows, cols) = Eigen::MatrixXd::Constant(rows, cols, top) - weight;

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);  // match[col] = row, 1-based
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> out(rows, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] - 1 < rows && j - 1 < cols) out[match[j] - 1] = j - 1;
  return out;
}

namespace {

struct Piece {
  Millis duration;
  std::vector<int> ref, hyp;  // label indices active throughout
};

// Splits the scored region into pieces with a constant set of active labels.
std::vector<Piece> ScoredPieces(const DiarizationHypothesis &ref,
                                const DiarizationHypothesis &hyp,
                                const std::vector<std::string> &ref_labels,
                                const std::vector<std::string> &hyp_labels,
                                const ScoringOptions &opts) {
  Millis lo = std::numeric_limits<Millis>::max(), hi = std::numeric_limits<Millis>::min();
  std::set<Millis> cuts;
  std::vector<TimeInterval> no_score;
  for (const auto &r : ref.records) {
    lo = std::min(lo, r.interval.start());
    hi = std::max(hi, r.interval.end());
    cuts.insert(r.interval.start());
    cuts.insert(r.interval.end());
    if (opts.collar > 0) {
      for (Millis b : {r.interval.start(), r.interval.end()}) {
        const Millis a = std::max<Millis>(0, b - opts.collar);
        no_score.emplace_back(a, b + opts.collar);
        cuts.insert(a);
        cuts.insert(b + opts.collar);
      }
    }
  }
  for (const auto &h : hyp.records) {
    cuts.insert(h.interval.start());
    cuts.insert(h.interval.end());
  }
  auto index_of = [](const std::vector<std::string> &labels, const std::string &l) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };

  std::vector<Piece> pieces;
  std::vector<Millis> points(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Millis a = points[k], b = points[k + 1];
    if (a < lo || b > hi || a == b) continue;
    const TimeInterval span(a, b);
    // Cut points include every collar edge, so a piece is either inside a
    // no-score zone or disjoint from all of them.
    bool excluded = false;
    for (const auto &z : no_score)
      if (z.start() <= a && b <= z.end()) {
        excluded = true;
        break;
      }
    if (excluded) continue;
    Piece p{b - a, {}, {}};
    for (const auto &r : ref.records)
      if (r.interval.start() <= a && b <= r.interval.end())
        p.ref.push_back(index_of(ref_labels, r.label));
    for (const auto &h : hyp.records)
      if (h.interval.start() <= a && b <= h.interval.end())
        p.hyp.push_back(index_of(hyp_labels, h.label));
    for (auto *v : {&p.ref, &p.hyp}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    if (opts.ignore_overlap && p.ref.size() >= 2) continue;
    pieces.push_back(std::move(p));
  }
  return pieces;
}

}  // namespace

DerReport ScoreDer(const DiarizationHypothesis &reference,
                   const DiarizationHypothesis &hypothesis, const ScoringOptions &opts) {
  if (opts.collar < 0) throw ParameterError("collar must be >= 0");
  if (reference.LabeledDuration() == 0)
    throw ScoringError("reference for session " + reference.session_id + " has no speech");
  const std::vector<std::string> ref_labels = reference.Labels();
  const std::vector<std::string> hyp_labels = hypothesis.Labels();
  const std::vector<Piece> pieces =
      ScoredPieces(reference, hypothesis, ref_labels, hyp_labels, opts);

  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(hyp_labels.size(), ref_labels.size());
  for (const Piece &p : pieces)
    for (int h : p.hyp)
      for (int r : p.ref) overlap(h, r) += static_cast<double>(p.duration);
  const std::vector<int> map = MaxWeightAssignment(overlap);

  DerCounts c;
  for (const Piece &p : pieces) {
    const auto n_ref = static_cast<Millis>(p.ref.size());
    const auto n_hyp = static_cast<Millis>(p.hyp.size());
    Millis correct = 0;
    for (int h : p.hyp)
      if (map[h] >= 0 && std::binary_search(p.ref.begin(), p.ref.end(), map[h])) ++correct;
    c.scored += p.duration * n_ref;
    c.missed += p.duration * std::max<Millis>(0, n_ref - n_hyp);
    c.false_alarm += p.duration * std::max<Millis>(0, n_hyp - n_ref);
    c.confusion += p.duration * (std::min(n_ref, n_hyp) - correct);
  }
  DerReport report = DerReport::FromCounts(c);
  for (std::size_t h = 0; h < hyp_labels.size(); ++h)
    if (map[h] >= 0 && overlap(h, map[h]) > 0) report.mapping[hyp_labels[h]] = ref_labels[map[h]];
  return report;
}

DerReport ScoreDerSet(const HypothesisSet &reference, const HypothesisSet &hypothesis,
                      const ScoringOptions &opts) {
  if (reference.empty()) throw ScoringError("empty reference set");
  DerCounts total;
  for (const auto &[id, ref] : reference) {
    auto it = hypothesis.find(id);
    const DiarizationHypothesis empty{id, {}};
    total += ScoreDer(ref, it == hypothesis.end() ? empty : it->second, opts).counts;
  }
  return DerReport::FromCounts(total);
}

void WriteDerTable(std::ostream &os, const std::map<std::string, DerReport> &per_session,
                   const DerReport &pooled) {
  os << "session\tDER\tmissed\tfalse_alarm\tconfusion\tscored_s\n";
  char buf[160];
  auto row = [&](const std::string &name, const DerReport &r) {
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.2f\t%.2f\t%.2f\t%.3f\n", r.der, r.missed,
                  r.false_alarm, r.confusion, r.scored_time);
    os << name << buf;
  };
  for (const auto &[id, r] : per_session) row(id, r);
  row("ALL", pooled);
}

}  // namespace rolediar::eval
