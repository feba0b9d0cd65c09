// src/eval/curve.cc

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

#include "rolediar/eval/curve.h"

#include <cstdio>
#include <ostream>

#include "rolediar/core/error.h"
#include "rolediar/core/parallel.h"

namespace rolediar::eval {

std::vector<CurvePoint> DerCurve(const std::vector<CurveSession> &sessions,
                                 const std::vector<double> &a_values,
                                 const std::vector<RoleLabel> &roles,
                                 const plda::PldaModel &model,
                                 const diarize::PipelineOptions &base,
                                 const ScoringOptions &scoring, int jobs) {
  for (double a : a_values)
    if (!(a > 0.0 && a <= 100.0)) throw ParameterError("a values must lie in (0, 100]");
  std::vector<CurvePoint> curve;
  for (double a : a_values) {
    diarize::PipelineOptions opts = base;
    opts.mode = diarize::Mode::kLinguisticallyAided;
    opts.a_percent = a;
    opts.theta.reset();
    opts.jobs = 1;
    std::vector<DerCounts> counts(sessions.size());
    std::vector<int> fell_back(sessions.size(), 0);
    ParallelFor(sessions.size(), jobs, [&](std::size_t i) {
      const auto &s = sessions[i];
      const auto result =
          diarize::RunAidedFromAssignments(s.input, s.assignments, roles, model, opts);
      fell_back[i] = result.fallback ? 1 : 0;
      counts[i] = ScoreDer(s.reference, result.hypothesis, scoring).counts;
    });
    CurvePoint point{a, {}, 0};
    DerCounts total;
    for (std::size_t i = 0; i < sessions.size(); ++i) {
      total += counts[i];
      point.fallbacks += fell_back[i];
    }
    point.report = DerReport::FromCounts(total);
    curve.push_back(std::move(point));
  }
  return curve;
}

void WriteCurveCsv(std::ostream &os, const std::vector<CurvePoint> &curve) {
  os << "a,der,missed,false_alarm,confusion,fallbacks\n";
  char buf[160];
  for (const auto &p : curve) {
    std::snprintf(buf, sizeof(buf), "%g,%.4f,%.4f,%.4f,%.4f,%d\n", p.a_percent, p.report.der,
                  p.report.missed, p.report.false_alarm, p.report.confusion, p.fallbacks);
    os << buf;
  }
}

}  // namespace rolediar::eval
