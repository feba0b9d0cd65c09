// include/rolediar/eval/curve.h

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

#ifndef ROLEDIAR_EVAL_CURVE_H_
#define ROLEDIAR_EVAL_CURVE_H_

#include <iosfwd>
#include <vector>

#include "rolediar/diarize/diarize.h"
#include "rolediar/eval/der.h"

namespace rolediar::eval {

struct CurveSession {
  diarize::SessionInput input;
  std::vector<roles::RoleAssignment> assignments;  // parallel to input.segments
  DiarizationHypothesis reference;
};

struct CurvePoint {
  double a_percent = 0.0;
  DerReport report;  // pooled over sessions
  int fallbacks = 0;  // sessions that fell back to clustering
};

/// For each a, reruns profile estimation and window classification on every
/// session (assignments are reused) and pools the DER. Sessions run in
/// parallel; results do not depend on `jobs`.
std::vector<CurvePoint> DerCurve(const std::vector<CurveSession> &sessions,
                                 const std::vector<double> &a_values,
                                 const std::vector<RoleLabel> &roles,
                                 const plda::PldaModel &model,
                                 const diarize::PipelineOptions &base,
                                 const ScoringOptions &scoring = {}, int jobs = 1);

/// "a,der,missed,false_alarm,confusion,fallbacks" with a header row.
void WriteCurveCsv(std::ostream &os, const std::vector<CurvePoint> &curve);

}  // namespace rolediar::eval

#endif  // ROLEDIAR_EVAL_CURVE_H_
