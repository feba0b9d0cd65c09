// include/rolediar/core/error.h

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

#ifndef ROLEDIAR_CORE_ERROR_H_
#define ROLEDIAR_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace rolediar {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value passed to an operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input sequence violates a required ordering.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or record.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Training could not proceed (empty corpus, single speaker, ...).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Input that collapses to a degenerate value (e.g. a zero vector).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A model violates its invariants (e.g. non-PD within-class covariance).
class ModelError : public Error {
 public:
  using Error::Error;
};

class ScoringError : public Error {
 public:
  using Error::Error;
};

/// A role has no assigned segments, so no profile can be built.
class ProfileEstimationError : public Error {
 public:
  using Error::Error;
};

/// A pipeline mode was requested without the modality it needs.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rolediar

#endif  // ROLEDIAR_CORE_ERROR_H_
