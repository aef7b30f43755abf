// Copyright 2026 The uqclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace uqclone {

/// Unknown, duplicated or overlapping qubit labels.
class LabelError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Operands live on spaces of different dimension.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The preparation-angle search did not reach its residual tolerance.
class SolverError : public std::runtime_error {
   public:
    SolverError(const std::string &what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

   private:
    double best_residual_;
};

/// Tomographic reconstruction had no counts to work with.
class ReconstructionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A photon state lost norm where a lossless state was required.
class LossyTrainError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An optical train does not implement the circuit it was compiled from.
class EquivalenceError : public std::runtime_error {
   public:
    EquivalenceError(const std::string &what, double max_deviation)
        : std::runtime_error(what), max_deviation_(max_deviation) {}

    double max_deviation() const noexcept { return max_deviation_; }

   private:
    double max_deviation_;
};

/// Invalid sweep or command-line configuration.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace uqclone
