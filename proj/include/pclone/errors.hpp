// Copyright 2026 The pclone Authors
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

namespace pclone {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Prescribed inputs and outputs of a partial map have different Gram matrices.
class InfeasibleMapError : public Error {
 public:
  using Error::Error;
};

// Prescribed inputs of a partial map are (numerically) linearly dependent.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// The average-rate bound has a vanishing denominator.
class SingularBoundError : public Error {
 public:
  using Error::Error;
};

// Closed forms are only established for equal priors in the weak-gap regime.
class UnsupportedPriorsError : public Error {
 public:
  using Error::Error;
};

// Requested success rates violate the two-state feasibility condition.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// A quantity that feasibility guarantees to be in range was not.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Reading or writing a report or config file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pclone
