// Copyright 2026 The ewva Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ewva {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two kets/operators live on incompatible registers.
class RegisterMismatch : public Error {
 public:
  using Error::Error;
};

class OrthogonalPostselection : public Error {
 public:
  using Error::Error;
};

class VanishingBranch : public Error {
 public:
  using Error::Error;
};

class DegenerateObservable : public Error {
 public:
  using Error::Error;
};

class DegeneratePrep : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class IncompleteBasis : public Error {
 public:
  using Error::Error;
};

class ZeroSecondMoment : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class RegimeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ewva
