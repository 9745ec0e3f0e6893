// Copyright 2026 The pulsegraph Authors
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
#include <string_view>
#include <vector>

namespace pulsegraph {

enum class ErrorCode {
  // graph construction and validation
  DanglingRef,
  CycleDetected,
  BadArity,
  NegativeDuration,
  MixedDuration,
  UnboundVar,
  OutOfRange,
  InvalidArgument,
  // transform passes
  EmptyResult,
  UnknownVariable,
  // schedule construction
  NoOpenContext,
  DuplicateChannelInParallel,
  UnbalancedClose,
  UnknownChannel,
  // munching and device backends
  NoMatch,
  FrequencyOutOfRange,
  AmplitudeOutOfRange,
  TooManySteps,
  MultiParamModulation,
  ArityError,
  ChannelIndexOutOfRange,
  UnmappedChannel,
  // simulation
  MixedChannel,
  LengthMismatch,
  // serialization
  ParseError,
  UnknownKind,
};

std::string_view error_code_name(ErrorCode code);

/// Base exception for every failure raised by the library. The code
/// identifies the failure class; the message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const char* what() const noexcept override { return what_.c_str(); }
  const std::string& detail() const noexcept { return detail_; }

  /// Prefixes the detail message, e.g. with the channel being transpiled.
  void add_context(const std::string& context);

 private:
  ErrorCode code_;
  std::string detail_;
  std::string what_;
};

/// Raised when a muncher exhausts its rules without a structural match.
class NoMatchError : public Error {
 public:
  NoMatchError(std::string root_kind, std::vector<std::string> tried_rules);

  const std::string& root_kind() const noexcept { return root_kind_; }
  const std::vector<std::string>& tried_rules() const noexcept {
    return tried_rules_;
  }

 private:
  std::string root_kind_;
  std::vector<std::string> tried_rules_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace pulsegraph
