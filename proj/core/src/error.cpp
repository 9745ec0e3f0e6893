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

#include "pulsegraph/error.hpp"

namespace pulsegraph {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DanglingRef: return "DanglingRef";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::MixedDuration: return "MixedDuration";
    case ErrorCode::UnboundVar: return "UnboundVar";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NoOpenContext: return "NoOpenContext";
    case ErrorCode::DuplicateChannelInParallel: return "DuplicateChannelInParallel";
    case ErrorCode::UnbalancedClose: return "UnbalancedClose";
    case ErrorCode::UnknownChannel: return "UnknownChannel";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::FrequencyOutOfRange: return "FrequencyOutOfRange";
    case ErrorCode::AmplitudeOutOfRange: return "AmplitudeOutOfRange";
    case ErrorCode::TooManySteps: return "TooManySteps";
    case ErrorCode::MultiParamModulation: return "MultiParamModulation";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::ChannelIndexOutOfRange: return "ChannelIndexOutOfRange";
    case ErrorCode::UnmappedChannel: return "UnmappedChannel";
    case ErrorCode::MixedChannel: return "MixedChannel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKind: return "UnknownKind";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message),
      code_(code),
      detail_(message),
      what_(std::string(error_code_name(code)) + ": " + message) {}

void Error::add_context(const std::string& context) {
  detail_ = context + ": " + detail_;
  what_ = std::string(error_code_name(code_)) + ": " + detail_;
}

namespace {

std::string no_match_message(const std::string& kind,
                             const std::vector<std::string>& rules) {
  std::string msg = "no rule matched root of kind " + kind + " (tried: ";
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i != 0) msg += ", ";
    msg += rules[i];
  }
  msg += ")";
  return msg;
}

}  // namespace

NoMatchError::NoMatchError(std::string root_kind,
                           std::vector<std::string> tried_rules)
    : Error(ErrorCode::NoMatch, no_match_message(root_kind, tried_rules)),
      root_kind_(std::move(root_kind)),
      tried_rules_(std::move(tried_rules)) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pulsegraph
