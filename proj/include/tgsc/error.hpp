// Copyright 2026 The TGSC Authors.
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

namespace tgsc {

// Each code maps to a distinct CLI exit status.
enum class ErrorCode {
  kInvalidArgument = 2,
  kParse = 3,
  kGraphletAbsent = 4,
  kNonConvergence = 5,
  kDegenerateCut = 6,
  kUndefinedMeasure = 7,
  kGuardExceeded = 8,
  kIo = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : Error(ErrorCode::kNonConvergence, what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace tgsc
