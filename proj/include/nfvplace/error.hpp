// Copyright 2026 The nfvplace Authors
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

#ifndef NFVPLACE_ERROR_HPP
#define NFVPLACE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nfvplace {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kValidation,
  kIo,
  kOutOfRange,
  kNoFeasiblePlan,
  kInfeasibleDomain,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure the library reports is an Error; code() tells the C API
/// which status to hand back.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nfvplace

#endif  // NFVPLACE_ERROR_HPP
