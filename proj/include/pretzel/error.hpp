// Copyright 2026 The pretzel-surgeon Authors
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

#ifndef PRETZEL_ERROR_HPP_
#define PRETZEL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pretzel {

// Error categories shared by every module. The C API maps these one-to-one
// onto its status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kInfeasible = 2,
  kNotConverged = 3,
  kIo = 4,
  kParse = 5,
  kPartialData = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidArgument, message);
}

}  // namespace pretzel

#endif  // PRETZEL_ERROR_HPP_
