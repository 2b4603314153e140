// Copyright 2026 The dqlab Authors.
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

#ifndef DQLAB_CORE_ERROR_H_
#define DQLAB_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace dqlab {

// Error categories. The C API maps each one onto a dqlab_status value.
enum class ErrorCode {
  kInvalidInput,
  kInvalidConfig,
  kDomain,
  kNumeric,
  kShape,
  kPrecondition,
  kParse,
  kDegenerate,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void check(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace dqlab

#endif  // DQLAB_CORE_ERROR_H_
