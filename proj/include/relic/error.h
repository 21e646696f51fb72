// Copyright 2026 The Relic Authors
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

#ifndef RELIC_ERROR_H_
#define RELIC_ERROR_H_

#include <stdexcept>
#include <string>

namespace relic {

// Broad failure category. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInput,      // malformed or inconsistent input data
  kNumerical,  // non-finite values or divergence during training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error InputError(const std::string& what) {
  return Error(ErrorKind::kInput, what);
}

inline Error NumericalError(const std::string& what) {
  return Error(ErrorKind::kNumerical, what);
}

}  // namespace relic

#endif  // RELIC_ERROR_H_
