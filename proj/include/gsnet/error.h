// Copyright 2026 The gsnet Authors.
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

#ifndef GSNET_ERROR_H_
#define GSNET_ERROR_H_

#include <stdexcept>
#include <string>

namespace gsnet {

enum class ErrorKind {
  kValidation,      // bad input, dimension mismatch, broken invariant
  kNonConvergence,  // iterative method stopped before tolerance
  kLimitsExceeded,  // explicit size/depth caps
};

// Exception thrown by every module. Carries the module name and the
// offending field so the CLI can emit a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string field,
        const std::string& message)
      : std::runtime_error(message),
        kind_(kind),
        module_(std::move(module)),
        field_(std::move(field)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& module() const { return module_; }
  const std::string& field() const { return field_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string field_;
};

inline Error ValidationError(std::string module, std::string field,
                             const std::string& message) {
  return Error(ErrorKind::kValidation, std::move(module), std::move(field),
               message);
}

}  // namespace gsnet

#endif  // GSNET_ERROR_H_
