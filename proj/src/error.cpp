// Copyright 2026 The fcqst Authors
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

#include "fcqst/error.hpp"

namespace fcqst {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidSize: return "invalid-size";
        case ErrorKind::SizeLimit: return "size-limit";
        case ErrorKind::NotSymmetric: return "not-symmetric";
        case ErrorKind::ContractViolation: return "contract-violation";
        case ErrorKind::ConstraintViolation: return "constraint-violation";
        case ErrorKind::UnsupportedCase: return "unsupported-case";
        case ErrorKind::UnsupportedBasis: return "unsupported-basis";
        case ErrorKind::DomainError: return "domain-error";
    }
    return "unknown";
}

}  // namespace fcqst
