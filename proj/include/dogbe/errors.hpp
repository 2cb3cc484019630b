// Copyright 2026 The dogbe Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dogbe {

/// Invalid argument or precondition violation (bad coordinate, sigma <= 0, ...).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// Requested object would exceed a configured size cap.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string &what) : std::runtime_error(what) {}
};

/// All Gaussian weights underflowed to zero.
class DegenerateKernelError : public DomainError {
  public:
    explicit DegenerateKernelError(const std::string &what) : DomainError(what) {}
};

}  // namespace dogbe
