/*
   Copyright 2026 The fibercount authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace fibercount {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (polynomial specs, CLI arguments).
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

/// A documented precondition of an operation does not hold.
struct precondition_error : error {
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

/// A run was refused because a hypothesis of the counting argument fails;
/// the requested computation would carry no guarantee. Maps to CLI exit code 2.
struct hypothesis_error : error {
    explicit hypothesis_error(const std::string& msg) : error(msg) {}
};

/// An internal certified identity failed to re-validate. Always a bug.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace fibercount
