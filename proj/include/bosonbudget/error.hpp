// Copyright 2026 The bosonbudget Authors
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
#include <string_view>

namespace bosonbudget {

enum class ErrorKind {
    Usage,       // malformed configuration or arguments
    Dimension,   // shape mismatch between matrices / vectors
    Domain,      // value outside the mathematical domain of an operation
    Resource,    // problem size above a configured cap or memory budget
    Numeric,     // non-finite values, quadrature failure
    Arithmetic,  // integer overflow
};

std::string_view to_string(ErrorKind kind);

/// Base of every error the library throws. The kind decides the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error(ErrorKind::Usage, m) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& m) : Error(ErrorKind::Dimension, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorKind::Domain, m) {}
};
struct ResourceError : Error {
    explicit ResourceError(const std::string& m) : Error(ErrorKind::Resource, m) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& m) : Error(ErrorKind::Numeric, m) {}
};
struct ArithmeticError : Error {
    explicit ArithmeticError(const std::string& m) : Error(ErrorKind::Arithmetic, m) {}
};

}  // namespace bosonbudget
