// SPDX-License-Identifier: Apache-2.0
//
// deism: room transfer functions between directional transducers
// Copyright (C) 2026 The deism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef DEISM_ERROR_HPP
#define DEISM_ERROR_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deism
{
    // Base class of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the mathematical domain of an operation (|m| > n, zero vector, ...).
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Evaluation at a singular point, e.g. a Hankel function at x = 0 or a zero-length path.
    class SingularityError : public Error
    {
    public:
        using Error::Error;
    };

    // Invalid or inconsistent configuration (grid mismatch, overlapping spheres, bad pose, ...).
    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    // Ill-conditioned linear algebra or Hankel division.
    class ConditioningError : public Error
    {
    public:
        ConditioningError(const std::string &what, double condition_number)
            : Error(what), condition_number_(condition_number) {}
        double condition_number() const noexcept { return condition_number_; }

    private:
        double condition_number_;
    };

    // A table or buffer would exceed the configured memory budget.
    class ResourceError : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed input text. line() is 1-based, 0 when unknown.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &what, std::size_t line)
            : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };

    // Non-fatal diagnostics (ill-conditioned fits, evaluation inside the transparent sphere).
    // The default handler writes to stderr; tests install their own.
    using WarningHandler = std::function<void(std::string_view)>;
    WarningHandler set_warning_handler(WarningHandler handler);
    void warn(std::string_view message);
}

#endif
