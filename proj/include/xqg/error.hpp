// Copyright (C) 2026 The xqg Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace xqg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A value violated a type invariant. `field()` names the offending field.
class ValidationError : public Error {
 public:
    ValidationError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {
    }

    const std::string&
    field() const noexcept {
        return field_;
    }

 private:
    std::string field_;
};

/// Malformed or unreadable on-disk artifact.
class FormatError : public Error {
 public:
    using Error::Error;
};

/// Lookup of an id that is not present.
class NotFoundError : public Error {
 public:
    NotFoundError(const std::string& what, std::string id) : Error(what + " not found: '" + id + "'"), id_(std::move(id)) {
    }

    const std::string&
    id() const noexcept {
        return id_;
    }

 private:
    std::string id_;
};

/// Two vectors that must agree in dimension do not.
class DimensionMismatch : public Error {
 public:
    using Error::Error;
};

}  // namespace xqg
