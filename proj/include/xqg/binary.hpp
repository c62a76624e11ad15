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

// Little-endian primitives shared by the embedding and index file codecs.

#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "xqg/core.hpp"

namespace xqg::binary {

class Writer {
 public:
    explicit Writer(std::ostream& out) : out_(out) {
    }

    void
    bytes(std::string_view b);
    void
    u16(std::uint16_t v);
    void
    u32(std::uint32_t v);
    void
    u64(std::uint64_t v);
    void
    f32(float v) {
        u32(std::bit_cast<std::uint32_t>(v));
    }

    /// {id_len: u16, id bytes, values: dim x f32}.
    void
    record(std::string_view id, std::span<const float> values);

 private:
    std::ostream& out_;
};

/// Reads from a stream, raising FormatError("<source>: truncated ...") on short reads.
class Reader {
 public:
    Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {
    }

    std::string
    bytes(std::size_t n, const char* what);
    std::uint16_t
    u16(const char* what);
    std::uint32_t
    u32(const char* what);
    std::uint64_t
    u64(const char* what);
    float
    f32(const char* what) {
        return std::bit_cast<float>(u32(what));
    }

    struct Record {
        std::string id;
        std::vector<float> values;
    };

    /// Validates that the id is non-empty UTF-8 and every component finite.
    Record
    record(std::size_t dim);

    /// Throws unless the stream is exhausted.
    void
    expect_end();

    [[noreturn]] void
    fail(const std::string& message) const;

    const std::string&
    source() const noexcept {
        return source_;
    }

 private:
    std::istream& in_;
    std::string source_;
};

}  // namespace xqg::binary
