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

#include "xqg/binary.hpp"

#include <cmath>

#include "xqg/text.hpp"

namespace xqg::binary {

namespace {

template <typename T>
void
put_le(std::ostream& out, T v) {
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
    }
    out.write(buf, sizeof(T));
}

}  // namespace

void
Writer::bytes(std::string_view b) {
    out_.write(b.data(), static_cast<std::streamsize>(b.size()));
}

void
Writer::u16(std::uint16_t v) {
    put_le(out_, v);
}

void
Writer::u32(std::uint32_t v) {
    put_le(out_, v);
}

void
Writer::u64(std::uint64_t v) {
    put_le(out_, v);
}

void
Writer::record(std::string_view id, std::span<const float> values) {
    if (id.size() > 0xffffU) {
        throw FormatError("embedding id longer than 65535 bytes: '" + std::string(id.substr(0, 64)) + "...'");
    }
    u16(static_cast<std::uint16_t>(id.size()));
    bytes(id);
    for (const float v : values) {
        f32(v);
    }
}

void
Reader::fail(const std::string& message) const {
    throw FormatError(source_ + ": " + message);
}

std::string
Reader::bytes(std::size_t n, const char* what) {
    std::string out(n, '\0');
    in_.read(out.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
        fail(std::string("truncated file while reading ") + what);
    }
    return out;
}

namespace {

template <typename T>
T
get_le(const std::string& b) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(static_cast<T>(static_cast<unsigned char>(b[i])) << (8 * i));
    }
    return v;
}

}  // namespace

std::uint16_t
Reader::u16(const char* what) {
    return get_le<std::uint16_t>(bytes(2, what));
}

std::uint32_t
Reader::u32(const char* what) {
    return get_le<std::uint32_t>(bytes(4, what));
}

std::uint64_t
Reader::u64(const char* what) {
    return get_le<std::uint64_t>(bytes(8, what));
}

Reader::Record
Reader::record(std::size_t dim) {
    Record r;
    const std::uint16_t id_len = u16("record id length");
    if (id_len == 0) {
        fail("record with empty id");
    }
    r.id = bytes(id_len, "record id");
    if (!text::is_valid_utf8(r.id)) {
        fail("record id is not valid UTF-8");
    }
    const std::string raw = bytes(dim * 4, "record values");
    r.values.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint32_t bits = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(raw[4 * i + b])) << (8 * b);
        }
        r.values[i] = std::bit_cast<float>(bits);
        if (!std::isfinite(r.values[i])) {
            fail("non-finite component " + std::to_string(i) + " in record '" + r.id + "'");
        }
    }
    return r;
}

void
Reader::expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) {
        fail("trailing data after the last record");
    }
}

}  // namespace xqg::binary
