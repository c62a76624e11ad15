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

#include "xqg/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "xqg/error.hpp"

namespace xqg::text {

namespace {

bool
is_space(UChar32 c) {
    return c >= 0 && u_isUWhiteSpace(c);
}

icu::UnicodeString
to_unicode(std::string_view utf8) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string
to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

}  // namespace

std::vector<std::string_view>
split_whitespace(std::string_view utf8) {
    std::vector<std::string_view> tokens;
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    int32_t start = -1;
    while (i < length) {
        const int32_t at = i;
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (is_space(c)) {
            if (start >= 0) {
                tokens.emplace_back(utf8.data() + start, static_cast<std::size_t>(at - start));
                start = -1;
            }
        } else if (start < 0) {
            start = at;
        }
    }
    if (start >= 0) {
        tokens.emplace_back(utf8.data() + start, static_cast<std::size_t>(length - start));
    }
    return tokens;
}

bool
is_blank(std::string_view utf8) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (!is_space(c)) {
            return false;
        }
    }
    return true;
}

std::string
to_lower(std::string_view utf8) {
    auto s = to_unicode(utf8);
    s.toLower(icu::Locale::getRoot());
    return to_utf8(s);
}

std::string
normalize_for_match(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(std::string("ICU NFKC normalizer unavailable: ") + u_errorName(status));
    }
    icu::UnicodeString normalized = nfkc->normalize(to_unicode(utf8), status);
    if (U_FAILURE(status)) {
        throw Error(std::string("NFKC normalization failed: ") + u_errorName(status));
    }
    normalized.toLower(icu::Locale::getRoot());

    const std::string lowered = to_utf8(normalized);
    std::string out;
    out.reserve(lowered.size());
    for (const auto token : split_whitespace(lowered)) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out.append(token);
    }
    return out;
}

bool
is_valid_utf8(std::string_view bytes) {
    const auto* data = reinterpret_cast<const uint8_t*>(bytes.data());
    const auto length = static_cast<int32_t>(bytes.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(data, i, length, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

}  // namespace xqg::text
