// Copyright 2026 The qthresh Authors
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

#ifndef QTHRESH_FORMAT_H
#define QTHRESH_FORMAT_H

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace qthresh {

/// Shortest decimal that parses back to exactly `value`.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// Strict parse of a whole token; throws std::invalid_argument on junk.
inline double parse_double(std::string_view text) {
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    return value;
}

template <typename Int>
Int parse_integer(std::string_view text) {
    Int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace qthresh

#endif
