// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace r3a {

// Inclusive line range inside one file. Lines are 1-based.
struct SourceSpan {
    std::string file;
    int first_line = 0;
    int last_line = 0;

    bool contains(const SourceSpan& other) const {
        return file == other.file && first_line <= other.first_line &&
               other.last_line <= last_line;
    }
    bool contains_line(int line) const { return first_line <= line && line <= last_line; }
    int line_count() const { return last_line - first_line + 1; }
    bool operator==(const SourceSpan&) const = default;
};

struct SyntaxError : std::runtime_error {
    std::string path;
    int line;
    SyntaxError(std::string p, int l, const std::string& msg)
        : std::runtime_error(p + ":" + std::to_string(l) + ": " + msg),
          path(std::move(p)), line(l) {}
};

struct UnsupportedConstruct : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- small text helpers -------------------------------------------------

std::vector<std::string> split_lines(std::string_view text);
std::string join_lines(const std::vector<std::string>& lines);
std::string trim(std::string_view s);
bool contains_ci(std::string_view haystack, std::string_view needle);
std::string to_lower(std::string_view s);

// Count non-overlapping occurrences of `needle` in `haystack`.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

// FNV-1a over bytes; stable content id for snapshot blobs.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace r3a
