// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "r3a/common.hpp"

namespace r3a::vl {

struct Token {
    enum class Kind { Ident, Number, String, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;

    bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(Kind::Punct, t); }
    bool is_ident(std::string_view t) const { return is(Kind::Ident, t); }
};

// Tokenizes one Verilog source file. Comments and attributes are skipped;
// parameterless `define macros are substituted; other compiler directives
// are consumed without effect.
std::vector<Token> tokenize(const std::string& path, std::string_view text);

}  // namespace r3a::vl
