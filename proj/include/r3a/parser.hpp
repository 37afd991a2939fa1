// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "r3a/ast.hpp"

namespace r3a::vl {

// Parses the supported Verilog subset. Constructs that are legal but outside
// the subset (functions, tasks, generate, specify, ...) become Opaque items
// with correct spans. Malformed input throws SyntaxError.
SourceAST parse_source(const std::vector<std::pair<std::string, std::string>>& files);
FileAST parse_file(const std::string& path, const std::string& text);

struct SemanticDiag {
    std::string file;
    int line = 0;
    std::string message;
    bool error = true;
};

// Structural checks the parser itself does not enforce: undeclared
// identifiers, duplicate declarations, bad instance port lists.
std::vector<SemanticDiag> check_semantics(const SourceAST& ast);

}  // namespace r3a::vl
