// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "r3a/ast.hpp"

namespace r3a::vl {

struct EvalError : std::runtime_error {
    int line;
    EvalError(int l, const std::string& msg)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ")"), line(l) {}
};

// Name resolution for expression evaluation. `lookup` returns the current
// value of an identifier or nullptr when unknown; `width_of` returns the
// declared width or 0 when unknown; `call` handles function invocations
// ($time and friends come from the simulator).
struct EvalContext {
    std::function<const BitVec*(const std::string&)> lookup;
    std::function<int(const std::string&)> width_of;
    // Declared [msb:lsb] of an identifier; {-1,-1} means assume [w-1:0].
    std::function<std::pair<int, int>(const std::string&)> range_of;
    std::function<BitVec(const std::string&, const std::vector<BitVec>&, int line)> call;
};

// Maps a declared bit index to the lsb-based offset given [msb:lsb].
int declared_bit_offset(int msb, int lsb, std::int64_t index);

// Self-determined width per the usual expression rules; 0 when indeterminate.
int self_width(const Expr& e, const EvalContext& ctx);

// Evaluates with operand widths extended to max(self, ctx_width).
// ctx_width 0 means self-determined context.
BitVec eval_expr(const Expr& e, const EvalContext& ctx, int ctx_width = 0);

// Constant evaluation against a parameter table only; nullopt when the
// expression references anything outside `params`.
std::optional<BitVec> const_eval(const Expr& e,
                                 const std::map<std::string, BitVec>& params);
std::optional<std::int64_t> const_eval_int(const Expr& e,
                                           const std::map<std::string, BitVec>& params);

}  // namespace r3a::vl
