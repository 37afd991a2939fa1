// SPDX-License-Identifier: Apache-2.0
#include "r3a/expr_eval.hpp"

#include <algorithm>
#include <cstdlib>

namespace r3a::vl {

namespace {

bool is_reduce_op(const std::string& op) {
    return op == "&" || op == "|" || op == "^" || op == "~&" || op == "~|" ||
           op == "~^" || op == "^~";
}

std::int64_t to_int_checked(const BitVec& v, int line) {
    if (v.has_xz()) throw EvalError(line, "x/z value where a constant is required");
    return static_cast<std::int64_t>(v.to_uint());
}

// lsb-based offset of a declared index for a select whose base is `base`.
int select_offset(const Expr& base, std::int64_t index, const EvalContext& ctx) {
    if (base.kind == Expr::Kind::Ident && ctx.range_of) {
        auto [msb, lsb] = ctx.range_of(base.name);
        if (msb >= 0 || lsb >= 0) return declared_bit_offset(msb, lsb, index);
    }
    return static_cast<int>(index);
}

}  // namespace

int declared_bit_offset(int msb, int lsb, std::int64_t index) {
    if (msb >= lsb) return static_cast<int>(index - lsb);
    return static_cast<int>(lsb - index);
}

int self_width(const Expr& e, const EvalContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return e.value.width();
        case Expr::Kind::String:
            return static_cast<int>(e.text.size()) * 8;
        case Expr::Kind::Ident:
            return ctx.width_of ? ctx.width_of(e.name) : 0;
        case Expr::Kind::Select:
            if (e.ops.size() == 2) return 1;  // bit select
            {
                // part select [msb:lsb] requires constant bounds
                BitVec msb = eval_expr(*e.ops[1], ctx);
                BitVec lsb = eval_expr(*e.ops[2], ctx);
                std::int64_t m = to_int_checked(msb, e.line);
                std::int64_t l = to_int_checked(lsb, e.line);
                return static_cast<int>(m >= l ? m - l + 1 : l - m + 1);
            }
        case Expr::Kind::IndexPart: {
            BitVec w = eval_expr(*e.ops[2], ctx);
            return static_cast<int>(to_int_checked(w, e.line));
        }
        case Expr::Kind::Concat: {
            int total = 0;
            for (const auto& p : e.ops) total += self_width(*p, ctx);
            return total;
        }
        case Expr::Kind::Replicate: {
            BitVec n = eval_expr(*e.ops[0], ctx);
            int total = 0;
            for (std::size_t i = 1; i < e.ops.size(); ++i) total += self_width(*e.ops[i], ctx);
            return static_cast<int>(to_int_checked(n, e.line)) * total;
        }
        case Expr::Kind::Unary:
            if (e.op == "!" || is_reduce_op(e.op)) return 1;
            return self_width(*e.ops[0], ctx);
        case Expr::Kind::Binary: {
            const std::string& op = e.op;
            if (op == "&&" || op == "||" || op == "==" || op == "!=" || op == "===" ||
                op == "!==" || op == "<" || op == "<=" || op == ">" || op == ">=")
                return 1;
            if (op == "<<" || op == ">>" || op == "<<<" || op == ">>>" || op == "**")
                return self_width(*e.ops[0], ctx);
            return std::max(self_width(*e.ops[0], ctx), self_width(*e.ops[1], ctx));
        }
        case Expr::Kind::Ternary:
            return std::max(self_width(*e.ops[1], ctx), self_width(*e.ops[2], ctx));
        case Expr::Kind::Call:
            if (e.name == "$time") return 64;
            if (e.name == "$signed" || e.name == "$unsigned")
                return e.ops.empty() ? 0 : self_width(*e.ops[0], ctx);
            return 32;
    }
    return 0;
}

BitVec eval_expr(const Expr& e, const EvalContext& ctx, int ctx_width) {
    int self = self_width(e, ctx);
    int w = std::max(self, ctx_width);
    switch (e.kind) {
        case Expr::Kind::Number:
            return w > e.value.width() ? e.value.resized(w) : e.value;
        case Expr::Kind::String: {
            BitVec v(std::max(w, static_cast<int>(e.text.size()) * 8));
            int pos = 0;
            for (auto it = e.text.rbegin(); it != e.text.rend(); ++it) {
                for (int b = 0; b < 8; ++b)
                    v.set_bit(pos + b, ((*it >> b) & 1) ? '1' : '0');
                pos += 8;
            }
            return v;
        }
        case Expr::Kind::Ident: {
            const BitVec* v = ctx.lookup ? ctx.lookup(e.name) : nullptr;
            if (!v) throw EvalError(e.line, "unknown identifier '" + e.name + "'");
            return w > v->width() ? v->resized(w) : *v;
        }
        case Expr::Kind::Select: {
            BitVec base = eval_expr(*e.ops[0], ctx);
            if (e.ops.size() == 2) {
                BitVec idx = eval_expr(*e.ops[1], ctx);
                BitVec out(1, /*fill_x=*/true);
                if (!idx.has_xz()) {
                    int offset = select_offset(*e.ops[0],
                                               static_cast<std::int64_t>(idx.to_uint()), ctx);
                    out = base.slice(offset, 1);
                }
                return w > 1 ? out.resized(w) : out;
            }
            BitVec msb = eval_expr(*e.ops[1], ctx), lsb = eval_expr(*e.ops[2], ctx);
            std::int64_t m = to_int_checked(msb, e.line), l = to_int_checked(lsb, e.line);
            int off_m = select_offset(*e.ops[0], m, ctx);
            int off_l = select_offset(*e.ops[0], l, ctx);
            int lo = std::min(off_m, off_l);
            int count = std::abs(off_m - off_l) + 1;
            BitVec out = base.slice(lo, count);
            return w > count ? out.resized(w) : out;
        }
        case Expr::Kind::IndexPart: {
            BitVec base = eval_expr(*e.ops[0], ctx);
            BitVec start = eval_expr(*e.ops[1], ctx);
            BitVec width_v = eval_expr(*e.ops[2], ctx);
            int count = static_cast<int>(to_int_checked(width_v, e.line));
            if (start.has_xz()) return BitVec(count, /*fill_x=*/true);
            std::int64_t s = static_cast<std::int64_t>(start.to_uint());
            std::int64_t lo_idx = e.op == "+:" ? s : s - count + 1;
            int lo = select_offset(*e.ops[0], lo_idx, ctx);
            BitVec out = base.slice(lo, count);
            return w > count ? out.resized(w) : out;
        }
        case Expr::Kind::Concat: {
            std::vector<BitVec> parts;
            for (const auto& p : e.ops) parts.push_back(eval_expr(*p, ctx));
            BitVec out = concat(parts);
            return w > out.width() ? out.resized(w) : out;
        }
        case Expr::Kind::Replicate: {
            BitVec n = eval_expr(*e.ops[0], ctx);
            std::int64_t count = to_int_checked(n, e.line);
            std::vector<BitVec> inner;
            for (std::size_t i = 1; i < e.ops.size(); ++i)
                inner.push_back(eval_expr(*e.ops[i], ctx));
            BitVec once = concat(inner);
            std::vector<BitVec> reps(static_cast<std::size_t>(count), once);
            BitVec out = concat(reps);
            return w > out.width() ? out.resized(w) : out;
        }
        case Expr::Kind::Unary: {
            if (e.op == "!") {
                BitVec v = eval_expr(*e.ops[0], ctx);
                return from_truth(logic_not(v.truth())).resized(std::max(w, 1));
            }
            if (is_reduce_op(e.op)) {
                BitVec v = eval_expr(*e.ops[0], ctx);
                char op = e.op.back() == '&' ? '&' : e.op.back() == '|' ? '|' : '^';
                // for ~^ / ^~ the op char is '^' or '~' — normalize
                if (e.op == "~^" || e.op == "^~") op = '^';
                char r = reduce(op, v);
                if (e.op[0] == '~') r = logic_not(r);
                return from_truth(r).resized(std::max(w, 1));
            }
            BitVec v = eval_expr(*e.ops[0], ctx, w);
            if (e.op == "~") return bit_not(v);
            if (e.op == "+") return v;
            if (e.op == "-") return negate(v, std::max(w, v.width()));
            throw EvalError(e.line, "unsupported unary operator " + e.op);
        }
        case Expr::Kind::Binary: {
            const std::string& op = e.op;
            if (op == "&&" || op == "||") {
                char a = eval_expr(*e.ops[0], ctx).truth();
                char b = eval_expr(*e.ops[1], ctx).truth();
                char r = op == "&&" ? logic_and(a, b) : logic_or(a, b);
                return from_truth(r).resized(std::max(w, 1));
            }
            if (op == "==" || op == "!=") {
                int ow = std::max(self_width(*e.ops[0], ctx), self_width(*e.ops[1], ctx));
                char r = logic_eq(eval_expr(*e.ops[0], ctx, ow), eval_expr(*e.ops[1], ctx, ow));
                if (op == "!=") r = logic_not(r);
                return from_truth(r).resized(std::max(w, 1));
            }
            if (op == "===" || op == "!==") {
                int ow = std::max(self_width(*e.ops[0], ctx), self_width(*e.ops[1], ctx));
                bool same = eval_expr(*e.ops[0], ctx, ow)
                                .identical(eval_expr(*e.ops[1], ctx, ow));
                if (op == "!==") same = !same;
                return from_truth(same ? '1' : '0').resized(std::max(w, 1));
            }
            if (op == "<" || op == "<=" || op == ">" || op == ">=") {
                int ow = std::max(self_width(*e.ops[0], ctx), self_width(*e.ops[1], ctx));
                char r = logic_rel(op, eval_expr(*e.ops[0], ctx, ow),
                                   eval_expr(*e.ops[1], ctx, ow));
                return from_truth(r).resized(std::max(w, 1));
            }
            if (op == "<<" || op == "<<<")
                return shift_left(eval_expr(*e.ops[0], ctx, w), eval_expr(*e.ops[1], ctx),
                                  std::max(w, 1));
            if (op == ">>" || op == ">>>")
                return shift_right(eval_expr(*e.ops[0], ctx, w), eval_expr(*e.ops[1], ctx),
                                   std::max(w, 1));
            if (op == "**")
                return arith('p', eval_expr(*e.ops[0], ctx, w), eval_expr(*e.ops[1], ctx),
                             std::max(w, 1));
            char c;
            if (op == "+") c = '+';
            else if (op == "-") c = '-';
            else if (op == "*") c = '*';
            else if (op == "/") c = '/';
            else if (op == "%") c = '%';
            else if (op == "&") c = '&';
            else if (op == "|") c = '|';
            else if (op == "^") c = '^';
            else if (op == "~^" || op == "^~") c = 'n';
            else throw EvalError(e.line, "unsupported binary operator " + op);
            BitVec l = eval_expr(*e.ops[0], ctx, w), r = eval_expr(*e.ops[1], ctx, w);
            if (c == '&' || c == '|' || c == '^' || c == 'n') return bitwise(c, l, r);
            return arith(c, l, r, std::max(w, 1));
        }
        case Expr::Kind::Ternary: {
            char cond = eval_expr(*e.ops[0], ctx).truth();
            if (cond == '1') return eval_expr(*e.ops[1], ctx, w);
            if (cond == '0') return eval_expr(*e.ops[2], ctx, w);
            return merge_unknown(eval_expr(*e.ops[1], ctx, w), eval_expr(*e.ops[2], ctx, w));
        }
        case Expr::Kind::Call: {
            if (e.name == "$signed" || e.name == "$unsigned")
                return eval_expr(*e.ops[0], ctx, w);
            if (!ctx.call) throw EvalError(e.line, "cannot evaluate call to " + e.name);
            std::vector<BitVec> args;
            for (const auto& a : e.ops) args.push_back(eval_expr(*a, ctx));
            BitVec out = ctx.call(e.name, args, e.line);
            return w > out.width() ? out.resized(w) : out;
        }
    }
    throw EvalError(e.line, "unreachable expression kind");
}

std::optional<BitVec> const_eval(const Expr& e, const std::map<std::string, BitVec>& params) {
    EvalContext ctx;
    ctx.lookup = [&](const std::string& name) -> const BitVec* {
        auto it = params.find(name);
        return it == params.end() ? nullptr : &it->second;
    };
    ctx.width_of = [&](const std::string& name) {
        auto it = params.find(name);
        return it == params.end() ? 0 : it->second.width();
    };
    ctx.call = [](const std::string& name, const std::vector<BitVec>& args, int line) -> BitVec {
        if (name == "$clog2" && args.size() == 1) {
            std::uint64_t v = args[0].to_uint();
            int bits = 0;
            while ((1ull << bits) < v) ++bits;
            return BitVec::from_uint(32, static_cast<std::uint64_t>(bits));
        }
        throw EvalError(line, "non-constant call " + name);
    };
    try {
        return eval_expr(e, ctx);
    } catch (const EvalError&) {
        return std::nullopt;
    }
}

std::optional<std::int64_t> const_eval_int(const Expr& e,
                                           const std::map<std::string, BitVec>& params) {
    auto v = const_eval(e, params);
    if (!v || v->has_xz()) return std::nullopt;
    return static_cast<std::int64_t>(v->to_uint());
}

}  // namespace r3a::vl
