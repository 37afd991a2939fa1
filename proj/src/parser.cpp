// SPDX-License-Identifier: Apache-2.0
#include "r3a/parser.hpp"

#include <algorithm>
#include <set>

#include "r3a/lexer.hpp"

namespace r3a::vl {

namespace {

const std::set<std::string> kNetKeywords = {
    "wire", "tri", "tri0", "tri1", "wand", "wor", "supply0", "supply1"};
const std::set<std::string> kIntLikeKeywords = {"integer", "time", "real", "realtime"};

struct OpaqueEnd {
    const char* open;
    const char* close;  // nullptr: statement-like, skip to ';'
};
const OpaqueEnd kOpaqueKinds[] = {
    {"function", "endfunction"}, {"task", "endtask"},     {"generate", "endgenerate"},
    {"specify", "endspecify"},   {"primitive", "endprimitive"},
    {"defparam", nullptr},       {"event", nullptr},      {"genvar", nullptr},
};

struct Parser {
    std::string path;
    std::vector<Token> toks;
    std::size_t pos = 0;
    int last_line = 1;

    const Token& peek(std::size_t off = 0) const {
        std::size_t i = pos + off;
        return i < toks.size() ? toks[i] : toks.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != Token::Kind::End) ++pos;
        last_line = t.line;
        return t;
    }
    bool accept_punct(std::string_view p) {
        if (peek().is_punct(p)) { next(); return true; }
        return false;
    }
    bool accept_kw(std::string_view k) {
        if (peek().is_ident(k)) { next(); return true; }
        return false;
    }
    void expect_punct(std::string_view p) {
        if (!accept_punct(p)) fail("expected '" + std::string(p) + "'");
    }
    std::string expect_ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected identifier");
        return next().text;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of file" : "'" + t.text + "'";
        throw SyntaxError(path, t.line == 0 ? last_line : t.line, msg + ", got " + got);
    }

    // --- expressions ------------------------------------------------------

    ExprPtr make(Expr::Kind k, int line) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->line = line;
        return e;
    }

    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(0);
        if (!accept_punct("?")) return cond;
        auto e = make(Expr::Kind::Ternary, cond->line);
        ExprPtr t = parse_expr();
        expect_punct(":");
        ExprPtr f = parse_expr();
        e->ops.push_back(std::move(cond));
        e->ops.push_back(std::move(t));
        e->ops.push_back(std::move(f));
        return e;
    }

    // binary levels, loosest first
    static const std::vector<std::vector<std::string>>& levels() {
        static const std::vector<std::vector<std::string>> lv = {
            {"||"},
            {"&&"},
            {"|"},
            {"^", "^~", "~^"},
            {"&"},
            {"==", "!=", "===", "!=="},
            {"<", "<=", ">", ">="},
            {"<<", ">>", "<<<", ">>>"},
            {"+", "-"},
            {"*", "/", "%"},
            {"**"},
        };
        return lv;
    }

    ExprPtr parse_binary(std::size_t level) {
        if (level >= levels().size()) return parse_unary();
        ExprPtr lhs = parse_binary(level + 1);
        while (true) {
            bool matched = false;
            for (const auto& op : levels()[level]) {
                if (peek().is_punct(op)) {
                    int line = next().line;
                    ExprPtr rhs = parse_binary(level + 1);
                    auto e = make(Expr::Kind::Binary, line);
                    e->op = op;
                    e->ops.push_back(std::move(lhs));
                    e->ops.push_back(std::move(rhs));
                    lhs = std::move(e);
                    matched = true;
                    break;
                }
            }
            if (!matched) return lhs;
        }
    }

    ExprPtr parse_unary() {
        static const char* unary_ops[] = {"!", "~", "&", "|", "^", "~&", "~|", "~^", "^~", "+", "-"};
        for (const char* op : unary_ops) {
            if (peek().is_punct(op)) {
                // '~&' etc. lex as '~' '&'; combine here
                int line = peek().line;
                std::string o = next().text;
                if (o == "~" && (peek().is_punct("&") || peek().is_punct("|") || peek().is_punct("^")))
                    o += next().text;
                auto e = make(Expr::Kind::Unary, line);
                e->op = o;
                e->ops.push_back(parse_unary());
                return e;
            }
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        int line = t.line;
        if (t.kind == Token::Kind::Number) {
            auto e = make(Expr::Kind::Number, line);
            e->text = next().text;
            try {
                e->value = BitVec::from_literal(e->text);
            } catch (const std::invalid_argument& ex) {
                throw SyntaxError(path, line, ex.what());
            }
            return e;
        }
        if (t.kind == Token::Kind::String) {
            auto e = make(Expr::Kind::String, line);
            e->text = next().text;
            return e;
        }
        if (t.is_punct("(")) {
            next();
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (t.is_punct("{")) {
            next();
            ExprPtr first = parse_expr();
            if (peek().is_punct("{")) {
                // replication {N{a, b}}
                next();
                auto e = make(Expr::Kind::Replicate, line);
                e->ops.push_back(std::move(first));
                e->ops.push_back(parse_expr());
                while (accept_punct(",")) e->ops.push_back(parse_expr());
                expect_punct("}");
                expect_punct("}");
                return e;
            }
            auto e = make(Expr::Kind::Concat, line);
            e->ops.push_back(std::move(first));
            while (accept_punct(",")) e->ops.push_back(parse_expr());
            expect_punct("}");
            return e;
        }
        if (t.is_punct("$")) {
            next();
            auto e = make(Expr::Kind::Call, line);
            e->name = "$" + expect_ident();
            if (accept_punct("(")) {
                if (!peek().is_punct(")")) {
                    e->ops.push_back(parse_expr());
                    while (accept_punct(",")) e->ops.push_back(parse_expr());
                }
                expect_punct(")");
            }
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            std::string name = next().text;
            while (accept_punct(".")) name += "." + expect_ident();
            if (peek().is_punct("(")) {
                next();
                auto e = make(Expr::Kind::Call, line);
                e->name = name;
                if (!peek().is_punct(")")) {
                    e->ops.push_back(parse_expr());
                    while (accept_punct(",")) e->ops.push_back(parse_expr());
                }
                expect_punct(")");
                return e;
            }
            auto base = make(Expr::Kind::Ident, line);
            base->name = name;
            return parse_selects(std::move(base));
        }
        fail("expected expression");
    }

    ExprPtr parse_selects(ExprPtr base) {
        while (peek().is_punct("[")) {
            int line = next().line;
            ExprPtr first = parse_expr();
            if (accept_punct(":")) {
                auto e = make(Expr::Kind::Select, line);
                e->ops.push_back(std::move(base));
                e->ops.push_back(std::move(first));
                e->ops.push_back(parse_expr());
                expect_punct("]");
                base = std::move(e);
            } else if (peek().is_punct("+:") || peek().is_punct("-:")) {
                auto e = make(Expr::Kind::IndexPart, line);
                e->op = next().text;
                e->ops.push_back(std::move(base));
                e->ops.push_back(std::move(first));
                e->ops.push_back(parse_expr());
                expect_punct("]");
                base = std::move(e);
            } else {
                auto e = make(Expr::Kind::Select, line);
                e->ops.push_back(std::move(base));
                e->ops.push_back(std::move(first));
                expect_punct("]");
                base = std::move(e);
            }
        }
        return base;
    }

    // lvalue: ident with selects, or concat of lvalues
    ExprPtr parse_lvalue() {
        if (peek().is_punct("{")) {
            int line = next().line;
            auto e = make(Expr::Kind::Concat, line);
            e->ops.push_back(parse_lvalue());
            while (accept_punct(",")) e->ops.push_back(parse_lvalue());
            expect_punct("}");
            return e;
        }
        if (peek().kind != Token::Kind::Ident) fail("expected assignment target");
        auto base = make(Expr::Kind::Ident, peek().line);
        base->name = next().text;
        while (accept_punct(".")) base->name += "." + expect_ident();
        return parse_selects(std::move(base));
    }

    // --- statements ---------------------------------------------------------

    StmtPtr make_stmt(Stmt::Kind k, int first_line) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        s->span = {path, first_line, first_line};
        return s;
    }
    void close_span(Stmt& s) { s.span.last_line = last_line; }

    StmtPtr parse_statement() {
        const Token& t = peek();
        int line = t.line;

        if (t.is_ident("begin")) {
            next();
            auto s = make_stmt(Stmt::Kind::Block, line);
            if (accept_punct(":")) s->label = expect_ident();
            while (!peek().is_ident("end")) {
                if (peek().kind == Token::Kind::End) fail("expected 'end'");
                s->body.push_back(parse_statement());
            }
            next();  // end
            close_span(*s);
            return s;
        }
        if (t.is_ident("if")) {
            next();
            auto s = make_stmt(Stmt::Kind::If, line);
            expect_punct("(");
            s->cond = parse_expr();
            expect_punct(")");
            s->then_stmt = parse_statement();
            if (accept_kw("else")) s->else_stmt = parse_statement();
            close_span(*s);
            return s;
        }
        if (t.is_ident("case") || t.is_ident("casez") || t.is_ident("casex")) {
            auto s = make_stmt(Stmt::Kind::Case, line);
            s->label = next().text;
            expect_punct("(");
            s->cond = parse_expr();
            expect_punct(")");
            while (!peek().is_ident("endcase")) {
                if (peek().kind == Token::Kind::End) fail("expected 'endcase'");
                CaseItem item;
                item.span = {path, peek().line, peek().line};
                if (accept_kw("default")) {
                    accept_punct(":");
                } else {
                    item.labels.push_back(parse_expr());
                    while (accept_punct(",")) item.labels.push_back(parse_expr());
                    expect_punct(":");
                }
                item.body = parse_statement();
                item.span.last_line = last_line;
                s->case_items.push_back(std::move(item));
            }
            next();  // endcase
            close_span(*s);
            return s;
        }
        if (t.is_ident("for")) {
            next();
            auto s = make_stmt(Stmt::Kind::For, line);
            expect_punct("(");
            s->init = parse_plain_assign();
            expect_punct(";");
            s->cond = parse_expr();
            expect_punct(";");
            s->step = parse_plain_assign();
            expect_punct(")");
            s->body.push_back(parse_statement());
            close_span(*s);
            return s;
        }
        if (t.is_ident("repeat") || t.is_ident("while")) {
            bool is_repeat = t.text == "repeat";
            next();
            auto s = make_stmt(is_repeat ? Stmt::Kind::Repeat : Stmt::Kind::While, line);
            expect_punct("(");
            s->cond = parse_expr();
            expect_punct(")");
            s->body.push_back(parse_statement());
            close_span(*s);
            return s;
        }
        if (t.is_ident("forever")) {
            next();
            auto s = make_stmt(Stmt::Kind::Forever, line);
            s->body.push_back(parse_statement());
            close_span(*s);
            return s;
        }
        if (t.is_punct("#")) {
            next();
            auto s = make_stmt(Stmt::Kind::Delay, line);
            if (peek().kind == Token::Kind::Number || peek().kind == Token::Kind::Ident) {
                s->cond = parse_primary();
            } else if (accept_punct("(")) {
                s->cond = parse_expr();
                expect_punct(")");
            } else {
                fail("expected delay value");
            }
            if (!accept_punct(";")) s->then_stmt = parse_statement();
            close_span(*s);
            return s;
        }
        if (t.is_punct("@")) {
            next();
            auto s = make_stmt(Stmt::Kind::EventWait, line);
            parse_event_control(*s);
            if (!accept_punct(";")) s->then_stmt = parse_statement();
            close_span(*s);
            return s;
        }
        if (t.is_punct("$")) {
            next();
            auto s = make_stmt(Stmt::Kind::SysTask, line);
            s->name = "$" + expect_ident();
            if (accept_punct("(")) {
                if (!peek().is_punct(")")) {
                    s->args.push_back(parse_expr());
                    while (accept_punct(",")) s->args.push_back(parse_expr());
                }
                expect_punct(")");
            }
            expect_punct(";");
            close_span(*s);
            return s;
        }
        if (t.is_punct(";")) {
            next();
            auto s = make_stmt(Stmt::Kind::Null, line);
            close_span(*s);
            return s;
        }
        if (t.kind == Token::Kind::Ident) {
            // assignment or task enable
            if (peek(1).is_punct("(") || peek(1).is_punct(";")) {
                // task enable — tolerated, kept opaque
                auto s = make_stmt(Stmt::Kind::Opaque, line);
                next();
                if (accept_punct("(")) {
                    int depth = 1;
                    while (depth > 0) {
                        if (peek().kind == Token::Kind::End) fail("unterminated task call");
                        if (peek().is_punct("(")) ++depth;
                        if (peek().is_punct(")")) --depth;
                        next();
                    }
                }
                expect_punct(";");
                close_span(*s);
                return s;
            }
            auto s = parse_plain_assign();
            expect_punct(";");
            close_span(*s);
            return s;
        }
        fail("expected statement");
    }

    // lvalue (= | <=) [#d] expr   — no trailing semicolon
    StmtPtr parse_plain_assign() {
        int line = peek().line;
        auto s = make_stmt(Stmt::Kind::Assign, line);
        s->lhs = parse_lvalue();
        if (accept_punct("=")) {
            s->non_blocking = false;
        } else if (accept_punct("<=")) {
            s->non_blocking = true;
        } else {
            fail("expected '=' or '<='");
        }
        if (accept_punct("#")) {
            // intra-assignment delay is parsed and ignored by the interpreter
            if (peek().kind == Token::Kind::Number || peek().kind == Token::Kind::Ident) next();
            else fail("expected delay value");
        }
        s->rhs = parse_expr();
        close_span(*s);
        return s;
    }

    void parse_event_control(Stmt& s) {
        if (accept_punct("*")) {
            s.events.push_back({});  // @* wildcard
            return;
        }
        if (accept_punct("(")) {
            if (accept_punct("*")) {
                expect_punct(")");
                s.events.push_back({});
                return;
            }
            while (true) {
                Stmt::EventTerm term;
                if (accept_kw("posedge")) term.edge = Stmt::EventTerm::EdgeKind::Pos;
                else if (accept_kw("negedge")) term.edge = Stmt::EventTerm::EdgeKind::Neg;
                term.signal = parse_expr();
                s.events.push_back(std::move(term));
                if (accept_kw("or") || accept_punct(",")) continue;
                break;
            }
            expect_punct(")");
            return;
        }
        // @ident
        Stmt::EventTerm term;
        term.signal = parse_primary();
        s.events.push_back(std::move(term));
    }

    // --- module items -------------------------------------------------------

    Range parse_range() {
        Range r;
        if (peek().is_punct("[")) {
            next();
            r.present = true;
            r.msb = parse_expr();
            expect_punct(":");
            r.lsb = parse_expr();
            expect_punct("]");
        }
        return r;
    }

    Range clone_range(const Range& r) {
        Range c;
        c.present = r.present;
        if (r.msb) c.msb = r.msb->clone();
        if (r.lsb) c.lsb = r.lsb->clone();
        return c;
    }

    std::vector<Declarator> parse_declarators(bool allow_init) {
        std::vector<Declarator> out;
        while (true) {
            Declarator d;
            d.line = peek().line;
            d.name = expect_ident();
            while (peek().is_punct("[")) {
                Range dim = parse_range();
                if (!dim.present) fail("expected array dimension");
                d.array_dims.push_back(std::move(dim));
            }
            if (allow_init && accept_punct("=")) d.init = parse_expr();
            out.push_back(std::move(d));
            if (!accept_punct(",")) break;
        }
        return out;
    }

    ModuleItem start_item(ModuleItem::Kind k, int line) {
        ModuleItem item;
        item.kind = k;
        item.span = {path, line, line};
        return item;
    }

    void skip_opaque_body(const OpaqueEnd& kind, int start_line) {
        if (kind.close == nullptr) {
            while (!peek().is_punct(";")) {
                if (peek().kind == Token::Kind::End)
                    throw SyntaxError(path, start_line, std::string("unterminated ") + kind.open);
                next();
            }
            next();
            return;
        }
        int depth = 1;
        while (depth > 0) {
            if (peek().kind == Token::Kind::End)
                throw SyntaxError(path, start_line,
                                  std::string("missing ") + kind.close + " for " + kind.open);
            if (peek().is_ident(kind.open)) ++depth;
            if (peek().is_ident(kind.close)) --depth;
            next();
        }
    }

    ModuleItem parse_module_item() {
        const Token& t = peek();
        int line = t.line;

        if (t.kind != Token::Kind::Ident) fail("expected module item");

        if (kNetKeywords.count(t.text)) {
            next();
            auto item = start_item(ModuleItem::Kind::NetDecl, line);
            accept_kw("signed");
            item.range = parse_range();
            item.decls = parse_declarators(/*allow_init=*/true);
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (t.is_ident("reg")) {
            next();
            auto item = start_item(ModuleItem::Kind::RegDecl, line);
            accept_kw("signed");
            item.range = parse_range();
            item.decls = parse_declarators(/*allow_init=*/true);
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (kIntLikeKeywords.count(t.text)) {
            next();
            auto item = start_item(ModuleItem::Kind::IntegerDecl, line);
            item.decls = parse_declarators(/*allow_init=*/true);
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (t.is_ident("parameter") || t.is_ident("localparam")) {
            bool local = t.text == "localparam";
            next();
            auto item = start_item(local ? ModuleItem::Kind::LocalParamDecl
                                         : ModuleItem::Kind::ParamDecl, line);
            accept_kw("signed");
            parse_range();  // parameter ranges are accepted and ignored
            while (true) {
                std::string name = expect_ident();
                expect_punct("=");
                item.params.emplace_back(name, parse_expr());
                if (!accept_punct(",")) break;
            }
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (t.is_ident("input") || t.is_ident("output") || t.is_ident("inout")) {
            auto item = start_item(ModuleItem::Kind::PortDeclItem, line);
            std::string dir = next().text;
            item.port_dir = dir == "input" ? PortDecl::Dir::Input
                          : dir == "output" ? PortDecl::Dir::Output : PortDecl::Dir::Inout;
            if (accept_kw("reg")) item.is_reg = true;
            else accept_kw("wire");
            accept_kw("signed");
            item.range = parse_range();
            item.decls = parse_declarators(/*allow_init=*/false);
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (t.is_ident("assign")) {
            next();
            auto item = start_item(ModuleItem::Kind::ContAssign, line);
            if (accept_punct("#")) {  // assignment delay, ignored
                if (peek().kind == Token::Kind::Number) next();
                else fail("expected delay value");
            }
            while (true) {
                item.assign_lhs.push_back(parse_lvalue());
                expect_punct("=");
                item.assign_rhs.push_back(parse_expr());
                if (!accept_punct(",")) break;
            }
            expect_punct(";");
            item.span.last_line = last_line;
            return item;
        }
        if (t.is_ident("always") || t.is_ident("initial")) {
            bool is_always = t.text == "always";
            next();
            auto item = start_item(is_always ? ModuleItem::Kind::Always
                                             : ModuleItem::Kind::Initial, line);
            item.stmt = parse_statement();
            item.span.last_line = last_line;
            return item;
        }
        for (const auto& kind : kOpaqueKinds) {
            if (t.is_ident(kind.open)) {
                next();
                auto item = start_item(ModuleItem::Kind::Opaque, line);
                item.opaque_keyword = kind.open;
                skip_opaque_body(kind, line);
                item.span.last_line = last_line;
                return item;
            }
        }

        // module instantiation: modname [#(...)] instname ( conns ) ;
        auto item = start_item(ModuleItem::Kind::Instance, line);
        item.module_name = expect_ident();
        if (accept_punct("#")) {
            expect_punct("(");
            item.positional_params = !peek().is_punct(".");
            if (!peek().is_punct(")")) {
                while (true) {
                    InstanceConn conn;
                    conn.line = peek().line;
                    if (accept_punct(".")) {
                        conn.port = expect_ident();
                        expect_punct("(");
                        if (!peek().is_punct(")")) conn.expr = parse_expr();
                        expect_punct(")");
                    } else {
                        conn.expr = parse_expr();
                    }
                    item.param_overrides.push_back(std::move(conn));
                    if (!accept_punct(",")) break;
                }
            }
            expect_punct(")");
        }
        item.instance_name = expect_ident();
        expect_punct("(");
        if (!peek().is_punct(")")) {
            while (true) {
                InstanceConn conn;
                conn.line = peek().line;
                if (accept_punct(".")) {
                    conn.port = expect_ident();
                    expect_punct("(");
                    if (!peek().is_punct(")")) conn.expr = parse_expr();
                    expect_punct(")");
                } else {
                    conn.expr = parse_expr();
                }
                item.conns.push_back(std::move(conn));
                if (!accept_punct(",")) break;
            }
        }
        expect_punct(")");
        expect_punct(";");
        item.span.last_line = last_line;
        return item;
    }

    ModuleDecl parse_module() {
        int line = peek().line;
        next();  // 'module'
        ModuleDecl mod;
        mod.span = {path, line, line};
        mod.name = expect_ident();

        if (accept_punct("#")) {
            expect_punct("(");
            while (true) {
                accept_kw("parameter");
                accept_kw("signed");
                parse_range();
                std::string name = expect_ident();
                expect_punct("=");
                ModuleItem item = start_item(ModuleItem::Kind::ParamDecl, last_line);
                item.params.emplace_back(name, parse_expr());
                item.span.last_line = last_line;
                mod.items.push_back(std::move(item));
                if (!accept_punct(",")) break;
            }
            expect_punct(")");
        }

        if (accept_punct("(")) {
            if (!peek().is_punct(")")) parse_port_list(mod);
            expect_punct(")");
        }
        expect_punct(";");

        while (!peek().is_ident("endmodule")) {
            if (peek().kind == Token::Kind::End)
                throw SyntaxError(path, mod.span.first_line,
                                  "missing endmodule for module " + mod.name);
            ModuleItem item = parse_module_item();
            if (item.kind == ModuleItem::Kind::PortDeclItem) merge_port_decl(mod, item);
            mod.items.push_back(std::move(item));
        }
        next();  // endmodule
        mod.span.last_line = last_line;
        return mod;
    }

    void parse_port_list(ModuleDecl& mod) {
        bool ansi = peek().is_ident("input") || peek().is_ident("output") ||
                    peek().is_ident("inout");
        if (!ansi) {
            while (true) {
                std::string name = expect_ident();
                mod.port_order.push_back(name);
                PortDecl pd;
                pd.name = name;
                pd.line = last_line;
                mod.ports.push_back(std::move(pd));
                if (!accept_punct(",")) break;
            }
            return;
        }
        PortDecl::Dir dir = PortDecl::Dir::Input;
        Range range;
        bool is_reg = false;
        while (true) {
            if (peek().is_ident("input") || peek().is_ident("output") || peek().is_ident("inout")) {
                std::string d = next().text;
                dir = d == "input" ? PortDecl::Dir::Input
                    : d == "output" ? PortDecl::Dir::Output : PortDecl::Dir::Inout;
                is_reg = accept_kw("reg");
                if (!is_reg) accept_kw("wire");
                accept_kw("signed");
                range = parse_range();
            }
            PortDecl pd;
            pd.dir = dir;
            pd.is_reg = is_reg;
            pd.range = clone_range(range);
            pd.line = peek().line;
            pd.name = expect_ident();
            mod.port_order.push_back(pd.name);
            mod.ports.push_back(std::move(pd));
            if (!accept_punct(",")) break;
        }
    }

    void merge_port_decl(ModuleDecl& mod, const ModuleItem& item) {
        for (const auto& d : item.decls) {
            bool found = false;
            for (auto& p : mod.ports) {
                if (p.name == d.name) {
                    p.dir = item.port_dir;
                    p.range = clone_range(item.range);
                    p.is_reg = p.is_reg || item.is_reg;
                    found = true;
                    break;
                }
            }
            if (!found) {
                // port declared in body but missing from the header list
                PortDecl pd;
                pd.name = d.name;
                pd.dir = item.port_dir;
                pd.range = clone_range(item.range);
                pd.is_reg = item.is_reg;
                pd.line = d.line;
                mod.ports.push_back(std::move(pd));
                mod.port_order.push_back(d.name);
            }
        }
    }

    FileAST parse() {
        FileAST file;
        file.path = path;
        while (peek().kind != Token::Kind::End) {
            if (peek().is_ident("module") || peek().is_ident("macromodule")) {
                file.modules.push_back(parse_module());
            } else if (peek().is_ident("endmodule")) {
                throw SyntaxError(path, peek().line, "unbalanced endmodule");
            } else {
                fail("expected module declaration");
            }
        }
        return file;
    }
};

}  // namespace

ExprPtr Expr::clone() const {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = line;
    e->name = name;
    e->op = op;
    e->text = text;
    e->value = value;
    for (const auto& o : ops) e->ops.push_back(o->clone());
    return e;
}

FileAST parse_file(const std::string& path, const std::string& text) {
    Parser p{path, tokenize(path, text)};
    FileAST file = p.parse();
    file.lines = split_lines(text);
    return file;
}

SourceAST parse_source(const std::vector<std::pair<std::string, std::string>>& files) {
    SourceAST ast;
    for (const auto& [path, text] : files) ast.files.push_back(parse_file(path, text));
    return ast;
}

// --- AST walks -------------------------------------------------------------

void collect_idents(const Expr& e, std::vector<const Expr*>& out) {
    if (e.kind == Expr::Kind::Ident) out.push_back(&e);
    for (const auto& op : e.ops) collect_idents(*op, out);
}

void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    auto visit = [&](const ExprPtr& e) { if (e) fn(*e); };
    visit(s.cond);
    visit(s.lhs);
    visit(s.rhs);
    for (const auto& a : s.args) visit(a);
    for (const auto& ev : s.events) visit(ev.signal);
    for (const auto& item : s.case_items)
        for (const auto& l : item.labels) visit(l);
    if (s.init) walk_exprs(*s.init, fn);
    if (s.step) walk_exprs(*s.step, fn);
    if (s.then_stmt) walk_exprs(*s.then_stmt, fn);
    if (s.else_stmt) walk_exprs(*s.else_stmt, fn);
    for (const auto& b : s.body) walk_exprs(*b, fn);
    for (const auto& item : s.case_items)
        if (item.body) walk_exprs(*item.body, fn);
}

void walk_stmts(const Stmt& s, const std::function<void(const Stmt&)>& fn) {
    fn(s);
    if (s.init) walk_stmts(*s.init, fn);
    if (s.step) walk_stmts(*s.step, fn);
    if (s.then_stmt) walk_stmts(*s.then_stmt, fn);
    if (s.else_stmt) walk_stmts(*s.else_stmt, fn);
    for (const auto& b : s.body) walk_stmts(*b, fn);
    for (const auto& item : s.case_items)
        if (item.body) walk_stmts(*item.body, fn);
}

// --- semantic checks ---------------------------------------------------------

namespace {

void expr_idents(const Expr& e, std::vector<const Expr*>& out) { collect_idents(e, out); }

}  // namespace

std::vector<SemanticDiag> check_semantics(const SourceAST& ast) {
    std::vector<SemanticDiag> diags;
    for (const auto& file : ast.files) {
        for (const auto& mod : file.modules) {
            std::set<std::string> declared;
            bool has_opaque = false;
            for (const auto& p : mod.ports) declared.insert(p.name);
            for (const auto& item : mod.items) {
                for (const auto& d : item.decls) {
                    if (item.kind == ModuleItem::Kind::NetDecl ||
                        item.kind == ModuleItem::Kind::RegDecl ||
                        item.kind == ModuleItem::Kind::IntegerDecl) {
                        if (!declared.insert(d.name).second &&
                            !std::count_if(mod.ports.begin(), mod.ports.end(),
                                           [&](const PortDecl& p) { return p.name == d.name; })) {
                            diags.push_back({file.path, d.line,
                                             "duplicate declaration of '" + d.name + "'", true});
                        }
                    } else {
                        declared.insert(d.name);
                    }
                }
                for (const auto& [name, _] : item.params) declared.insert(name);
                if (item.kind == ModuleItem::Kind::Instance)
                    declared.insert(item.instance_name);
                if (item.kind == ModuleItem::Kind::Opaque) has_opaque = true;
            }
            // opaque items may declare names invisible to us; skip use checks then
            if (has_opaque) continue;

            auto check_expr = [&](const Expr& e) {
                std::vector<const Expr*> ids;
                expr_idents(e, ids);
                for (const Expr* id : ids) {
                    if (id->name.find('.') != std::string::npos) continue;  // hierarchical
                    if (!declared.count(id->name)) {
                        diags.push_back({file.path, id->line,
                                         "undeclared identifier '" + id->name + "'", true});
                    }
                }
            };
            for (const auto& item : mod.items) {
                for (const auto& e : item.assign_lhs) check_expr(*e);
                for (const auto& e : item.assign_rhs) check_expr(*e);
                for (const auto& d : item.decls)
                    if (d.init) check_expr(*d.init);
                for (const auto& [_, v] : item.params) check_expr(*v);
                if (item.stmt)
                    walk_exprs(*item.stmt, [&](const Expr& e) { check_expr(e); });
                for (const auto& c : item.conns)
                    if (c.expr) check_expr(*c.expr);
                // instance arity against the parsed module, when available
                if (item.kind == ModuleItem::Kind::Instance) {
                    const ModuleDecl* target = ast.find_module(item.module_name);
                    if (target) {
                        bool positional = !item.conns.empty() && item.conns[0].port.empty();
                        if (positional && item.conns.size() > target->ports.size()) {
                            diags.push_back({file.path, item.span.first_line,
                                             "too many connections for module '" +
                                                 item.module_name + "'", true});
                        }
                        if (!positional) {
                            for (const auto& c : item.conns) {
                                bool known = std::any_of(
                                    target->ports.begin(), target->ports.end(),
                                    [&](const PortDecl& p) { return p.name == c.port; });
                                if (!known)
                                    diags.push_back({file.path, c.line,
                                                     "module '" + item.module_name +
                                                         "' has no port '" + c.port + "'", true});
                            }
                        }
                    }
                }
            }
        }
    }
    return diags;
}

}  // namespace r3a::vl
