// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "r3a/bitvec.hpp"
#include "r3a/common.hpp"

namespace r3a::vl {

// ------------------------------------------------------------------ exprs

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        Number,     // literal; `value` holds the parsed bits
        String,     // quoted string (system task args)
        Ident,      // `name`
        Select,     // ops[0]=base ident expr, ops[1]=msb/index, ops[2]=lsb (part-select only)
        IndexPart,  // +: / -: part select: ops[0]=base, ops[1]=start, ops[2]=width; op holds "+:"/"-:"
        Concat,     // ops are parts, ops[0] is MSB-most
        Replicate,  // ops[0]=count, ops[1..]=parts
        Unary,      // op in { ! ~ + - & | ^ ~& ~| ~^ }
        Binary,     // op in the usual set
        Ternary,    // ops[0]=cond, ops[1]=then, ops[2]=else
        Call,       // name = function name (incl. $system functions), ops = args
    };
    Kind kind;
    int line = 0;
    std::string name;   // Ident/Call
    std::string op;     // Unary/Binary/IndexPart
    std::string text;   // String literal content; Number raw text
    BitVec value;       // Number
    std::vector<ExprPtr> ops;

    ExprPtr clone() const;
};

// ------------------------------------------------------------- statements

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct CaseItem {
    std::vector<ExprPtr> labels;  // empty = default
    StmtPtr body;                 // may be null (bare ;)
    SourceSpan span;
};

struct Stmt {
    enum class Kind {
        Block,        // begin/end; children in `body`
        If,           // cond, then_stmt, else_stmt
        Case,         // case/casez/casex: selector + items
        For,          // init/cond/step + body
        Repeat,       // count expr + body
        While,        // cond + body
        Forever,      // body
        Assign,       // blocking (=) or non-blocking (<=) per `non_blocking`
        Delay,        // #N [stmt]
        EventWait,    // @(...) [stmt]; edges in `events`
        SysTask,      // $name(args)
        Null,         // bare ;
        Opaque,       // unparsed region kept for spans
    };
    struct EventTerm {
        enum class EdgeKind { Any, Pos, Neg } edge = EdgeKind::Any;
        ExprPtr signal;   // null means @*
    };

    Kind kind;
    SourceSpan span;
    std::string label;          // named begin block / case variant ("case","casez","casex")
    ExprPtr cond;               // If/While/Repeat(count)/Case(selector)/Delay(amount)
    ExprPtr lhs, rhs;           // Assign
    bool non_blocking = false;  // Assign
    StmtPtr then_stmt, else_stmt;
    std::vector<StmtPtr> body;      // Block children; single body for loops in body[0]
    std::vector<CaseItem> case_items;
    std::vector<EventTerm> events;  // EventWait
    StmtPtr init, step;             // For
    std::string name;               // SysTask name
    std::vector<ExprPtr> args;      // SysTask args
};

// ----------------------------------------------------------- module items

struct Range {
    // Declared [msb:lsb]; both sides are constant expressions.
    ExprPtr msb, lsb;
    bool present = false;
};

struct Declarator {
    std::string name;
    int line = 0;
    std::vector<Range> array_dims;  // memories; unsupported by the simulator
    ExprPtr init;                   // wire w = expr  (implicit continuous assign)
};

struct PortDecl {
    enum class Dir { Input, Output, Inout };
    Dir dir = Dir::Input;
    std::string name;
    Range range;
    bool is_reg = false;
    int line = 0;
};

struct InstanceConn {
    std::string port;  // empty for positional
    ExprPtr expr;      // may be null for .port()
    int line = 0;
};

struct ModuleItem {
    enum class Kind {
        NetDecl,       // wire/tri
        RegDecl,       // reg
        IntegerDecl,   // integer/genvar/real/time (simulated as 32- or 64-bit regs)
        ParamDecl,     // parameter
        LocalParamDecl,
        PortDeclItem,  // non-ANSI input/output/inout declaration
        ContAssign,    // assign lhs = rhs (possibly several, comma separated)
        Always,
        Initial,
        Instance,
        Opaque,        // tolerated construct captured with its span only
    };
    Kind kind;
    SourceSpan span;

    // declarations
    Range range;
    std::vector<Declarator> decls;
    PortDecl::Dir port_dir = PortDecl::Dir::Input;
    bool is_reg = false;  // for PortDeclItem: `output reg ...`

    // parameters: name/value pairs
    std::vector<std::pair<std::string, ExprPtr>> params;

    // assigns: parallel lhs/rhs lists
    std::vector<ExprPtr> assign_lhs, assign_rhs;

    // always/initial
    StmtPtr stmt;

    // instance
    std::string module_name, instance_name;
    std::vector<InstanceConn> param_overrides;
    std::vector<InstanceConn> conns;
    bool positional_params = false;

    std::string opaque_keyword;  // what the opaque item started with
};

struct ModuleDecl {
    std::string name;
    SourceSpan span;
    std::vector<PortDecl> ports;        // merged ANSI + non-ANSI declarations
    std::vector<std::string> port_order;
    std::vector<ModuleItem> items;
};

struct FileAST {
    std::string path;
    std::vector<ModuleDecl> modules;
    std::vector<std::string> lines;  // verbatim source, for segment rendering
};

struct SourceAST {
    std::vector<FileAST> files;

    const ModuleDecl* find_module(const std::string& name) const {
        for (const auto& f : files)
            for (const auto& m : f.modules)
                if (m.name == name) return &m;
        return nullptr;
    }
};

// parse_source: see parser.hpp. AST utility walks used across modules:

// Collects every identifier read by an expression (excluding select bounds'
// nested reads being attributed separately — bounds count as reads too).
void collect_idents(const Expr& e, std::vector<const Expr*>& out);

// Walks all expressions of a statement tree in evaluation order.
void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn);
void walk_stmts(const Stmt& s, const std::function<void(const Stmt&)>& fn);

}  // namespace r3a::vl
