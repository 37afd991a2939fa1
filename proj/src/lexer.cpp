// SPDX-License-Identifier: Apache-2.0
#include "r3a/lexer.hpp"

#include <cctype>

namespace r3a::vl {

namespace {

const char* kPuncts[] = {
    // three-char first, then two, then one
    "<<<", ">>>", "===", "!==", "~^",  "^~", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "**", "+:", "-:", "->",
    "(", ")", "[", "]", "{", "}", ";", ":", ",", ".", "#", "@", "?", "=",
    "+", "-", "*", "/", "%", "&", "|", "^", "~", "!", "<", ">", "$",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

struct Lexer {
    const std::string& path;
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    std::map<std::string, std::vector<Token>> defines;
    std::vector<Token> out;

    char peek(std::size_t off = 0) const {
        return pos + off < text.size() ? text[pos + off] : '\0';
    }
    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }

    void skip_space_and_comments() {
        while (pos < text.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos < text.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                int start = line;
                advance(); advance();
                while (pos < text.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos >= text.size())
                    throw SyntaxError(path, start, "unterminated block comment");
                advance(); advance();
            } else if (c == '(' && peek(1) == '*') {
                // attribute instance; skip to *)
                int start = line;
                advance(); advance();
                while (pos < text.size() && !(peek() == '*' && peek(1) == ')')) advance();
                if (pos >= text.size())
                    throw SyntaxError(path, start, "unterminated attribute");
                advance(); advance();
            } else {
                break;
            }
        }
    }

    void directive() {
        int dline = line;
        advance();  // backtick
        std::string name;
        while (pos < text.size() && ident_char(peek())) {
            name += peek();
            advance();
        }
        if (name == "define") {
            // `define NAME token... (to end of line; no parameter support)
            while (pos < text.size() && (peek() == ' ' || peek() == '\t')) advance();
            std::string macro;
            while (pos < text.size() && ident_char(peek())) { macro += peek(); advance(); }
            std::size_t eol = text.find('\n', pos);
            std::string body(text.substr(pos, eol == std::string_view::npos
                                                  ? std::string_view::npos : eol - pos));
            while (pos < text.size() && peek() != '\n') advance();
            if (!macro.empty()) {
                Lexer sub{path, body, 0, dline, defines, {}};
                sub.run();
                sub.out.pop_back();  // strip End
                defines[macro] = std::move(sub.out);
            }
        } else if (name == "timescale" || name == "include" || name == "default_nettype") {
            while (pos < text.size() && peek() != '\n') advance();
        } else if (name == "ifdef" || name == "ifndef" || name == "undef") {
            // conditional compilation is tolerated by including everything
            while (pos < text.size() && (peek() == ' ' || peek() == '\t')) advance();
            while (pos < text.size() && ident_char(peek())) advance();
        } else if (name == "else" || name == "endif" || name == "resetall") {
            // nothing follows
        } else if (defines.count(name)) {
            for (Token t : defines[name]) {
                t.line = dline;
                out.push_back(std::move(t));
            }
        } else {
            throw SyntaxError(path, dline, "unknown compiler directive `" + name);
        }
    }

    void run() {
        while (true) {
            skip_space_and_comments();
            if (pos >= text.size()) break;
            char c = peek();
            int tline = line;
            if (c == '`') {
                directive();
                continue;
            }
            if (ident_start(c)) {
                std::string s;
                while (pos < text.size() && ident_char(peek())) { s += peek(); advance(); }
                out.push_back({Token::Kind::Ident, std::move(s), tline});
                continue;
            }
            if (c == '\\') {
                // escaped identifier: up to whitespace
                advance();
                std::string s = "\\";
                while (pos < text.size() && !std::isspace(static_cast<unsigned char>(peek()))) {
                    s += peek(); advance();
                }
                out.push_back({Token::Kind::Ident, std::move(s), tline});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
                std::string s;
                while (pos < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    { s += peek(); advance(); }
                // based literal: [size] ' [s] base digits   (allow x/z/? digits)
                skip_space_in_number();
                if (peek() == '\'') {
                    s += '\'';
                    advance();
                    skip_space_in_number();
                    if (peek() == 's' || peek() == 'S') { s += peek(); advance(); }
                    if (std::isalpha(static_cast<unsigned char>(peek()))) { s += peek(); advance(); }
                    skip_space_in_number();
                    while (pos < text.size() &&
                           (std::isalnum(static_cast<unsigned char>(peek())) ||
                            peek() == '_' || peek() == '?'))
                        { s += peek(); advance(); }
                }
                out.push_back({Token::Kind::Number, std::move(s), tline});
                continue;
            }
            if (c == '"') {
                advance();
                std::string s;
                while (pos < text.size() && peek() != '"') {
                    if (peek() == '\\' && pos + 1 < text.size()) {
                        advance();
                        char e = peek();
                        s += (e == 'n') ? '\n' : (e == 't') ? '\t' : e;
                        advance();
                    } else {
                        s += peek();
                        advance();
                    }
                }
                if (pos >= text.size()) throw SyntaxError(path, tline, "unterminated string");
                advance();
                out.push_back({Token::Kind::String, std::move(s), tline});
                continue;
            }
            // punctuation: longest match wins
            bool matched = false;
            for (const char* p : kPuncts) {
                std::string_view pv(p);
                if (text.substr(pos, pv.size()) == pv) {
                    for (std::size_t i = 0; i < pv.size(); ++i) advance();
                    out.push_back({Token::Kind::Punct, std::string(pv), tline});
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw SyntaxError(path, tline, std::string("unexpected character '") + c + "'");
        }
        out.push_back({Token::Kind::End, "", line});
    }

    void skip_space_in_number() {
        // IEEE allows space between size, quote and base
        while (pos < text.size() && (peek() == ' ' || peek() == '\t')) advance();
    }
};

}  // namespace

std::vector<Token> tokenize(const std::string& path, std::string_view text) {
    Lexer lx{path, text};
    lx.run();
    return std::move(lx.out);
}

}  // namespace r3a::vl
