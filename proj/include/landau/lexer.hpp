#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "landau/token.hpp"

namespace landau {

inline bool is_keyword(std::string_view s) {
    return s == "const" || s == "int" || s == "real" || s == "parameter" || s == "for" ||
           s == "if" || s == "else" || s == "discard";
}

namespace detail {

inline bool newline_redundant_before(const Token& next) {
    // A newline adds nothing when the following token is itself a boundary
    // ('}') or can only continue the current construct.
    if (next.is(TokKind::Keyword, "else")) return true;
    if (next.kind != TokKind::Punct) return false;
    const std::string& l = next.lexeme;
    return l == ")" || l == "]" || l == "(" || l == "{" || l == "}";
}

inline bool continues_statement(const Token& prev) {
    switch (prev.kind) {
        case TokKind::Tick:
        case TokKind::Colon:
            return true;
        case TokKind::Punct: {
            const std::string& l = prev.lexeme;
            return l != ")" && l != "]" && l != "}";  // every operator, comma, =, (, [, {
        }
        default:
            return false;
    }
}

}  // namespace detail

// Tokenize a whole .landau source. The first non-blank line must be the
// "#lang landau" header; other #-lines are comments. Newline tokens are kept
// only where they actually terminate a statement, so the parser can treat
// them as separators.
inline std::vector<Token> tokenize(const std::string& source, const std::string& file = "<input>") {
    size_t i = 0;
    const size_t n = source.size();
    int line = 1, col = 1;

    auto error = [&](const std::string& msg) -> void {
        throw CompileError(file, {line, col}, msg);
    };

    // Header: skip blank lines, then expect "#lang landau".
    {
        size_t j = 0;
        int hline = 1;
        while (j < n) {
            size_t eol = source.find('\n', j);
            std::string_view ln(source.data() + j, (eol == std::string::npos ? n : eol) - j);
            size_t k = ln.find_first_not_of(" \t\r");
            if (k != std::string_view::npos) {
                std::string_view body = ln.substr(k);
                while (!body.empty() && (body.back() == ' ' || body.back() == '\t' || body.back() == '\r'))
                    body.remove_suffix(1);
                if (body != "#lang landau")
                    throw CompileError(file, {hline, int(k) + 1},
                                       "missing '#lang landau' header on the first non-blank line");
                i = (eol == std::string::npos ? n : eol);
                line = hline;
                col = int(ln.size()) + 1;
                break;
            }
            if (eol == std::string::npos) {
                i = n;
                break;
            }
            j = eol + 1;
            ++hline;
        }
        if (j >= n && i == 0) i = n;  // all-blank source: nothing but the missing header
        if (i == n && n > 0 && source.find("#lang landau") == std::string::npos)
            throw CompileError(file, {1, 1}, "missing '#lang landau' header on the first non-blank line");
    }

    std::vector<Token> raw;
    auto push = [&](TokKind k, std::string lex, int l, int c) {
        raw.push_back(Token{k, std::move(lex), {l, c}});
    };

    while (i < n) {
        char c = source[i];
        if (c == '\n') {
            push(TokKind::Newline, "\n", line, col);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (i < n && source[i] != '\n') ++i, ++col;
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t s = i;
            while (i < n && (std::isalnum((unsigned char)source[i]) || source[i] == '_')) ++i, ++col;
            std::string lex = source.substr(s, i - s);
            TokKind kind = is_keyword(lex) ? TokKind::Keyword : TokKind::Ident;
            push(kind, std::move(lex), tl, tc);
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t s = i;
            bool real = false;
            while (i < n && std::isdigit((unsigned char)source[i])) ++i, ++col;
            if (i < n && source[i] == '.' ) {
                real = true;
                ++i, ++col;
                while (i < n && std::isdigit((unsigned char)source[i])) ++i, ++col;
            }
            if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                size_t j = i + 1;
                if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
                if (j < n && std::isdigit((unsigned char)source[j])) {
                    real = true;
                    col += int(j - i);
                    i = j;
                    while (i < n && std::isdigit((unsigned char)source[i])) ++i, ++col;
                }
            }
            push(real ? TokKind::RealLit : TokKind::IntLit, source.substr(s, i - s), tl, tc);
            continue;
        }
        switch (c) {
            case '\'':
                push(TokKind::Tick, "'", tl, tc);
                ++i, ++col;
                continue;
            case ':':
                push(TokKind::Colon, ":", tl, tc);
                ++i, ++col;
                continue;
            case '(': case ')': case '[': case ']': case '{': case '}': case ',':
            case '-': case '*': case '/':
                push(TokKind::Punct, std::string(1, c), tl, tc);
                ++i, ++col;
                continue;
            case '+':
                if (i + 1 < n && source[i + 1] == '=') {
                    push(TokKind::Punct, "+=", tl, tc);
                    i += 2, col += 2;
                } else {
                    push(TokKind::Punct, "+", tl, tc);
                    ++i, ++col;
                }
                continue;
            case '=':
                if (i + 1 < n && source[i + 1] == '=') {
                    push(TokKind::Punct, "==", tl, tc);
                    i += 2, col += 2;
                } else {
                    push(TokKind::Punct, "=", tl, tc);
                    ++i, ++col;
                }
                continue;
            case '!':
                if (i + 1 < n && source[i + 1] == '=') {
                    push(TokKind::Punct, "!=", tl, tc);
                    i += 2, col += 2;
                    continue;
                }
                error("illegal character '!'");
                continue;
            case '<': case '>': {
                std::string lex(1, c);
                if (i + 1 < n && source[i + 1] == '=') lex += '=';
                push(TokKind::Punct, lex, tl, tc);
                i += lex.size(), col += int(lex.size());
                continue;
            }
            default:
                error(std::string("illegal character '") + c + "'");
        }
    }

    // Second pass: keep only statement-separating newlines.
    std::vector<Token> out;
    int depth = 0;  // () and [] nesting; newlines inside are continuations
    for (size_t k = 0; k < raw.size(); ++k) {
        const Token& t = raw[k];
        if (t.kind != TokKind::Newline) {
            if (t.kind == TokKind::Punct && (t.lexeme == "(" || t.lexeme == "[")) ++depth;
            if (t.kind == TokKind::Punct && (t.lexeme == ")" || t.lexeme == "]")) --depth;
            out.push_back(t);
            continue;
        }
        if (out.empty() || depth > 0) continue;
        if (out.back().kind == TokKind::Newline) continue;
        if (detail::continues_statement(out.back())) continue;
        size_t j = k + 1;
        while (j < raw.size() && raw[j].kind == TokKind::Newline) ++j;
        if (j == raw.size()) continue;  // trailing newline
        if (detail::newline_redundant_before(raw[j])) continue;
        out.push_back(t);
    }
    while (!out.empty() && out.back().kind == TokKind::Newline) out.pop_back();
    return out;
}

}  // namespace landau
