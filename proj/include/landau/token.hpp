#pragma once

#include <string>

#include "landau/diagnostics.hpp"

namespace landau {

enum class TokKind {
    Keyword,
    Ident,
    IntLit,
    RealLit,
    Punct,    // ( ) [ ] { } = += , + - * / == != < > <= >=
    Tick,     // the derivative operator '
    Colon,    // slice separator
    Newline,  // statement terminator (kept only where it separates statements)
};

struct Token {
    TokKind kind;
    std::string lexeme;
    SourceLoc loc;

    bool is(TokKind k) const { return kind == k; }
    bool is(TokKind k, const char* lex) const { return kind == k && lexeme == lex; }
};

inline const char* tok_kind_name(TokKind k) {
    switch (k) {
        case TokKind::Keyword: return "keyword";
        case TokKind::Ident: return "identifier";
        case TokKind::IntLit: return "integer literal";
        case TokKind::RealLit: return "real literal";
        case TokKind::Punct: return "punctuation";
        case TokKind::Tick: return "'";
        case TokKind::Colon: return ":";
        case TokKind::Newline: return "end of line";
    }
    return "?";
}

}  // namespace landau
