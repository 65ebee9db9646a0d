#pragma once

#include <memory>
#include <string>
#include <vector>

#include "landau/ast.hpp"
#include "landau/lexer.hpp"

namespace landau {

inline bool is_builtin_name(const std::string& s) {
    return s == "sin" || s == "cos" || s == "tan" || s == "exp" || s == "log" ||
           s == "sqrt" || s == "sqr" || s == "atan";
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string file)
        : toks_(std::move(tokens)), file_(std::move(file)) {}

    Program parse() {
        Program prog;
        prog.file = file_;
        bool have_func = false;
        skip_newlines();
        while (!at_end()) {
            if (peek().is(TokKind::Keyword, "const")) {
                prog.consts.push_back(parse_const());
            } else if (peek().is(TokKind::Keyword, "parameter")) {
                prog.params.push_back(parse_parameter());
            } else if (peek().is(TokKind::Keyword, "real")) {
                if (have_func) error(peek().loc, "only one function declaration is allowed per program");
                prog.func = parse_func();
                have_func = true;
            } else {
                error(peek().loc, "expected 'const', 'parameter' or a function declaration, got " +
                                      describe(peek()));
            }
            end_of_statement();
            skip_newlines();
        }
        if (!have_func) error(last_loc(), "program has no function declaration");
        for (size_t i = 0; i < prog.consts.size(); ++i)
            for (size_t j = i + 1; j < prog.consts.size(); ++j)
                if (prog.consts[i].name == prog.consts[j].name)
                    error(prog.consts[j].loc, "duplicated declaration name '" + prog.consts[j].name + "'");
        prog.stmt_count = stmt_counter_;
        return prog;
    }

private:
    std::vector<Token> toks_;
    std::string file_;
    size_t pos_ = 0;
    int stmt_counter_ = 0;

    bool at_end() const { return pos_ >= toks_.size(); }
    const Token& peek(size_t ahead = 0) const {
        static const Token end{TokKind::Punct, "<end of input>", {0, 0}};
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end;
    }
    Token take() {
        if (at_end()) error(last_loc(), "unexpected end of input");
        return toks_[pos_++];
    }
    SourceLoc last_loc() const {
        return toks_.empty() ? SourceLoc{1, 1} : toks_.back().loc;
    }
    SourceLoc loc_here() const { return at_end() ? last_loc() : peek().loc; }

    [[noreturn]] void error(SourceLoc loc, const std::string& msg) const {
        throw CompileError(file_, loc, "syntax error: " + msg);
    }
    static std::string describe(const Token& t) {
        if (t.kind == TokKind::Newline) return "end of line";
        return "'" + t.lexeme + "'";
    }

    bool accept(TokKind k, const char* lex = nullptr) {
        if (at_end()) return false;
        if (peek().kind != k) return false;
        if (lex && peek().lexeme != lex) return false;
        ++pos_;
        return true;
    }
    Token expect(TokKind k, const char* lex = nullptr) {
        if (at_end())
            error(last_loc(), std::string("expected ") + (lex ? ("'" + std::string(lex) + "'") : tok_kind_name(k)) +
                                  ", got end of input");
        if (peek().kind != k || (lex && peek().lexeme != lex))
            error(peek().loc, std::string("expected ") + (lex ? ("'" + std::string(lex) + "'") : tok_kind_name(k)) +
                                  ", got " + describe(peek()));
        return take();
    }

    void skip_newlines() {
        while (!at_end() && peek().kind == TokKind::Newline) ++pos_;
    }
    void end_of_statement() {
        if (at_end()) return;
        if (peek().kind == TokKind::Newline) {
            ++pos_;
            return;
        }
        if (peek().is(TokKind::Punct, "}")) return;  // block close terminates
        error(peek().loc, "expected end of line, got " + describe(peek()));
    }

    // --- declarations -------------------------------------------------------

    ConstDecl parse_const() {
        ConstDecl d;
        d.loc = expect(TokKind::Keyword, "const").loc;
        expect(TokKind::Keyword, "int");
        d.name = expect(TokKind::Ident).lexeme;
        expect(TokKind::Punct, "=");
        d.value = parse_expr();
        return d;
    }

    ParamDecl parse_parameter() {
        ParamDecl d;
        d.loc = expect(TokKind::Keyword, "parameter").loc;
        expect(TokKind::Punct, "[");
        d.size = parse_expr();
        expect(TokKind::Punct, "]");
        d.name = expect(TokKind::Ident).lexeme;
        return d;
    }

    FuncDecl parse_func() {
        FuncDecl f;
        f.loc = expect(TokKind::Keyword, "real").loc;
        expect(TokKind::Punct, "[");
        f.ret_size = parse_expr();
        expect(TokKind::Punct, "]");
        f.name = expect(TokKind::Ident).lexeme;
        expect(TokKind::Punct, "(");
        if (!peek().is(TokKind::Punct, ")")) {
            while (true) {
                ArgDecl a;
                a.loc = expect(TokKind::Keyword, "real").loc;
                if (accept(TokKind::Punct, "[")) {
                    a.is_array = true;
                    a.size = parse_expr();
                    expect(TokKind::Punct, "]");
                }
                a.name = expect(TokKind::Ident).lexeme;
                for (const ArgDecl& prev : f.args)
                    if (prev.name == a.name)
                        error(a.loc, "duplicated declaration name '" + a.name + "'");
                f.args.push_back(std::move(a));
                if (!accept(TokKind::Punct, ",")) break;
            }
        }
        expect(TokKind::Punct, ")");
        f.body = parse_block();
        return f;
    }

    // --- statements ---------------------------------------------------------

    Block parse_block() {
        expect(TokKind::Punct, "{");
        Block b;
        skip_newlines();
        while (!peek().is(TokKind::Punct, "}")) {
            if (at_end()) error(last_loc(), "expected '}', got end of input");
            b.push_back(parse_stmt());
            end_of_statement();
            skip_newlines();
        }
        expect(TokKind::Punct, "}");
        return b;
    }

    StmtPtr make_stmt(Stmt::Kind k, SourceLoc loc) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        s->loc = loc;
        s->stmt_id = stmt_counter_++;
        return s;
    }

    StmtPtr parse_stmt() {
        const Token& t = peek();
        if (t.is(TokKind::Keyword, "real") || t.is(TokKind::Keyword, "int")) return parse_var_decl();
        if (t.is(TokKind::Keyword, "for")) return parse_for();
        if (t.is(TokKind::Keyword, "if")) return parse_if();
        if (t.is(TokKind::Keyword, "discard")) return parse_discard();
        if (t.kind == TokKind::Ident) return parse_assign();
        error(t.loc, "expected a statement, got " + describe(t));
    }

    StmtPtr parse_var_decl() {
        Token kw = take();
        auto s = make_stmt(Stmt::Kind::VarDecl, kw.loc);
        s->decl_is_int = kw.lexeme == "int";
        if (accept(TokKind::Punct, "[")) {
            if (s->decl_is_int) error(kw.loc, "integer arrays are not supported");
            s->decl_size = parse_expr();
            expect(TokKind::Punct, "]");
        }
        s->name = expect(TokKind::Ident).lexeme;
        if (accept(TokKind::Punct, "=")) s->init = parse_expr();
        return s;
    }

    StmtPtr parse_for() {
        auto s = make_stmt(Stmt::Kind::For, take().loc);
        s->name = expect(TokKind::Ident).lexeme;
        expect(TokKind::Punct, "=");
        expect(TokKind::Punct, "[");
        s->lo = parse_expr();
        expect(TokKind::Colon);
        s->hi = parse_expr();
        expect(TokKind::Punct, "]");
        skip_newlines();
        if (peek().is(TokKind::Punct, "{")) {
            s->body = parse_block();
        } else {
            s->body.push_back(parse_stmt());
        }
        return s;
    }

    StmtPtr parse_if() {
        auto s = make_stmt(Stmt::Kind::If, take().loc);
        expect(TokKind::Punct, "(");
        s->cond = parse_expr();
        expect(TokKind::Punct, ")");
        s->body = parse_block();
        skip_newlines_if_else();
        if (accept(TokKind::Keyword, "else")) s->else_body = parse_block();
        return s;
    }

    void skip_newlines_if_else() {
        size_t save = pos_;
        skip_newlines();
        if (!peek().is(TokKind::Keyword, "else")) pos_ = save;
    }

    StmtPtr parse_discard() {
        auto s = make_stmt(Stmt::Kind::Discard, take().loc);
        s->name = expect(TokKind::Ident).lexeme;
        expect(TokKind::Tick);
        s->denom_name = expect(TokKind::Ident).lexeme;
        return s;
    }

    StmtPtr parse_assign() {
        SourceLoc loc = peek().loc;
        ExprPtr lhs = parse_var_ref();
        if (accept(TokKind::Tick)) {
            auto s = make_stmt(Stmt::Kind::DerivAssign, loc);
            s->lhs = std::move(lhs);
            s->denom = parse_var_ref();
            expect(TokKind::Punct, "=");
            s->rhs = parse_expr();
            return s;
        }
        auto s = make_stmt(Stmt::Kind::Assign, loc);
        s->lhs = std::move(lhs);
        if (accept(TokKind::Punct, "+=")) {
            s->plus_assign = true;
        } else {
            expect(TokKind::Punct, "=");
        }
        s->rhs = parse_expr();
        return s;
    }

    // --- expressions --------------------------------------------------------

    ExprPtr make_expr(Expr::Kind k, SourceLoc loc) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->loc = loc;
        return e;
    }

    // IDENT, IDENT[idx] or IDENT[lo : hi]; also used for derivative denominators.
    ExprPtr parse_var_ref() {
        Token id = expect(TokKind::Ident);
        auto e = make_expr(Expr::Kind::Name, id.loc);
        e->name = id.lexeme;
        if (accept(TokKind::Punct, "[")) return parse_bracket_suffix(std::move(e));
        return e;
    }

    // After consuming '[': either an index or a slice.
    ExprPtr parse_bracket_suffix(ExprPtr base) {
        SourceLoc loc = base->loc;
        ExprPtr lo, hi;
        bool is_slice = false;
        if (peek().kind == TokKind::Colon) {
            is_slice = true;
            take();
            if (!peek().is(TokKind::Punct, "]")) hi = parse_expr();
        } else {
            lo = parse_expr();
            if (accept(TokKind::Colon)) {
                is_slice = true;
                if (!peek().is(TokKind::Punct, "]")) hi = parse_expr();
            }
        }
        expect(TokKind::Punct, "]");
        auto e = make_expr(is_slice ? Expr::Kind::Slice : Expr::Kind::Index, loc);
        e->name = base->name;
        e->a = std::move(lo);
        e->b = std::move(hi);
        return e;
    }

    ExprPtr parse_expr() { return parse_cmp(); }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        if (at_end() || peek().kind != TokKind::Punct) return lhs;
        BinOp op;
        const std::string& l = peek().lexeme;
        if (l == "==") op = BinOp::Eq;
        else if (l == "!=") op = BinOp::Ne;
        else if (l == "<") op = BinOp::Lt;
        else if (l == ">") op = BinOp::Gt;
        else if (l == "<=") op = BinOp::Le;
        else if (l == ">=") op = BinOp::Ge;
        else return lhs;
        SourceLoc loc = take().loc;
        ExprPtr rhs = parse_add();
        auto e = make_expr(Expr::Kind::Binary, loc);
        e->op = op;
        e->a = std::move(lhs);
        e->b = std::move(rhs);
        return e;
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (!at_end() && peek().kind == TokKind::Punct &&
               (peek().lexeme == "+" || peek().lexeme == "-")) {
            Token op = take();
            ExprPtr rhs = parse_mul();
            auto e = make_expr(Expr::Kind::Binary, op.loc);
            e->op = op.lexeme == "+" ? BinOp::Add : BinOp::Sub;
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_unary();
        while (!at_end() && peek().kind == TokKind::Punct &&
               (peek().lexeme == "*" || peek().lexeme == "/")) {
            Token op = take();
            ExprPtr rhs = parse_unary();
            auto e = make_expr(Expr::Kind::Binary, op.loc);
            e->op = op.lexeme == "*" ? BinOp::Mul : BinOp::Div;
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (peek().is(TokKind::Punct, "-")) {
            SourceLoc loc = take().loc;
            auto e = make_expr(Expr::Kind::Unary, loc);
            e->a = parse_unary();
            return e;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr prim = parse_primary();
        if (!at_end() && peek().kind == TokKind::Tick) {
            SourceLoc loc = take().loc;
            auto e = make_expr(Expr::Kind::DerivRead, loc);
            e->value = std::move(prim);
            e->denom = parse_var_ref();
            return e;
        }
        return prim;
    }

    ExprPtr parse_primary() {
        if (at_end()) error(last_loc(), "expected an expression, got end of input");
        const Token& t = peek();
        if (t.kind == TokKind::IntLit) {
            Token tok = take();
            auto e = make_expr(Expr::Kind::IntLit, tok.loc);
            e->int_val = std::stoll(tok.lexeme);
            return e;
        }
        if (t.kind == TokKind::RealLit) {
            Token tok = take();
            auto e = make_expr(Expr::Kind::RealLit, tok.loc);
            e->real_val = std::stod(tok.lexeme);
            return e;
        }
        if (t.is(TokKind::Punct, "(")) {
            take();
            ExprPtr e = parse_expr();
            expect(TokKind::Punct, ")");
            return e;
        }
        if (t.kind == TokKind::Ident) {
            if (peek(1).is(TokKind::Punct, "(")) {
                Token id = take();
                take();  // '('
                auto e = make_expr(Expr::Kind::Call, id.loc);
                e->name = id.lexeme;
                if (!peek().is(TokKind::Punct, ")")) {
                    while (true) {
                        e->args.push_back(parse_expr());
                        if (!accept(TokKind::Punct, ",")) break;
                    }
                }
                expect(TokKind::Punct, ")");
                return e;
            }
            return parse_var_ref();
        }
        error(t.loc, "expected an expression, got " + describe(t));
    }
};

inline Program parse(std::vector<Token> tokens, const std::string& file = "<input>") {
    return Parser(std::move(tokens), file).parse();
}

inline Program parse_source(const std::string& source, const std::string& file = "<input>") {
    return Parser(tokenize(source, file), file).parse();
}

}  // namespace landau
