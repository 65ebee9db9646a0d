#pragma once

#include <cstdio>
#include <string>

#include "landau/ast.hpp"

namespace landau {

// Source renderer. parse(print(tree)) is structurally identical to tree,
// which the tests check by printing twice.
class Printer {
public:
    std::string print(const Program& p) {
        out_ = "#lang landau\n\n";
        for (const auto& c : p.consts) {
            out_ += "const int " + c.name + " = " + expr(*c.value) + "\n";
        }
        for (const auto& d : p.params) {
            out_ += "parameter[" + expr(*d.size) + "] " + d.name + "\n";
        }
        out_ += "real[" + expr(*p.func.ret_size) + "] " + p.func.name + "(";
        for (size_t i = 0; i < p.func.args.size(); ++i) {
            if (i) out_ += ", ";
            const ArgDecl& a = p.func.args[i];
            out_ += a.is_array ? "real[" + expr(*a.size) + "] " + a.name : "real " + a.name;
        }
        out_ += ") {\n";
        block(p.func.body, 1);
        out_ += "}\n";
        return out_;
    }

    std::string expr(const Expr& e, int parent_prec = 0) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return std::to_string(e.int_val);
            case Expr::Kind::RealLit: {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.17g", e.real_val);
                std::string s = buf;
                if (s.find_first_of(".eE") == std::string::npos) s += ".0";
                return s;
            }
            case Expr::Kind::Name:
                return e.name;
            case Expr::Kind::Index:
                return e.name + "[" + expr(*e.a) + "]";
            case Expr::Kind::Slice:
                return e.name + "[" + (e.a ? expr(*e.a) : "") + " : " + (e.b ? expr(*e.b) : "") + "]";
            case Expr::Kind::Unary:
                return paren("-" + expr(*e.a, 3), parent_prec > 3);
            case Expr::Kind::Binary: {
                int prec = precedence(e.op);
                std::string s = expr(*e.a, prec) + " " + bin_op_text(e.op) + " " + expr(*e.b, prec + 1);
                return paren(std::move(s), parent_prec > prec);
            }
            case Expr::Kind::Call: {
                std::string s = e.name + "(";
                for (size_t i = 0; i < e.args.size(); ++i) {
                    if (i) s += ", ";
                    s += expr(*e.args[i]);
                }
                return s + ")";
            }
            case Expr::Kind::DerivRead:
                return paren(expr(*e.value, 4) + " ' " + expr(*e.denom, 4), parent_prec > 0);
        }
        return "?";
    }

private:
    std::string out_;

    static int precedence(BinOp op) {
        switch (op) {
            case BinOp::Mul: case BinOp::Div: return 2;
            case BinOp::Add: case BinOp::Sub: return 1;
            default: return 0;  // comparisons
        }
    }
    static std::string paren(std::string s, bool need) {
        return need ? "(" + std::move(s) + ")" : std::move(s);
    }

    void indent(int depth) { out_.append(size_t(depth) * 2, ' '); }

    void block(const Block& b, int depth) {
        for (const auto& s : b) stmt(*s, depth);
    }

    void stmt(const Stmt& s, int depth) {
        indent(depth);
        switch (s.kind) {
            case Stmt::Kind::VarDecl:
                out_ += s.decl_is_int ? "int" : "real";
                if (s.decl_size) out_ += "[" + expr(*s.decl_size) + "]";
                out_ += " " + s.name;
                if (s.init) out_ += " = " + expr(*s.init);
                out_ += "\n";
                break;
            case Stmt::Kind::Assign:
                out_ += expr(*s.lhs) + (s.plus_assign ? " += " : " = ") + expr(*s.rhs) + "\n";
                break;
            case Stmt::Kind::DerivAssign:
                out_ += expr(*s.lhs) + " ' " + expr(*s.denom) + " = " + expr(*s.rhs) + "\n";
                break;
            case Stmt::Kind::Discard:
                out_ += "discard " + s.name + " ' " + s.denom_name + "\n";
                break;
            case Stmt::Kind::For:
                out_ += "for " + s.name + " = [" + expr(*s.lo) + " : " + expr(*s.hi) + "] {\n";
                block(s.body, depth + 1);
                indent(depth);
                out_ += "}\n";
                break;
            case Stmt::Kind::If:
                out_ += "if (" + expr(*s.cond) + ") {\n";
                block(s.body, depth + 1);
                indent(depth);
                if (!s.else_body.empty()) {
                    out_ += "} else {\n";
                    block(s.else_body, depth + 1);
                    indent(depth);
                }
                out_ += "}\n";
                break;
        }
    }
};

inline std::string pretty_print(const Program& p) { return Printer().print(p); }

}  // namespace landau
