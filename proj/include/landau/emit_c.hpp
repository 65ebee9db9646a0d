#pragma once

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "landau/ast.hpp"
#include "landau/lir.hpp"
#include "landau/sema.hpp"

namespace landau {

namespace detail {

inline bool c_reserved(const std::string& s) {
    static const std::set<std::string> kw = {
        "auto", "break", "case", "char", "const", "continue", "default", "do", "double",
        "else", "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long",
        "register", "restrict", "return", "short", "signed", "sizeof", "static", "struct",
        "switch", "typedef", "union", "unsigned", "void", "volatile", "while",
        // not keywords, but taken in the emitted file
        "ret", "main", "sin", "cos", "tan", "exp", "log", "sqrt", "atan", "sqr_"};
    return kw.count(s) > 0;
}

inline std::string cname(const std::string& s) { return c_reserved(s) ? s + "_" : s; }

class CEmitter {
public:
    CEmitter(const LModule& m, const SemaInfo& sema, const std::string& func_name)
        : m_(m), sema_(sema), func_(func_name) {}

    std::string run() {
        scan_usage(m_.body);
        out_ += "/* generated by the landau compiler */\n";
        out_ += "#include <math.h>\n\n";
        if (uses_sqr_) out_ += "static double sqr_(double x) { return x * x; }\n\n";
        signature();
        out_ += " {\n";
        tables();
        locals();
        body(m_.body, 1);
        if (!m_.body.empty()) {
            const VarInfo& rv = sema_.vars[size_t(sema_.ret_var)];
            indent(1);
            out_ += "for (long long c_ = 0; c_ < " + std::to_string(rv.size) +
                    "; ++c_) ret[c_] = " + vname(sema_.ret_var) + "[c_];\n";
        }
        out_ += "}\n";
        return out_;
    }

private:
    const LModule& m_;
    const SemaInfo& sema_;
    std::string func_;
    std::string out_;
    bool uses_sqr_ = false;
    std::vector<bool> uses_map_, uses_off_, uses_inv_;
    std::set<int> used_vars_, read_vars_;
    std::set<int> read_iregs_;
    int tmp_ = 0;

    // a scalar local that is written but never read would trip
    // -Wunused-but-set-variable, so its declaration and writes are dropped
    bool live_scalar(int var) const {
        const VarInfo& vi = sema_.vars[size_t(var)];
        if (vi.is_array || vi.is_arg) return true;
        return read_vars_.count(var) > 0;
    }
    bool live_ireg(int reg) const { return read_iregs_.count(reg) > 0; }

    void indent(int d) { out_.append(size_t(d) * 4, ' '); }

    std::string vname(int var) const { return "v_" + cname(sema_.vars[size_t(var)].name); }
    std::string dname(int pair) const {
        const PairPlan& pp = m_.plan.pairs[size_t(pair)];
        return "d" + std::to_string(pair) + "_" + sema_.vars[size_t(pp.var)].name + "_" +
               sema_.pvs[size_t(pp.pv)].name;
    }

    // --- usage scan so nothing unused gets declared -----------------------------

    void scan_usage(const LBlock& b) {
        if (uses_map_.empty()) {
            uses_map_.assign(m_.plan.pairs.size(), false);
            uses_off_ = uses_inv_ = uses_map_;
        }
        for (const auto& s : b) {
            if (s->lo) scan_i(*s->lo);
            if (s->hi) scan_i(*s->hi);
            if (s->idx) scan_i(*s->idx);
            if (s->param) scan_i(*s->param);
            if (s->rhs) scan_r(*s->rhs);
            if (s->kind == LStmt::Kind::SetReal) used_vars_.insert(s->id);
            if (s->kind == LStmt::Kind::SetDerivInv) uses_inv_[size_t(s->id)] = true;
            scan_usage(s->body);
            scan_usage(s->els);
        }
    }
    void scan_i(const IExpr& e) {
        if (e.kind == IExpr::Kind::OffRead) uses_off_[size_t(e.id)] = true;
        if (e.kind == IExpr::Kind::MapRead) uses_map_[size_t(e.id)] = true;
        if (e.kind == IExpr::Kind::InvRead) uses_inv_[size_t(e.id)] = true;
        if (e.kind == IExpr::Kind::IntVar) read_iregs_.insert(e.id);
        if (e.a) scan_i(*e.a);
        if (e.b) scan_i(*e.b);
    }
    void scan_r(const RExpr& e) {
        if (e.kind == RExpr::Kind::Read) {
            used_vars_.insert(e.id);
            read_vars_.insert(e.id);
        }
        if (e.kind == RExpr::Kind::Call && e.fn == Builtin::Sqr) uses_sqr_ = true;
        if (e.idx) scan_i(*e.idx);
        if (e.x) scan_r(*e.x);
        if (e.y) scan_r(*e.y);
    }

    // --- declarations ------------------------------------------------------------

    void signature() {
        out_ += "void " + cname(func_) + "(double* ret";
        for (size_t v = 0; v < sema_.vars.size(); ++v) {
            const VarInfo& vi = sema_.vars[v];
            if (!vi.is_arg) continue;
            out_ += vi.is_array ? ", const double* " + cname(vi.name)
                                : ", double " + cname(vi.name);
        }
        out_ += ")";
    }

    void tables() {
        for (size_t p = 0; p < m_.plan.pairs.size(); ++p) {
            const PairPlan& pp = m_.plan.pairs[p];
            if (uses_off_[p]) int_table("off" + std::to_string(p), pp.offsets);
            if (uses_map_[p]) int_table("map" + std::to_string(p), pp.map);
            if (uses_inv_[p]) int_table("inv" + std::to_string(p), pp.inv);
        }
    }

    void int_table(const std::string& name, const std::vector<int>& v) {
        indent(1);
        out_ += "static const int " + name + "[] = {";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out_ += ",";
            if (i % 20 == 0 && v.size() > 20) {
                out_ += "\n";
                indent(2);
            } else if (i) {
                out_ += " ";
            }
            out_ += std::to_string(v[i]);
        }
        out_ += "};\n";
    }

    void locals() {
        bool ret_used = used_vars_.count(sema_.ret_var) || !m_.body.empty();
        if (!ret_used) {
            indent(1);
            out_ += "(void)ret;\n";
        }
        for (size_t v = 0; v < sema_.vars.size(); ++v) {
            const VarInfo& vi = sema_.vars[v];
            if (vi.is_int) continue;
            if (vi.is_arg) {
                if (!used_vars_.count(int(v))) {
                    indent(1);
                    out_ += "(void)" + cname(vi.name) + ";\n";
                }
                continue;
            }
            bool used = used_vars_.count(int(v)) || (vi.is_return && !m_.body.empty());
            if (!used || !live_scalar(int(v))) continue;
            indent(1);
            out_ += vi.is_array
                        ? "double " + vname(int(v)) + "[" + std::to_string(vi.size) + "] = {0};\n"
                        : "double " + vname(int(v)) + " = 0;\n";
        }
        for (size_t p = 0; p < m_.plan.pairs.size(); ++p) {
            indent(1);
            out_ += "double " + dname(int(p)) + "[" +
                    std::to_string(m_.plan.pairs[p].total + 1) + "] = {0};\n";
        }
        for (int r : read_iregs_) {
            indent(1);
            out_ += "long long r" + std::to_string(r) + " = 0;\n";
        }
    }

    // --- expressions ---------------------------------------------------------------

    std::string iexpr(const IExpr& e) {
        switch (e.kind) {
            case IExpr::Kind::Const: return std::to_string(e.cval);
            case IExpr::Kind::LoopVar: return "l" + std::to_string(e.id);
            case IExpr::Kind::IntVar: return "r" + std::to_string(e.id);
            case IExpr::Kind::OffRead:
                return "off" + std::to_string(e.id) + "[" + iexpr(*e.a) + "]";
            case IExpr::Kind::MapRead:
                return "map" + std::to_string(e.id) + "[" + iexpr(*e.a) + "]";
            case IExpr::Kind::InvRead:
                return "inv" + std::to_string(e.id) + "[(" + iexpr(*e.a) + ") * " +
                       std::to_string(m_.plan.pairs[size_t(e.id)].hrow) + " + (" + iexpr(*e.b) +
                       ")]";
            case IExpr::Kind::Bin: {
                const char* op = "+";
                switch (e.op) {
                    case IOp::Add: op = "+"; break;
                    case IOp::Sub: op = "-"; break;
                    case IOp::Mul: op = "*"; break;
                    case IOp::Div: op = "/"; break;
                    case IOp::Mod: op = "%"; break;
                    case IOp::Eq: op = "=="; break;
                    case IOp::Ne: op = "!="; break;
                    case IOp::Lt: op = "<"; break;
                    case IOp::Gt: op = ">"; break;
                    case IOp::Le: op = "<="; break;
                    case IOp::Ge: op = ">="; break;
                }
                return "(" + iexpr(*e.a) + " " + op + " " + iexpr(*e.b) + ")";
            }
        }
        return "0";
    }

    static std::string dlit(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        std::string s = buf;
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        return s;
    }

    std::string rexpr(const RExpr& e) {
        switch (e.kind) {
            case RExpr::Kind::Const: return dlit(e.cval);
            case RExpr::Kind::Read: {
                const VarInfo& vi = sema_.vars[size_t(e.id)];
                std::string base = vi.is_arg ? cname(vi.name) : vname(e.id);
                if (!vi.is_array) return base;
                return base + "[" + iexpr(*e.idx) + "]";
            }
            case RExpr::Kind::DRead:
                return dname(e.id) + "[" + iexpr(*e.idx) + "]";
            case RExpr::Kind::Neg:
                return "(-" + rexpr(*e.x) + ")";
            case RExpr::Kind::FromInt:
                return "(double)(" + iexpr(*e.idx) + ")";
            case RExpr::Kind::Call:
                if (e.fn == Builtin::Sqr) return "sqr_(" + rexpr(*e.x) + ")";
                return std::string(builtin_name(e.fn)) + "(" + rexpr(*e.x) + ")";
            case RExpr::Kind::Bin: {
                const char* op = "+";
                switch (e.op) {
                    case ROp::Add: op = "+"; break;
                    case ROp::Sub: op = "-"; break;
                    case ROp::Mul: op = "*"; break;
                    case ROp::Div: op = "/"; break;
                }
                return "(" + rexpr(*e.x) + " " + op + " " + rexpr(*e.y) + ")";
            }
        }
        return "0";
    }

    // --- statements -----------------------------------------------------------------

    void body(const LBlock& b, int d) {
        for (const auto& s : b) stmt(*s, d);
    }

    void stmt(const LStmt& s, int d) {
        switch (s.kind) {
            case LStmt::Kind::Loop: {
                indent(d);
                std::string v = "l" + std::to_string(s.id);
                out_ += "for (long long " + v + " = " + iexpr(*s.lo) + "; " + v + " < " +
                        iexpr(*s.hi) + "; ++" + v + ") {\n";
                body(s.body, d + 1);
                indent(d);
                out_ += "}\n";
                return;
            }
            case LStmt::Kind::If: {
                indent(d);
                out_ += "if (" + iexpr(*s.lo) + ") {\n";
                body(s.body, d + 1);
                indent(d);
                if (!s.els.empty()) {
                    out_ += "} else {\n";
                    body(s.els, d + 1);
                    indent(d);
                }
                out_ += "}\n";
                return;
            }
            case LStmt::Kind::SetInt:
                if (!live_ireg(s.id)) return;
                indent(d);
                out_ += "r" + std::to_string(s.id) + " = " + iexpr(*s.lo) + ";\n";
                return;
            case LStmt::Kind::SetReal: {
                if (!live_scalar(s.id)) return;
                indent(d);
                const VarInfo& vi = sema_.vars[size_t(s.id)];
                std::string lhs = vi.is_array ? vname(s.id) + "[" + iexpr(*s.idx) + "]"
                                              : vname(s.id);
                out_ += lhs + (s.plus ? " += " : " = ") + rexpr(*s.rhs) + ";\n";
                return;
            }
            case LStmt::Kind::SetDeriv:
                indent(d);
                out_ += dname(s.id) + "[" + iexpr(*s.idx) + "]" + (s.plus ? " += " : " = ") +
                        rexpr(*s.rhs) + ";\n";
                return;
            case LStmt::Kind::SetDerivInv: {
                const PairPlan& pp = m_.plan.pairs[size_t(s.id)];
                std::string t = "s" + std::to_string(tmp_++);
                indent(d);
                out_ += "{\n";
                indent(d + 1);
                out_ += "int " + t + " = inv" + std::to_string(s.id) + "[(" + iexpr(*s.idx) +
                        ") * " + std::to_string(pp.hrow) + " + (" + iexpr(*s.param) + ")];\n";
                indent(d + 1);
                out_ += "if (" + t + " != " + std::to_string(pp.total) + ") " + dname(s.id) +
                        "[" + t + "] = " + rexpr(*s.rhs) + ";\n";
                indent(d);
                out_ += "}\n";
                return;
            }
        }
    }
};

}  // namespace detail

// Portable C99 backend: one translation unit, math.h only.
inline std::string emit_c(const LModule& m, const SemaInfo& sema, const std::string& func_name) {
    return detail::CEmitter(m, sema, func_name).run();
}

// Symbol the emitted function ends up with (source names that collide with C
// keywords or names taken in the generated file get a trailing underscore).
inline std::string c_symbol_name(const std::string& func_name) {
    return detail::cname(func_name);
}

}  // namespace landau
