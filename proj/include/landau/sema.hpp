#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "landau/ast.hpp"
#include "landau/parser.hpp"

namespace landau {

// Integer values of every `const int`, in declaration order.
struct ConstEnv {
    std::vector<std::pair<std::string, long long>> entries;

    std::optional<long long> lookup(const std::string& name) const {
        for (const auto& [n, v] : entries)
            if (n == name) return v;
        return std::nullopt;
    }
};

struct VarInfo {
    std::string name;
    int size = 1;          // cells; 1 for scalars
    bool is_array = false;
    bool is_int = false;   // integer scalar variable
    bool is_arg = false;
    int arg_index = -1;
    bool is_return = false;
    int int_reg = -1;      // register slot for integer variables
    SourceLoc loc;
};

// A differentiation denominator: a declared parameter vector, or a real
// scalar argument used to the right of '.
struct ParamVec {
    std::string name;
    int size = 1;  // H
    bool scalar_arg = false;
    int arg_var = -1;  // var id of the scalar argument, when scalar_arg
};

struct SemaInfo {
    ConstEnv consts;
    std::vector<VarInfo> vars;
    std::vector<ParamVec> pvs;
    int ret_var = -1;
    int n_loop_regs = 0;  // loop indices; integer variables get regs after these
    int n_int_regs = 0;   // loop regs + int var regs
    std::set<std::pair<int, int>> discards;  // (var, pv)

    int var_by_name(const std::string& n) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == n) return int(i);
        return -1;
    }
    int pv_by_name(const std::string& n) const {
        for (size_t i = 0; i < pvs.size(); ++i)
            if (pvs[i].name == n) return int(i);
        return -1;
    }
    // Integer registers: loop indices occupy [0, n_loop_regs), integer
    // variables follow at n_loop_regs + VarInfo::int_reg.
    int int_var_reg(int var_id) const { return n_loop_regs + vars[size_t(var_id)].int_reg; }
};

// Evaluate an integer-typed, sema-annotated expression. `regs` supplies loop
// index and integer variable values; null entries in it are never touched for
// well-typed programs.
template <class RegFn>
long long eval_int_expr(const Expr& e, const ConstEnv& env, RegFn&& regs, const std::string& file) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
            return e.int_val;
        case Expr::Kind::Name:
            if (e.const_id >= 0) return env.entries[size_t(e.const_id)].second;
            return regs(e);
        case Expr::Kind::Unary:
            return -eval_int_expr(*e.a, env, regs, file);
        case Expr::Kind::Binary: {
            long long l = eval_int_expr(*e.a, env, regs, file);
            long long r = eval_int_expr(*e.b, env, regs, file);
            switch (e.op) {
                case BinOp::Add: return l + r;
                case BinOp::Sub: return l - r;
                case BinOp::Mul: return l * r;
                case BinOp::Div:
                    if (r == 0) throw CompileError(file, e.loc, "constant division by zero");
                    return l / r;
                case BinOp::Eq: return l == r;
                case BinOp::Ne: return l != r;
                case BinOp::Lt: return l < r;
                case BinOp::Gt: return l > r;
                case BinOp::Le: return l <= r;
                case BinOp::Ge: return l >= r;
            }
            return 0;
        }
        default:
            throw CompileError(file, e.loc, "expression is not integer-valued");
    }
}

namespace detail {

class Checker {
public:
    Checker(Program& prog) : p_(prog) {}

    SemaInfo run() {
        fold_constants();
        declare_params();
        declare_function();
        scan_scalar_arg_denoms(p_.func.body);
        check_block(p_.func.body);
        info_.n_int_regs = info_.n_loop_regs + n_int_vars_;
        return std::move(info_);
    }

private:
    Program& p_;
    SemaInfo info_;
    int n_int_vars_ = 0;

    struct ScopeEntry {
        enum Kind { Const, Param, Var, Loop } kind;
        int id;
    };
    std::map<std::string, ScopeEntry> scope_;
    std::vector<std::vector<std::string>> scope_frames_{1};

    [[noreturn]] void error(SourceLoc loc, const std::string& msg) const {
        throw CompileError(p_.file, loc, msg);
    }

    void declare(const std::string& name, ScopeEntry entry, SourceLoc loc) {
        if (scope_.count(name)) error(loc, "duplicated declaration name '" + name + "'");
        scope_[name] = entry;
        scope_frames_.back().push_back(name);
    }
    void push_frame() { scope_frames_.emplace_back(); }
    void pop_frame() {
        for (const std::string& n : scope_frames_.back()) scope_.erase(n);
        scope_frames_.pop_back();
    }

    // --- constant folding ----------------------------------------------------

    long long fold_const_expr(const Expr& e, const char* what) {
        // Only literals, previously folded constants and integer arithmetic.
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return e.int_val;
            case Expr::Kind::Name: {
                auto v = info_.consts.lookup(e.name);
                if (!v) error(e.loc, std::string("non-constant expression in a ") + what + " position");
                return *v;
            }
            case Expr::Kind::Unary:
                return -fold_const_expr(*e.a, what);
            case Expr::Kind::Binary: {
                long long l = fold_const_expr(*e.a, what);
                long long r = fold_const_expr(*e.b, what);
                switch (e.op) {
                    case BinOp::Add: return l + r;
                    case BinOp::Sub: return l - r;
                    case BinOp::Mul: return l * r;
                    case BinOp::Div:
                        if (r == 0) error(e.loc, "constant division by zero");
                        return l / r;
                    case BinOp::Eq: return l == r;
                    case BinOp::Ne: return l != r;
                    case BinOp::Lt: return l < r;
                    case BinOp::Gt: return l > r;
                    case BinOp::Le: return l <= r;
                    case BinOp::Ge: return l >= r;
                }
                return 0;
            }
            default:
                error(e.loc, std::string("non-constant expression in a ") + what + " position");
        }
    }

    void fold_constants() {
        for (auto& c : p_.consts) {
            c.folded = fold_const_expr(*c.value, "constant initializer");
            info_.consts.entries.emplace_back(c.name, c.folded);
            declare(c.name, {ScopeEntry::Const, int(info_.consts.entries.size()) - 1}, c.loc);
        }
    }

    int fold_size(const Expr& e, const char* what) {
        long long v = fold_const_expr(e, what);
        if (v < 0) error(e.loc, "negative array size");
        if (v > (1 << 26)) error(e.loc, "array size too large");
        return int(v);
    }

    // --- declarations --------------------------------------------------------

    void declare_params() {
        for (auto& d : p_.params) {
            d.folded_size = fold_size(*d.size, "size");
            info_.pvs.push_back(ParamVec{d.name, d.folded_size, false, -1});
            declare(d.name, {ScopeEntry::Param, int(info_.pvs.size()) - 1}, d.loc);
        }
    }

    int add_var(VarInfo v, SourceLoc loc) {
        info_.vars.push_back(v);
        int id = int(info_.vars.size()) - 1;
        declare(v.name, {ScopeEntry::Var, id}, loc);
        return id;
    }

    void declare_function() {
        FuncDecl& f = p_.func;
        f.folded_ret_size = fold_size(*f.ret_size, "size");
        info_.ret_var = add_var(VarInfo{f.name, f.folded_ret_size, true, false, false, -1, true, -1, f.loc}, f.loc);
        for (size_t i = 0; i < f.args.size(); ++i) {
            ArgDecl& a = f.args[i];
            if (a.is_array) a.folded_size = fold_size(*a.size, "size");
            add_var(VarInfo{a.name, a.folded_size, a.is_array, false, true, int(i), false, -1, a.loc}, a.loc);
        }
    }

    // Scalar arguments used as derivative denominators become parameter
    // vectors of length 1, in argument order.
    void scan_scalar_arg_denoms(const Block& b) {
        std::set<std::string> used;
        collect_denom_names(b, used);
        for (size_t i = 0; i < p_.func.args.size(); ++i) {
            const ArgDecl& a = p_.func.args[i];
            if (!a.is_array && used.count(a.name)) {
                int var = info_.var_by_name(a.name);
                info_.pvs.push_back(ParamVec{a.name, 1, true, var});
            }
        }
    }
    void collect_denom_names(const Block& b, std::set<std::string>& out) {
        for (const auto& s : b) {
            if (s->kind == Stmt::Kind::DerivAssign) out.insert(s->denom->name);
            if (s->kind == Stmt::Kind::Discard) out.insert(s->denom_name);
            if (s->rhs) collect_denom_names_expr(*s->rhs, out);
            if (s->init) collect_denom_names_expr(*s->init, out);
            if (s->cond) collect_denom_names_expr(*s->cond, out);
            if (s->lo) collect_denom_names_expr(*s->lo, out);
            if (s->hi) collect_denom_names_expr(*s->hi, out);
            collect_denom_names(s->body, out);
            collect_denom_names(s->else_body, out);
        }
    }
    void collect_denom_names_expr(const Expr& e, std::set<std::string>& out) {
        if (e.kind == Expr::Kind::DerivRead) out.insert(e.denom->name);
        if (e.a) collect_denom_names_expr(*e.a, out);
        if (e.b) collect_denom_names_expr(*e.b, out);
        if (e.value) collect_denom_names_expr(*e.value, out);
        for (const auto& arg : e.args) collect_denom_names_expr(*arg, out);
    }

    // --- folding helper over annotated expressions ---------------------------

    // Folds when the expression only involves literals and constants.
    std::optional<long long> try_fold(Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return e.int_val;
            case Expr::Kind::Name:
                if (e.const_id >= 0) return info_.consts.entries[size_t(e.const_id)].second;
                return std::nullopt;
            case Expr::Kind::Unary: {
                auto v = e.a ? try_fold(*e.a) : std::nullopt;
                if (v) return -*v;
                return std::nullopt;
            }
            case Expr::Kind::Binary: {
                if (!e.type.is_int()) return std::nullopt;
                auto l = try_fold(*e.a), r = try_fold(*e.b);
                if (!l || !r) return std::nullopt;
                switch (e.op) {
                    case BinOp::Add: return *l + *r;
                    case BinOp::Sub: return *l - *r;
                    case BinOp::Mul: return *l * *r;
                    case BinOp::Div:
                        if (*r == 0) error(e.loc, "constant division by zero");
                        return *l / *r;
                    case BinOp::Eq: return *l == *r;
                    case BinOp::Ne: return *l != *r;
                    case BinOp::Lt: return *l < *r;
                    case BinOp::Gt: return *l > *r;
                    case BinOp::Le: return *l <= *r;
                    case BinOp::Ge: return *l >= *r;
                }
                return std::nullopt;
            }
            default:
                return std::nullopt;
        }
    }

    // --- expression typing ----------------------------------------------------

    ExprPtr make_int_lit(long long v, SourceLoc loc) {
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::IntLit;
        e->loc = loc;
        e->int_val = v;
        e->type = SemType{SemType::Kind::Int, 1};
        return e;
    }

    void check_int(Expr& e, const char* ctx) {
        check_expr(e);
        if (!e.type.is_int()) error(e.loc, std::string("real in ") + ctx);
    }

    // Resolve a Name/Index/Slice as a reference to a real variable. Fills
    // missing slice bounds and checks foldable indices against the size.
    void check_var_ref(Expr& e, bool value_context) {
        auto it = scope_.find(e.name);
        if (it == scope_.end()) error(e.loc, "unknown name '" + e.name + "'");
        const ScopeEntry& se = it->second;
        if (se.kind == ScopeEntry::Param) {
            if (value_context) error(e.loc, "parameter '" + e.name + "' cannot be used as a value");
            error(e.loc, "internal: parameter reference outside denominator");
        }
        if (se.kind == ScopeEntry::Const || se.kind == ScopeEntry::Loop)
            error(e.loc, "'" + e.name + "' is not a real variable");
        const VarInfo& v = info_.vars[size_t(se.id)];
        if (v.is_int) error(e.loc, "'" + e.name + "' is not a real variable");
        e.var_id = se.id;
        finish_array_ref(e, v.size, v.is_array);
    }

    void finish_array_ref(Expr& e, int size, bool is_array) {
        if (e.kind == Expr::Kind::Name) {
            if (is_array) {
                // bare array name reads the whole array
                e.kind = Expr::Kind::Slice;
                e.a = make_int_lit(0, e.loc);
                e.b = make_int_lit(size, e.loc);
                e.type = SemType{SemType::Kind::Vec, size};
            } else {
                e.type = SemType{SemType::Kind::Real, 1};
            }
            return;
        }
        if (!is_array) error(e.loc, "'" + e.name + "' is not an array");
        if (e.kind == Expr::Kind::Index) {
            check_int(*e.a, "index expression");
            if (auto v = try_fold(*e.a)) {
                if (*v < 0 || *v >= size)
                    error(e.loc, "index out of bounds: " + e.name + "[" + std::to_string(*v) +
                                     "], size " + std::to_string(size));
            }
            e.type = SemType{SemType::Kind::Real, 1};
            return;
        }
        // Slice
        if (!e.a) e.a = make_int_lit(0, e.loc);
        if (!e.b) e.b = make_int_lit(size, e.loc);
        check_int(*e.a, "slice bound");
        check_int(*e.b, "slice bound");
        auto lo = try_fold(*e.a), hi = try_fold(*e.b);
        int len = -1;
        if (lo && (*lo < 0 || *lo > size))
            error(e.loc, "slice bound out of range in '" + e.name + "'");
        if (hi && (*hi < 0 || *hi > size))
            error(e.loc, "slice bound out of range in '" + e.name + "'");
        if (lo && hi) {
            if (*lo > *hi) error(e.loc, "reversed slice bounds in '" + e.name + "'");
            len = int(*hi - *lo);
        }
        e.type = SemType{SemType::Kind::Vec, len};
    }

    // Denominator of ' : parameter vector (whole, cell or slice) or a real
    // scalar argument. Returns the pv id; annotates the node.
    int check_denom(Expr& e) {
        auto it = scope_.find(e.name);
        if (it == scope_.end()) error(e.loc, "unknown name '" + e.name + "'");
        const ScopeEntry& se = it->second;
        if (se.kind == ScopeEntry::Param) {
            int pv = info_.pv_by_name(e.name);
            e.pv_id = pv;
            finish_array_ref(e, info_.pvs[size_t(pv)].size, true);
            return pv;
        }
        if (se.kind == ScopeEntry::Var) {
            const VarInfo& v = info_.vars[size_t(se.id)];
            if (v.is_arg && !v.is_array && !v.is_int) {
                int pv = info_.pv_by_name(e.name);
                if (pv < 0) error(e.loc, "internal: unregistered scalar denominator");
                if (e.kind != Expr::Kind::Name)
                    error(e.loc, "scalar argument '" + e.name + "' cannot be indexed");
                e.pv_id = pv;
                e.type = SemType{SemType::Kind::Real, 1};
                return pv;
            }
        }
        error(e.loc, "derivative denominator must be a parameter or a real scalar argument, got '" +
                         e.name + "'");
    }

    static int vec_len_of(const SemType& t) { return t.is_vec() ? t.len : 1; }

    void check_expr(Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                e.type = SemType{SemType::Kind::Int, 1};
                return;
            case Expr::Kind::RealLit:
                e.type = SemType{SemType::Kind::Real, 1};
                return;
            case Expr::Kind::Name: {
                auto it = scope_.find(e.name);
                if (it == scope_.end()) error(e.loc, "unknown name '" + e.name + "'");
                const ScopeEntry& se = it->second;
                switch (se.kind) {
                    case ScopeEntry::Const:
                        e.const_id = se.id;
                        e.type = SemType{SemType::Kind::Int, 1};
                        return;
                    case ScopeEntry::Loop:
                        e.loop_id = se.id;
                        e.type = SemType{SemType::Kind::Int, 1};
                        return;
                    case ScopeEntry::Param:
                        error(e.loc, "parameter '" + e.name + "' cannot be used as a value");
                    case ScopeEntry::Var: {
                        const VarInfo& v = info_.vars[size_t(se.id)];
                        e.var_id = se.id;
                        if (v.is_int) {
                            e.type = SemType{SemType::Kind::Int, 1};
                            return;
                        }
                        finish_array_ref(e, v.size, v.is_array);
                        return;
                    }
                }
                return;
            }
            case Expr::Kind::Index:
            case Expr::Kind::Slice:
                check_var_ref(e, true);
                return;
            case Expr::Kind::Unary:
                check_expr(*e.a);
                e.type = e.a->type;
                return;
            case Expr::Kind::Binary: {
                check_expr(*e.a);
                check_expr(*e.b);
                const SemType& l = e.a->type;
                const SemType& r = e.b->type;
                bool cmp = e.op != BinOp::Add && e.op != BinOp::Sub && e.op != BinOp::Mul &&
                           e.op != BinOp::Div;
                if (cmp) {
                    if (!l.is_int() || !r.is_int())
                        error(e.loc, "real in condition: comparison requires integer operands");
                    e.type = SemType{SemType::Kind::Int, 1};
                    return;
                }
                if (l.is_int() && r.is_int()) {
                    e.type = SemType{SemType::Kind::Int, 1};
                    return;
                }
                if (l.is_vec() && r.is_vec()) {
                    if (l.len >= 0 && r.len >= 0 && l.len != r.len)
                        error(e.loc, "length mismatch in elementwise expression: " +
                                         std::to_string(l.len) + " vs " + std::to_string(r.len));
                    e.type = SemType{SemType::Kind::Vec, l.len >= 0 ? l.len : r.len};
                    return;
                }
                if (l.is_vec() || r.is_vec()) {
                    e.type = SemType{SemType::Kind::Vec, l.is_vec() ? l.len : r.len};
                    return;
                }
                e.type = SemType{SemType::Kind::Real, 1};
                return;
            }
            case Expr::Kind::Call: {
                if (!is_builtin_name(e.name)) error(e.loc, "unknown function '" + e.name + "'");
                if (e.args.size() != 1)
                    error(e.loc, "'" + e.name + "' takes exactly one argument");
                check_expr(*e.args[0]);
                if (e.args[0]->type.is_vec())
                    error(e.loc, "builtin functions take scalar arguments");
                e.type = SemType{SemType::Kind::Real, 1};
                return;
            }
            case Expr::Kind::DerivRead: {
                if (e.value->kind == Expr::Kind::Call || e.value->kind == Expr::Kind::Binary ||
                    e.value->kind == Expr::Kind::Unary)
                    error(e.loc, "derivative of a compound expression; apply ' to a variable");
                check_var_ref(*e.value, true);
                if (e.value->type.is_int()) error(e.loc, "derivative of an integer");
                e.pv_id = check_denom(*e.denom);
                int vlen = vec_len_of(e.value->type);
                int plen = vec_len_of(e.denom->type);
                if (e.value->type.is_real() && e.denom->type.is_real())
                    e.type = SemType{SemType::Kind::Real, 1};
                else if (vlen >= 0 && plen >= 0)
                    e.type = SemType{SemType::Kind::Vec, vlen * plen};
                else
                    e.type = SemType{SemType::Kind::Vec, -1};
                return;
            }
        }
    }

    // --- statements -----------------------------------------------------------

    void check_block(Block& b) {
        push_frame();
        for (auto& s : b) check_stmt(*s);
        pop_frame();
    }

    void check_real_condition_free(const Expr& e) {
        if (!e.type.is_int() && e.kind != Expr::Kind::IntLit)
            error(e.loc, "real in condition");
        if (e.a) check_real_condition_free(*e.a);
        if (e.b) check_real_condition_free(*e.b);
    }

    void check_assign_lengths(const Expr& lhs_like, int expected, const Expr& rhs, SourceLoc loc) {
        (void)lhs_like;
        if (rhs.type.is_vec() && rhs.type.len >= 0 && expected >= 0 && rhs.type.len != expected)
            error(loc, "slice length mismatch: left side has length " + std::to_string(expected) +
                           ", right side " + std::to_string(rhs.type.len));
    }

    void check_stmt(Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::VarDecl: {
                VarInfo v;
                v.name = s.name;
                v.loc = s.loc;
                v.is_int = s.decl_is_int;
                if (s.decl_size) {
                    v.is_array = true;
                    v.size = fold_size(*s.decl_size, "size");
                }
                if (s.init) {
                    check_expr(*s.init);
                    if (v.is_int) {
                        if (!s.init->type.is_int())
                            error(s.loc, "integer variable initialized with a real expression");
                    } else if (v.is_array) {
                        check_assign_lengths(*s.init, v.size, *s.init, s.loc);
                    } else if (s.init->type.is_vec()) {
                        error(s.loc, "scalar variable initialized with an array expression");
                    }
                }
                s.var_id = add_var(v, s.loc);
                if (v.is_int) {
                    info_.vars[size_t(s.var_id)].int_reg = n_int_vars_++;
                }
                return;
            }
            case Stmt::Kind::Assign: {
                // integer variable assignment?
                if (s.lhs->kind == Expr::Kind::Name) {
                    auto it = scope_.find(s.lhs->name);
                    if (it != scope_.end() && it->second.kind == ScopeEntry::Var &&
                        info_.vars[size_t(it->second.id)].is_int) {
                        if (s.plus_assign) error(s.loc, "'+=' requires a real left-hand side");
                        s.lhs->var_id = it->second.id;
                        s.lhs->type = SemType{SemType::Kind::Int, 1};
                        check_expr(*s.rhs);
                        if (!s.rhs->type.is_int())
                            error(s.loc, "integer variable assigned a real expression");
                        return;
                    }
                    if (it != scope_.end() && it->second.kind == ScopeEntry::Loop)
                        error(s.loc, "loop index '" + s.lhs->name + "' is immutable");
                }
                check_var_ref(*s.lhs, true);
                const VarInfo& v = info_.vars[size_t(s.lhs->var_id)];
                if (v.is_arg) error(s.loc, "cannot assign to function argument '" + v.name + "'");
                check_expr(*s.rhs);
                if (s.rhs->type.is_vec() && !s.lhs->type.is_vec())
                    error(s.loc, "array expression assigned to a scalar");
                if (s.lhs->type.is_vec())
                    check_assign_lengths(*s.lhs, s.lhs->type.len, *s.rhs, s.loc);
                return;
            }
            case Stmt::Kind::DerivAssign: {
                check_var_ref(*s.lhs, true);
                if (s.lhs->type.is_int()) error(s.loc, "derivative of an integer");
                s.pv_id = check_denom(*s.denom);
                check_expr(*s.rhs);
                int vlen = vec_len_of(s.lhs->type);
                int plen = vec_len_of(s.denom->type);
                if (s.rhs->type.is_vec() && vlen >= 0 && plen >= 0)
                    check_assign_lengths(*s.lhs, vlen * plen, *s.rhs, s.loc);
                return;
            }
            case Stmt::Kind::Discard: {
                auto it = scope_.find(s.name);
                if (it == scope_.end()) error(s.loc, "unknown name '" + s.name + "'");
                if (it->second.kind != ScopeEntry::Var ||
                    info_.vars[size_t(it->second.id)].is_int)
                    error(s.loc, "discard applies to real variables, got '" + s.name + "'");
                s.var_id = it->second.id;
                auto dn = scope_.find(s.denom_name);
                if (dn == scope_.end()) error(s.loc, "unknown name '" + s.denom_name + "'");
                s.pv_id = info_.pv_by_name(s.denom_name);
                if (s.pv_id < 0 ||
                    (dn->second.kind != ScopeEntry::Param &&
                     !(dn->second.kind == ScopeEntry::Var && info_.pvs[size_t(s.pv_id)].scalar_arg)))
                    error(s.loc, "discard denominator must be a parameter or a real scalar argument");
                info_.discards.insert({s.var_id, s.pv_id});
                return;
            }
            case Stmt::Kind::For: {
                check_int(*s.lo, "loop bound");
                check_int(*s.hi, "loop bound");
                auto lo = try_fold(*s.lo), hi = try_fold(*s.hi);
                if (lo && hi && *hi < *lo) error(s.loc, "reversed loop bounds");
                push_frame();
                s.loop_id = info_.n_loop_regs++;
                declare(s.name, {ScopeEntry::Loop, s.loop_id}, s.loc);
                for (auto& st : s.body) check_stmt(*st);
                pop_frame();
                return;
            }
            case Stmt::Kind::If: {
                check_expr(*s.cond);
                check_real_condition_free(*s.cond);
                if (!s.cond->type.is_int()) error(s.loc, "real in condition");
                check_block(s.body);
                check_block(s.else_body);
                return;
            }
        }
    }
};

}  // namespace detail

// Runs constant folding and typechecking; annotates the tree in place.
inline SemaInfo analyze(Program& prog) { return detail::Checker(prog).run(); }

// Convenience for callers that only need the constant environment.
inline ConstEnv fold_constants(Program& prog) { return analyze(prog).consts; }

}  // namespace landau
