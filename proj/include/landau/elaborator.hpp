#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "landau/ast.hpp"
#include "landau/sema.hpp"
#include "landau/trace.hpp"

namespace landau {

// A derivative value fixed by a DerivAssign, with the input cell its value
// cell was copied from when that is a plain chain of copies (used by the
// finite-difference harness to build perturbation directions).
struct SeedSite {
    CellRef cell;
    ParamRef param;
    int origin_var = -1;  // argument variable feeding cell's value, -1 unknown
    int origin_idx = 0;
};

// Return-array cell that holds a derivative value read via '.
struct JacSlot {
    int out_idx;
    CellRef cell;
    ParamRef param;
};

struct UnrollResult {
    ActionTrace trace;
    // bearing[var][pv]: variable can carry a nonzero derivative w.r.t. pv.
    std::vector<std::vector<uint8_t>> bearing;
    std::vector<SeedSite> seeds;
    std::vector<JacSlot> jac_slots;
    std::vector<CellRef> out_copy;  // per return cell, var = -1 when not a plain copy
};

namespace detail {

inline bool is_plain_ref(const Expr& e) {
    return e.kind == Expr::Kind::Name || e.kind == Expr::Kind::Index ||
           e.kind == Expr::Kind::Slice;
}

// Fixpoint over the statement list: which (variable, pv) pairs can carry
// derivatives at all. Everything else is pruned from the trace.
class BearingPass {
public:
    BearingPass(const Program& p, const SemaInfo& sema) : p_(p), sema_(sema) {
        bearing_.assign(sema.vars.size(), std::vector<uint8_t>(sema.pvs.size(), 0));
    }

    std::vector<std::vector<uint8_t>> run() {
        for (size_t pv = 0; pv < sema_.pvs.size(); ++pv)
            if (sema_.pvs[pv].scalar_arg && sema_.pvs[pv].arg_var >= 0)
                scalar_arg_pv_[size_t(sema_.pvs[pv].arg_var)] = int(pv);
        do {
            changed_ = false;
            scan_block(p_.func.body);
        } while (changed_);
        return std::move(bearing_);
    }

private:
    const Program& p_;
    const SemaInfo& sema_;
    std::vector<std::vector<uint8_t>> bearing_;
    std::map<size_t, int> scalar_arg_pv_;
    bool changed_ = false;

    void mark(int var, int pv) {
        if (!bearing_[size_t(var)][size_t(pv)]) {
            bearing_[size_t(var)][size_t(pv)] = 1;
            changed_ = true;
        }
    }

    void scan_block(const Block& b) {
        for (const auto& s : b) scan_stmt(*s);
    }

    void scan_stmt(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::DerivAssign:
                mark(s.lhs->var_id, s.pv_id);
                return;
            case Stmt::Kind::VarDecl:
                if (s.init && !s.decl_is_int) propagate(*s.init, s.var_id);
                return;
            case Stmt::Kind::Assign:
                if (s.lhs->var_id >= 0 && !sema_.vars[size_t(s.lhs->var_id)].is_int)
                    propagate(*s.rhs, s.lhs->var_id);
                return;
            case Stmt::Kind::For:
            case Stmt::Kind::If:
                scan_block(s.body);
                scan_block(s.else_body);
                return;
            case Stmt::Kind::Discard:
                return;
        }
    }

    void propagate(const Expr& e, int target) {
        if (e.type.is_int()) return;
        if (is_plain_ref(e) && e.var_id >= 0) {
            int u = e.var_id;
            auto sa = scalar_arg_pv_.find(size_t(u));
            if (sa != scalar_arg_pv_.end()) mark(target, sa->second);
            for (size_t pv = 0; pv < sema_.pvs.size(); ++pv)
                if (bearing_[size_t(u)][pv] && !sema_.discards.count({u, int(pv)}))
                    mark(target, int(pv));
            return;
        }
        if (e.kind == Expr::Kind::DerivRead) return;  // first order only
        if (e.a) propagate(*e.a, target);
        if (e.b) propagate(*e.b, target);
        for (const auto& arg : e.args) propagate(*arg, target);
    }
};

class Unroller {
public:
    Unroller(const Program& p, const SemaInfo& sema) : p_(p), sema_(sema) {
        regs_.assign(size_t(sema.n_int_regs), 0);
        res_.bearing = BearingPass(p, sema).run();
        origin_.resize(sema.vars.size());
        for (size_t v = 0; v < sema.vars.size(); ++v) {
            const VarInfo& vi = sema.vars[v];
            origin_[v].assign(size_t(vi.size), int64_t(-1));
            if (vi.is_arg && !vi.is_int)
                for (int i = 0; i < vi.size; ++i)
                    origin_[v][size_t(i)] = pack(int(v), i);
        }
        int ret_size = sema.vars[size_t(sema.ret_var)].size;
        res_.out_copy.assign(size_t(ret_size), CellRef{-1, 0});
        jac_.assign(size_t(ret_size), std::nullopt);
    }

    UnrollResult run() {
        exec_block(p_.func.body);
        for (size_t i = 0; i < jac_.size(); ++i)
            if (jac_[i]) res_.jac_slots.push_back(JacSlot{int(i), jac_[i]->first, jac_[i]->second});
        return std::move(res_);
    }

private:
    const Program& p_;
    const SemaInfo& sema_;
    UnrollResult res_;
    std::vector<long long> regs_;
    std::vector<std::vector<int64_t>> origin_;
    std::vector<std::optional<std::pair<CellRef, ParamRef>>> jac_;

    static int64_t pack(int var, int idx) { return (int64_t(var) << 32) | uint32_t(idx); }

    [[noreturn]] void error(SourceLoc loc, const std::string& msg) const {
        throw CompileError(p_.file, loc, msg);
    }

    long long ieval(const Expr& e) {
        return eval_int_expr(e, sema_.consts, [&](const Expr& n) -> long long {
            if (n.loop_id >= 0) return regs_[size_t(n.loop_id)];
            return regs_[size_t(sema_.int_var_reg(n.var_id))];
        }, p_.file);
    }

    // --- reference ranges -----------------------------------------------------

    struct Range {
        int var;
        long long lo;
        long long len;  // 1 for scalar refs
        bool scalar;
    };

    Range eval_value_ref(const Expr& e) {
        const VarInfo& v = sema_.vars[size_t(e.var_id)];
        if (e.kind == Expr::Kind::Name) return {e.var_id, 0, 1, true};
        if (e.kind == Expr::Kind::Index) {
            long long i = ieval(*e.a);
            if (i < 0 || i >= v.size)
                error(e.loc, "index out of bounds: " + v.name + "[" + std::to_string(i) +
                                 "], size " + std::to_string(v.size));
            return {e.var_id, i, 1, true};
        }
        long long lo = ieval(*e.a), hi = ieval(*e.b);
        if (lo < 0 || hi > v.size || lo > v.size)
            error(e.loc, "slice bound out of range in '" + v.name + "'");
        if (lo > hi) error(e.loc, "reversed slice bounds in '" + v.name + "'");
        return {e.var_id, lo, hi - lo, false};
    }

    Range eval_denom_ref(const Expr& e) {
        const ParamVec& pv = sema_.pvs[size_t(e.pv_id)];
        if (pv.scalar_arg) return {e.pv_id, 0, 1, true};
        if (e.kind == Expr::Kind::Index) {
            long long i = ieval(*e.a);
            if (i < 0 || i >= pv.size)
                error(e.loc, "index out of bounds: " + pv.name + "[" + std::to_string(i) +
                                 "], size " + std::to_string(pv.size));
            return {e.pv_id, i, 1, true};
        }
        if (e.kind == Expr::Kind::Name) return {e.pv_id, 0, pv.size, false};
        long long lo = ieval(*e.a), hi = ieval(*e.b);
        if (lo < 0 || hi > pv.size || lo > pv.size)
            error(e.loc, "slice bound out of range in '" + pv.name + "'");
        if (lo > hi) error(e.loc, "reversed slice bounds in '" + pv.name + "'");
        return {e.pv_id, lo, hi - lo, false};
    }

    // Vector length of an rhs for this execution. Only scalars broadcast, so
    // two vector subexpressions must agree exactly ("slice length mismatch"
    // caught here when the bounds are loop-dependent). len < 0 means scalar.
    long long rhs_len(const Expr& e) {
        if (e.type.is_int() || e.type.is_real()) return -1;
        switch (e.kind) {
            case Expr::Kind::Slice:
                return eval_value_ref(e).len;
            case Expr::Kind::DerivRead: {
                long long vl = e.value->type.is_vec() ? eval_value_ref(*e.value).len : 1;
                long long pl = e.denom->type.is_vec() ||
                                       (e.denom->kind == Expr::Kind::Name && !sema_.pvs[size_t(e.pv_id)].scalar_arg)
                                   ? eval_denom_ref(*e.denom).len
                                   : 1;
                return vl * pl;
            }
            case Expr::Kind::Unary:
                return rhs_len(*e.a);
            case Expr::Kind::Binary: {
                long long l = rhs_len(*e.a), r = rhs_len(*e.b);
                if (l >= 0 && r >= 0 && l != r)
                    error(e.loc, "slice length mismatch: " + std::to_string(l) + " vs " +
                                     std::to_string(r) + " in elementwise expression");
                return l >= 0 ? l : r;
            }
            default:
                return -1;
        }
    }

    // --- rhs scanning ---------------------------------------------------------

    struct ScanOut {
        std::vector<CellRef> sources;
        std::vector<std::pair<CellRef, ParamRef>> needs;
    };

    bool source_worthy(int var) const {
        for (size_t pv = 0; pv < sema_.pvs.size(); ++pv) {
            if (res_.bearing[size_t(var)][pv]) return true;
            if (sema_.pvs[pv].scalar_arg && sema_.pvs[pv].arg_var == var) return true;
        }
        return false;
    }

    void add_source(ScanOut& out, CellRef c) {
        if (!source_worthy(c.var)) return;
        for (const CellRef& s : out.sources)
            if (s == c) return;
        out.sources.push_back(c);
    }

    void scan_rhs(const Expr& e, long long elem, ScanOut& out) {
        if (e.type.is_int()) return;
        switch (e.kind) {
            case Expr::Kind::RealLit:
                return;
            case Expr::Kind::Name:
                add_source(out, CellRef{e.var_id, 0});
                return;
            case Expr::Kind::Index: {
                Range r = eval_value_ref(e);
                add_source(out, CellRef{r.var, int(r.lo)});
                return;
            }
            case Expr::Kind::Slice: {
                Range r = eval_value_ref(e);
                add_source(out, CellRef{r.var, int(r.lo + elem)});
                return;
            }
            case Expr::Kind::DerivRead: {
                Range v = eval_value_ref(*e.value);
                Range q = eval_denom_ref(*e.denom);
                long long pl = q.len > 0 ? q.len : 1;  // row-major: value index slowest
                long long ev = elem / pl;
                long long ep = elem % pl;
                if (v.len * q.len == 1) ev = ep = 0;  // scalar read broadcast
                out.needs.emplace_back(CellRef{v.var, int(v.lo + ev)},
                                       ParamRef{q.var, int(q.lo + ep)});
                return;
            }
            case Expr::Kind::Unary:
                scan_rhs(*e.a, elem, out);
                return;
            case Expr::Kind::Binary:
                scan_rhs(*e.a, elem, out);
                scan_rhs(*e.b, elem, out);
                return;
            case Expr::Kind::Call:
                for (const auto& a : e.args) scan_rhs(*a, elem, out);
                return;
            default:
                return;
        }
    }

    // --- action emission ------------------------------------------------------

    void emit_needs(const ScanOut& scan, int stmt_id) {
        for (const auto& [c, q] : scan.needs) {
            Action a;
            a.kind = Action::Kind::NeedDerivative;
            a.cell = c;
            a.param = q;
            a.stmt_id = stmt_id;
            res_.trace.actions.push_back(a);
        }
    }

    void emit_depends(CellRef target, const ScanOut& scan, bool plus, int stmt_id) {
        Action a;
        a.kind = Action::Kind::DependsFrom;
        a.cell = target;
        a.overwrite = !plus;
        a.stmt_id = stmt_id;
        a.src_begin = uint32_t(res_.trace.source_pool.size());
        if (plus && source_worthy(target.var)) res_.trace.source_pool.push_back(target);
        for (const CellRef& s : scan.sources) {
            if (plus && s == target) continue;  // already first
            res_.trace.source_pool.push_back(s);
        }
        a.src_end = uint32_t(res_.trace.source_pool.size());
        res_.trace.actions.push_back(a);
    }

    // --- statement execution ----------------------------------------------------

    void exec_block(const Block& b) {
        for (const auto& s : b) exec_stmt(*s);
    }

    void exec_stmt(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::VarDecl: {
                const VarInfo& v = sema_.vars[size_t(s.var_id)];
                if (v.is_int) {
                    regs_[size_t(sema_.int_var_reg(s.var_id))] = s.init ? ieval(*s.init) : 0;
                    return;
                }
                if (s.init) {
                    Range lhs{s.var_id, 0, v.size, !v.is_array};
                    if (!v.is_array) lhs.len = 1;
                    do_assign(lhs, *s.init, false, s.stmt_id, s.loc);
                }
                return;
            }
            case Stmt::Kind::Assign: {
                if (s.lhs->type.is_int()) {
                    regs_[size_t(sema_.int_var_reg(s.lhs->var_id))] = ieval(*s.rhs);
                    return;
                }
                do_assign(eval_value_ref(*s.lhs), *s.rhs, s.plus_assign, s.stmt_id, s.loc);
                return;
            }
            case Stmt::Kind::DerivAssign:
                do_have(s);
                return;
            case Stmt::Kind::Discard:
                return;
            case Stmt::Kind::For: {
                long long lo = ieval(*s.lo), hi = ieval(*s.hi);
                if (hi < lo) error(s.loc, "reversed loop bounds");
                for (long long i = lo; i < hi; ++i) {
                    regs_[size_t(s.loop_id)] = i;
                    exec_block(s.body);
                }
                return;
            }
            case Stmt::Kind::If:
                exec_block(ieval(*s.cond) != 0 ? s.body : s.else_body);
                return;
        }
    }

    void do_assign(Range lhs, const Expr& rhs, bool plus, int stmt_id, SourceLoc loc) {
        long long rlen = rhs_len(rhs);
        if (!lhs.scalar && rlen >= 0 && rlen != lhs.len)
            error(loc, "slice length mismatch: left side has length " + std::to_string(lhs.len) +
                           ", right side " + std::to_string(rlen));
        if (lhs.scalar && rlen >= 0 && rlen != 1)
            error(loc, "array expression assigned to a scalar");
        bool rhs_plain_read = is_plain_ref(rhs) && !rhs.type.is_int();
        bool rhs_plain_deriv = rhs.kind == Expr::Kind::DerivRead;
        for (long long e = 0; e < lhs.len; ++e) {
            CellRef t{lhs.var, int(lhs.lo + e)};
            ScanOut scan;
            scan_rhs(rhs, e, scan);
            emit_needs(scan, stmt_id);
            emit_depends(t, scan, plus, stmt_id);
            // metadata for the harness
            int64_t o = -1;
            if (!plus && rhs_plain_read) {
                Range r = eval_value_ref(rhs);
                long long i = r.len == 1 ? 0 : e;
                o = origin_[size_t(r.var)][size_t(r.lo + i)];
            }
            origin_[size_t(t.var)][size_t(t.idx)] = o;
            if (t.var == sema_.ret_var) {
                res_.out_copy[size_t(t.idx)] = CellRef{-1, 0};
                jac_[size_t(t.idx)] = std::nullopt;
                if (!plus && rhs_plain_read) {
                    Range r = eval_value_ref(rhs);
                    long long i = r.len == 1 ? 0 : e;
                    res_.out_copy[size_t(t.idx)] = CellRef{r.var, int(r.lo + i)};
                } else if (!plus && rhs_plain_deriv && !scan.needs.empty()) {
                    jac_[size_t(t.idx)] = scan.needs.front();
                }
            }
        }
    }

    void do_have(const Stmt& s) {
        Range v = eval_value_ref(*s.lhs);
        Range q = eval_denom_ref(*s.denom);
        long long rlen = rhs_len(*s.rhs);
        long long total = v.len * q.len;
        if (rlen >= 0 && rlen != total)
            error(s.loc, "slice length mismatch: derivative target has length " +
                             std::to_string(total) + ", right side " + std::to_string(rlen));
        for (long long e = 0; e < total; ++e) {
            long long ev = e / q.len, ep = e % q.len;
            CellRef cell{v.var, int(v.lo + ev)};
            ParamRef param{q.var, int(q.lo + ep)};
            ScanOut scan;
            scan_rhs(*s.rhs, e, scan);
            // only derivative reads in the seed expression create needs
            emit_needs(scan, s.stmt_id);
            Action a;
            a.kind = Action::Kind::HaveDerivative;
            a.cell = cell;
            a.param = param;
            a.stmt_id = s.stmt_id;
            res_.trace.actions.push_back(a);
            SeedSite seed;
            seed.cell = cell;
            seed.param = param;
            int64_t o = origin_[size_t(cell.var)][size_t(cell.idx)];
            if (o >= 0) {
                seed.origin_var = int(o >> 32);
                seed.origin_idx = int(o & 0xffffffff);
            }
            res_.seeds.push_back(seed);
        }
    }
};

}  // namespace detail

// Evaluate an integer expression under concrete loop and register bindings.
inline long long evaluate_int_expr(const Expr& e, const std::vector<long long>& int_regs,
                                   const ConstEnv& env, const SemaInfo& sema,
                                   const std::string& file = "<input>") {
    return eval_int_expr(e, env, [&](const Expr& n) -> long long {
        if (n.loop_id >= 0) return int_regs[size_t(n.loop_id)];
        return int_regs[size_t(sema.int_var_reg(n.var_id))];
    }, file);
}

// Stage 1: fully unroll loops and conditionals into the linear action trace.
inline UnrollResult unroll(const Program& prog, const SemaInfo& sema) {
    return detail::Unroller(prog, sema).run();
}

}  // namespace landau
