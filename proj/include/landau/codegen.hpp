#pragma once

#include <string>
#include <vector>

#include "landau/adplan.hpp"
#include "landau/ast.hpp"
#include "landau/lir.hpp"
#include "landau/sema.hpp"

namespace landau {

namespace detail {

inline Builtin builtin_of(const std::string& name) {
    if (name == "sin") return Builtin::Sin;
    if (name == "cos") return Builtin::Cos;
    if (name == "tan") return Builtin::Tan;
    if (name == "exp") return Builtin::Exp;
    if (name == "log") return Builtin::Log;
    if (name == "sqrt") return Builtin::Sqrt;
    if (name == "sqr") return Builtin::Sqr;
    return Builtin::Atan;
}

class Lowerer {
public:
    Lowerer(const Program& p, const SemaInfo& sema, const DerivPlan& plan)
        : p_(p), sema_(sema), plan_(plan), next_loop_(sema.n_loop_regs) {}

    LModule run() {
        LModule m;
        m.plan = plan_;
        lower_block(p_.func.body, m.body);
        m.n_loop_regs = next_loop_;
        m.n_int_regs = sema_.n_int_regs;
        return m;
    }

private:
    const Program& p_;
    const SemaInfo& sema_;
    const DerivPlan& plan_;
    int next_loop_;

    // --- integer lowering -----------------------------------------------------

    static IOp iop_of(BinOp op) {
        switch (op) {
            case BinOp::Add: return IOp::Add;
            case BinOp::Sub: return IOp::Sub;
            case BinOp::Mul: return IOp::Mul;
            case BinOp::Div: return IOp::Div;
            case BinOp::Eq: return IOp::Eq;
            case BinOp::Ne: return IOp::Ne;
            case BinOp::Lt: return IOp::Lt;
            case BinOp::Gt: return IOp::Gt;
            case BinOp::Le: return IOp::Le;
            case BinOp::Ge: return IOp::Ge;
        }
        return IOp::Add;
    }

    IExprP lower_iexpr(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return iconst(e.int_val);
            case Expr::Kind::Name:
                if (e.const_id >= 0) return iconst(sema_.consts.entries[size_t(e.const_id)].second);
                if (e.loop_id >= 0) return iloop(e.loop_id);
                return iintvar(sema_.int_var_reg(e.var_id));
            case Expr::Kind::Unary:
                return ibin(IOp::Sub, iconst(0), lower_iexpr(*e.a));
            case Expr::Kind::Binary:
                return ibin(iop_of(e.op), lower_iexpr(*e.a), lower_iexpr(*e.b));
            default:
                return iconst(0);
        }
    }

    // --- value references -------------------------------------------------------

    struct Ref {
        int var = -1;
        IExprP lo;
        IExprP len;  // null for scalar references
    };

    Ref value_ref(const Expr& e) const {
        const VarInfo& v = sema_.vars[size_t(e.var_id)];
        Ref r;
        r.var = e.var_id;
        if (e.kind == Expr::Kind::Name) {
            r.lo = iconst(0);
            if (v.is_array) r.len = iconst(v.size);
        } else if (e.kind == Expr::Kind::Index) {
            r.lo = lower_iexpr(*e.a);
        } else {
            r.lo = e.a ? lower_iexpr(*e.a) : iconst(0);
            IExprP hi = e.b ? lower_iexpr(*e.b) : iconst(v.size);
            r.len = ibin(IOp::Sub, hi, r.lo);
        }
        return r;
    }

    Ref denom_ref(const Expr& e) const {
        const ParamVec& pv = sema_.pvs[size_t(e.pv_id)];
        Ref r;
        r.var = e.pv_id;
        if (pv.scalar_arg) {
            r.lo = iconst(0);
        } else if (e.kind == Expr::Kind::Name) {
            r.lo = iconst(0);
            r.len = iconst(pv.size);
        } else if (e.kind == Expr::Kind::Index) {
            r.lo = lower_iexpr(*e.a);
        } else {
            r.lo = e.a ? lower_iexpr(*e.a) : iconst(0);
            IExprP hi = e.b ? lower_iexpr(*e.b) : iconst(pv.size);
            r.len = ibin(IOp::Sub, hi, r.lo);
        }
        return r;
    }

    // --- scalarization ------------------------------------------------------------

    static ROp rop_of(BinOp op) {
        switch (op) {
            case BinOp::Add: return ROp::Add;
            case BinOp::Sub: return ROp::Sub;
            case BinOp::Mul: return ROp::Mul;
            default: return ROp::Div;
        }
    }

    RExprP sc(const Expr& e, const IExprP& elem) const {
        if (e.type.is_int()) return rfromint(lower_iexpr(e));
        switch (e.kind) {
            case Expr::Kind::RealLit:
                return rconst(e.real_val);
            case Expr::Kind::Name:
                return rread(e.var_id, iconst(0));
            case Expr::Kind::Index:
                return rread(e.var_id, lower_iexpr(*e.a));
            case Expr::Kind::Slice: {
                Ref r = value_ref(e);
                return rread(r.var, ibin(IOp::Add, r.lo, elem));
            }
            case Expr::Kind::Unary:
                return rneg(sc(*e.a, elem));
            case Expr::Kind::Binary:
                return rbin(rop_of(e.op), sc(*e.a, elem), sc(*e.b, elem));
            case Expr::Kind::Call:
                return rcall(builtin_of(e.name), sc(*e.args[0], elem));
            case Expr::Kind::DerivRead: {
                Ref v = value_ref(*e.value);
                Ref q = denom_ref(*e.denom);
                IExprP cv = v.lo, qp = q.lo;
                if (e.type.is_vec()) {
                    IExprP plen = q.len ? q.len : iconst(1);
                    if (v.len) cv = ibin(IOp::Add, v.lo, ibin(IOp::Div, elem, plen));
                    if (q.len) qp = ibin(IOp::Add, q.lo, ibin(IOp::Mod, elem, plen));
                }
                return deriv_read(v.var, e.pv_id, cv, qp);
            }
            default:
                return rconst(0);
        }
    }

    RExprP deriv_read(int var, int pv, const IExprP& cell, const IExprP& param) const {
        if (sema_.pvs[size_t(pv)].scalar_arg && sema_.pvs[size_t(pv)].arg_var == var)
            return rconst(1.0);
        int pair = plan_.pair_index[size_t(var)][size_t(pv)];
        if (pair < 0) return rconst(0.0);
        return rdread(pair, iinv(pair, cell, param));
    }

    // --- forward-mode differentiation of a scalarized expression ------------------

    RExprP diff(const RExprP& e, int pv, const IExprP& param) const {
        switch (e->kind) {
            case RExpr::Kind::Const:
            case RExpr::Kind::FromInt:
            case RExpr::Kind::DRead:  // first order only
                return nullptr;
            case RExpr::Kind::Read: {
                if (sema_.discards.count({e->id, pv})) return nullptr;
                if (sema_.pvs[size_t(pv)].scalar_arg && sema_.pvs[size_t(pv)].arg_var == e->id)
                    return rconst(1.0);
                int pair = plan_.pair_index[size_t(e->id)][size_t(pv)];
                if (pair < 0) return nullptr;
                return rdread(pair, iinv(pair, e->idx, param));
            }
            case RExpr::Kind::Neg: {
                RExprP dx = diff(e->x, pv, param);
                return dx ? rneg(dx) : nullptr;
            }
            case RExpr::Kind::Bin: {
                RExprP dx = diff(e->x, pv, param);
                RExprP dy = diff(e->y, pv, param);
                switch (e->op) {
                    case ROp::Add:
                        if (!dx) return dy;
                        if (!dy) return dx;
                        return rbin(ROp::Add, dx, dy);
                    case ROp::Sub:
                        if (!dx && !dy) return nullptr;
                        if (!dx) return rneg(dy);
                        if (!dy) return dx;
                        return rbin(ROp::Sub, dx, dy);
                    case ROp::Mul: {
                        RExprP l = dx ? rbin(ROp::Mul, dx, e->y) : nullptr;
                        RExprP r = dy ? rbin(ROp::Mul, e->x, dy) : nullptr;
                        if (!l) return r;
                        if (!r) return l;
                        return rbin(ROp::Add, l, r);
                    }
                    case ROp::Div: {
                        if (!dx && !dy) return nullptr;
                        if (!dy) return rbin(ROp::Div, dx, e->y);
                        RExprP num = dx ? rbin(ROp::Sub, rbin(ROp::Mul, dx, e->y),
                                               rbin(ROp::Mul, e->x, dy))
                                        : rneg(rbin(ROp::Mul, e->x, dy));
                        return rbin(ROp::Div, num, rbin(ROp::Mul, e->y, e->y));
                    }
                }
                return nullptr;
            }
            case RExpr::Kind::Call: {
                RExprP dx = diff(e->x, pv, param);
                if (!dx) return nullptr;
                switch (e->fn) {
                    case Builtin::Sin:
                        return rbin(ROp::Mul, rcall(Builtin::Cos, e->x), dx);
                    case Builtin::Cos:
                        return rneg(rbin(ROp::Mul, rcall(Builtin::Sin, e->x), dx));
                    case Builtin::Tan: {
                        RExprP t = rcall(Builtin::Tan, e->x);
                        return rbin(ROp::Mul,
                                    rbin(ROp::Add, rconst(1.0), rbin(ROp::Mul, t, t)), dx);
                    }
                    case Builtin::Exp:
                        return rbin(ROp::Mul, rcall(Builtin::Exp, e->x), dx);
                    case Builtin::Log:
                        return rbin(ROp::Div, dx, e->x);
                    case Builtin::Sqrt:
                        return rbin(ROp::Div, dx,
                                    rbin(ROp::Mul, rconst(2.0), rcall(Builtin::Sqrt, e->x)));
                    case Builtin::Sqr:
                        return rbin(ROp::Mul, rbin(ROp::Mul, rconst(2.0), e->x), dx);
                    case Builtin::Atan:
                        return rbin(ROp::Div, dx,
                                    rbin(ROp::Add, rconst(1.0), rbin(ROp::Mul, e->x, e->x)));
                }
                return nullptr;
            }
        }
        return nullptr;
    }

    // --- statement lowering --------------------------------------------------------

    void lower_block(const Block& b, LBlock& out) {
        for (const auto& s : b) lower_stmt(*s, out);
    }

    void lower_stmt(const Stmt& s, LBlock& out) {
        switch (s.kind) {
            case Stmt::Kind::VarDecl: {
                const VarInfo& v = sema_.vars[size_t(s.var_id)];
                if (v.is_int) {
                    auto st = lstmt(LStmt::Kind::SetInt);
                    st->id = sema_.int_var_reg(s.var_id);
                    st->lo = s.init ? lower_iexpr(*s.init) : iconst(0);
                    out.push_back(std::move(st));
                    return;
                }
                if (!s.init) return;  // buffers start zeroed
                Ref lhs;
                lhs.var = s.var_id;
                lhs.lo = iconst(0);
                if (v.is_array) lhs.len = iconst(v.size);
                lower_real_assign(lhs, *s.init, false, out);
                return;
            }
            case Stmt::Kind::Assign: {
                if (s.lhs->type.is_int()) {
                    auto st = lstmt(LStmt::Kind::SetInt);
                    st->id = sema_.int_var_reg(s.lhs->var_id);
                    st->lo = lower_iexpr(*s.rhs);
                    out.push_back(std::move(st));
                    return;
                }
                lower_real_assign(value_ref(*s.lhs), *s.rhs, s.plus_assign, out);
                return;
            }
            case Stmt::Kind::DerivAssign:
                lower_deriv_assign(s, out);
                return;
            case Stmt::Kind::Discard:
                return;
            case Stmt::Kind::For: {
                auto st = lstmt(LStmt::Kind::Loop);
                st->id = s.loop_id;
                st->lo = lower_iexpr(*s.lo);
                st->hi = lower_iexpr(*s.hi);
                lower_block(s.body, st->body);
                out.push_back(std::move(st));
                return;
            }
            case Stmt::Kind::If: {
                auto st = lstmt(LStmt::Kind::If);
                st->lo = lower_iexpr(*s.cond);
                lower_block(s.body, st->body);
                lower_block(s.else_body, st->els);
                out.push_back(std::move(st));
                return;
            }
        }
    }

    void lower_real_assign(const Ref& lhs, const Expr& rhs, bool plus, LBlock& out) {
        if (!lhs.len) {
            emit_element(lhs.var, lhs.lo, rhs, plus, iconst(0), out);
            return;
        }
        int reg = next_loop_++;
        auto loop = lstmt(LStmt::Kind::Loop);
        loop->id = reg;
        loop->lo = iconst(0);
        loop->hi = lhs.len;
        IExprP elem = iloop(reg);
        emit_element(lhs.var, ibin(IOp::Add, lhs.lo, elem), rhs, plus, elem, loop->body);
        out.push_back(std::move(loop));
    }

    // Derivative updates first, then the value write, so the chain rule sees
    // the values from before this statement.
    void emit_element(int var, const IExprP& cell, const Expr& rhs, bool plus,
                      const IExprP& elem, LBlock& out) {
        RExprP val = sc(rhs, elem);
        for (size_t pv = 0; pv < sema_.pvs.size(); ++pv) {
            int pair = plan_.pair_index[size_t(var)][pv];
            if (pair < 0) continue;
            int sreg = next_loop_++;
            RExprP d = diff(val, int(pv), imap(pair, iloop(sreg)));
            if (!d && plus) continue;  // += with zero increment
            auto loop = lstmt(LStmt::Kind::Loop);
            loop->id = sreg;
            loop->lo = ioff(pair, cell);
            loop->hi = ioff(pair, ibin(IOp::Add, cell, iconst(1)));
            auto st = lstmt(LStmt::Kind::SetDeriv);
            st->id = pair;
            st->idx = iloop(sreg);
            st->plus = plus;
            st->rhs = d ? d : rconst(0.0);
            loop->body.push_back(std::move(st));
            out.push_back(std::move(loop));
        }
        auto st = lstmt(LStmt::Kind::SetReal);
        st->id = var;
        st->idx = cell;
        st->plus = plus;
        st->rhs = val;
        out.push_back(std::move(st));
    }

    void lower_deriv_assign(const Stmt& s, LBlock& out) {
        Ref v = value_ref(*s.lhs);
        Ref q = denom_ref(*s.denom);
        int pair = plan_.pair_index[size_t(v.var)][size_t(s.pv_id)];
        if (pair < 0) return;  // nothing downstream ever reads it

        IExprP plen = q.len ? q.len : iconst(1);
        IExprP ev = iconst(0), ep = iconst(0);
        std::vector<LStmtP> loops;
        if (v.len) {
            int reg = next_loop_++;
            auto loop = lstmt(LStmt::Kind::Loop);
            loop->id = reg;
            loop->lo = iconst(0);
            loop->hi = v.len;
            ev = iloop(reg);
            loops.push_back(std::move(loop));
        }
        if (q.len) {
            int reg = next_loop_++;
            auto loop = lstmt(LStmt::Kind::Loop);
            loop->id = reg;
            loop->lo = iconst(0);
            loop->hi = q.len;
            ep = iloop(reg);
            loops.push_back(std::move(loop));
        }
        IExprP elem = ibin(IOp::Add, ibin(IOp::Mul, ev, plen), ep);
        auto st = lstmt(LStmt::Kind::SetDerivInv);
        st->id = pair;
        st->idx = ibin(IOp::Add, v.lo, ev);
        st->param = ibin(IOp::Add, q.lo, ep);
        st->rhs = sc(*s.rhs, elem);
        LBlock* inner = &out;
        for (auto& l : loops) {
            LBlock* next = &l->body;
            inner->push_back(std::move(l));
            inner = next;
        }
        inner->push_back(std::move(st));
    }
};

}  // namespace detail

// Stage 2, step 3: loop-preserving lowering against the packed plan.
inline LModule lower(const Program& p, const SemaInfo& sema, const DerivPlan& plan) {
    return detail::Lowerer(p, sema, plan).run();
}

}  // namespace landau
