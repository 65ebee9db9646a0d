#pragma once

#include <memory>
#include <string>
#include <vector>

#include "landau/adplan.hpp"
#include "landau/sema.hpp"

namespace landau {

// Loop-preserving lowered form. Loops and conditionals survive from the
// source; all elementwise and derivative work is scalarized, with packed
// mapping tables consulted through explicit index expressions.

enum class IOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Gt, Le, Ge };
enum class ROp { Add, Sub, Mul, Div };

enum class Builtin { Sin, Cos, Tan, Exp, Log, Sqrt, Sqr, Atan };

inline const char* builtin_name(Builtin b) {
    switch (b) {
        case Builtin::Sin: return "sin";
        case Builtin::Cos: return "cos";
        case Builtin::Tan: return "tan";
        case Builtin::Exp: return "exp";
        case Builtin::Log: return "log";
        case Builtin::Sqrt: return "sqrt";
        case Builtin::Sqr: return "sqr";
        case Builtin::Atan: return "atan";
    }
    return "?";
}

struct IExpr;
using IExprP = std::shared_ptr<const IExpr>;

struct IExpr {
    enum class Kind {
        Const,
        LoopVar,  // id = loop register (source or synthetic)
        IntVar,   // id = int variable register
        Bin,
        OffRead,  // pairs[id].offsets[a]
        MapRead,  // pairs[id].map[a]
        InvRead,  // pairs[id].inv[a*hrow + b], a = cell, b = param
    };

    Kind kind;
    long long cval = 0;
    int id = -1;
    IOp op = IOp::Add;
    IExprP a, b;
};

inline IExprP iconst(long long v) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::Const;
    e->cval = v;
    return e;
}
inline IExprP iloop(int reg) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::LoopVar;
    e->id = reg;
    return e;
}
inline IExprP iintvar(int reg) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::IntVar;
    e->id = reg;
    return e;
}
inline IExprP ibin(IOp op, IExprP a, IExprP b) {
    if (a->kind == IExpr::Kind::Const && b->kind == IExpr::Kind::Const) {
        switch (op) {  // fold what unrolled index math produces all the time
            case IOp::Add: return iconst(a->cval + b->cval);
            case IOp::Sub: return iconst(a->cval - b->cval);
            case IOp::Mul: return iconst(a->cval * b->cval);
            default: break;
        }
    }
    if (op == IOp::Add && a->kind == IExpr::Kind::Const && a->cval == 0) return b;
    if ((op == IOp::Add || op == IOp::Sub) && b->kind == IExpr::Kind::Const && b->cval == 0)
        return a;
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::Bin;
    e->op = op;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
inline IExprP ioff(int pair, IExprP idx) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::OffRead;
    e->id = pair;
    e->a = std::move(idx);
    return e;
}
inline IExprP imap(int pair, IExprP idx) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::MapRead;
    e->id = pair;
    e->a = std::move(idx);
    return e;
}
inline IExprP iinv(int pair, IExprP cell, IExprP param) {
    auto e = std::make_shared<IExpr>();
    e->kind = IExpr::Kind::InvRead;
    e->id = pair;
    e->a = std::move(cell);
    e->b = std::move(param);
    return e;
}

struct RExpr;
using RExprP = std::shared_ptr<const RExpr>;

struct RExpr {
    enum class Kind {
        Const,
        Read,     // values of var `id` at cell a
        DRead,    // packed derivative buffer of pair `id` at global slot a
        Neg,
        Bin,
        Call,
        FromInt,  // integer expression used as a real value
    };

    Kind kind;
    double cval = 0;
    int id = -1;
    ROp op = ROp::Add;
    Builtin fn = Builtin::Sin;
    IExprP idx;       // Read cell, DRead slot, FromInt value
    RExprP x, y;
};

inline RExprP rconst(double v) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::Const;
    e->cval = v;
    return e;
}
inline RExprP rread(int var, IExprP cell) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::Read;
    e->id = var;
    e->idx = std::move(cell);
    return e;
}
inline RExprP rdread(int pair, IExprP slot) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::DRead;
    e->id = pair;
    e->idx = std::move(slot);
    return e;
}
inline RExprP rneg(RExprP x) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::Neg;
    e->x = std::move(x);
    return e;
}
inline RExprP rbin(ROp op, RExprP x, RExprP y) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::Bin;
    e->op = op;
    e->x = std::move(x);
    e->y = std::move(y);
    return e;
}
inline RExprP rcall(Builtin fn, RExprP x) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::Call;
    e->fn = fn;
    e->x = std::move(x);
    return e;
}
inline RExprP rfromint(IExprP v) {
    auto e = std::make_shared<RExpr>();
    e->kind = RExpr::Kind::FromInt;
    e->idx = std::move(v);
    return e;
}

struct LStmt;
using LStmtP = std::unique_ptr<LStmt>;
using LBlock = std::vector<LStmtP>;

struct LStmt {
    enum class Kind {
        Loop,         // for reg = lo .. hi-1
        If,
        SetInt,       // int register = ival
        SetReal,      // values[var][cell] =/+= rhs
        SetDeriv,     // dbuf[pair][slot] =/+= rhs, slot always < total
        SetDerivInv,  // dbuf[pair][inv(cell,param)] = rhs, skipped on a miss
    };

    Kind kind;
    bool plus = false;
    int id = -1;       // Loop/SetInt register, SetReal var, SetDeriv(Inv) pair
    IExprP lo, hi;     // Loop bounds, If cond in `lo`
    IExprP idx;        // SetReal cell, SetDeriv slot, SetDerivInv cell
    IExprP param;      // SetDerivInv parameter index
    RExprP rhs;
    LBlock body, els;
};

inline LStmtP lstmt(LStmt::Kind k) {
    auto s = std::make_unique<LStmt>();
    s->kind = k;
    return s;
}

struct LModule {
    DerivPlan plan;
    LBlock body;
    int n_loop_regs = 0;  // source loops plus synthetic element loops
    int n_int_regs = 0;
};

}  // namespace landau
