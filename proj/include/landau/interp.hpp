#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "landau/diagnostics.hpp"
#include "landau/lir.hpp"
#include "landau/sema.hpp"
#include "landau/trace.hpp"

namespace landau {

// Runtime argument values keyed by argument name. Arrays must match the
// declared size exactly; scalars are vectors of length 1.
struct Inputs {
    std::map<std::string, std::vector<double>> values;
};

inline double apply_builtin(Builtin fn, double x) {
    switch (fn) {
        case Builtin::Sin: return std::sin(x);
        case Builtin::Cos: return std::cos(x);
        case Builtin::Tan: return std::tan(x);
        case Builtin::Exp: return std::exp(x);
        case Builtin::Log: return std::log(x);
        case Builtin::Sqrt: return std::sqrt(x);
        case Builtin::Sqr: return x * x;
        case Builtin::Atan: return std::atan(x);
    }
    return 0;
}

// Reference backend: walks the lowered module directly. Evaluation order of
// every expression matches the emitted C, so the two backends agree bitwise.
class Interpreter {
public:
    using SeedFn = std::function<void(CellRef, ParamRef, double)>;

    Interpreter(const LModule& m, const SemaInfo& sema) : m_(m), sema_(sema) {
        vals_.resize(sema.vars.size());
        for (size_t v = 0; v < sema.vars.size(); ++v)
            vals_[v].assign(size_t(sema.vars[v].size), 0.0);
        dbuf_.resize(m.plan.pairs.size());
        for (size_t p = 0; p < m.plan.pairs.size(); ++p)
            dbuf_[p].assign(size_t(m.plan.pairs[p].total) + 1, 0.0);
        lregs_.assign(size_t(m.n_loop_regs), 0);
        iregs_.assign(size_t(m.n_int_regs), 0);
    }

    void on_seed(SeedFn fn) { on_seed_ = std::move(fn); }

    void load_inputs(const Inputs& in) {
        for (const auto& [name, vals] : in.values) {
            int v = sema_.var_by_name(name);
            if (v < 0 || !sema_.vars[size_t(v)].is_arg)
                throw InputError("unknown argument '" + name + "'");
        }
        for (size_t v = 0; v < sema_.vars.size(); ++v) {
            const VarInfo& vi = sema_.vars[v];
            if (!vi.is_arg) continue;
            auto it = in.values.find(vi.name);
            if (it == in.values.end())
                throw InputError("missing value for argument '" + vi.name + "'");
            if (int(it->second.size()) != vi.size)
                throw InputError("argument '" + vi.name + "' expects " + std::to_string(vi.size) +
                                 " value(s), got " + std::to_string(it->second.size()));
            vals_[v] = it->second;
        }
    }

    std::vector<double> run() {
        for (size_t v = 0; v < vals_.size(); ++v)
            if (!sema_.vars[v].is_arg) std::fill(vals_[v].begin(), vals_[v].end(), 0.0);
        for (auto& d : dbuf_) std::fill(d.begin(), d.end(), 0.0);
        exec(m_.body);
        return vals_[size_t(sema_.ret_var)];
    }

    std::vector<double> run(const Inputs& in) {
        load_inputs(in);
        return run();
    }

    const std::vector<double>& values(int var) const { return vals_[size_t(var)]; }
    const std::vector<double>& dbuffer(int pair) const { return dbuf_[size_t(pair)]; }

private:
    const LModule& m_;
    const SemaInfo& sema_;
    std::vector<std::vector<double>> vals_;
    std::vector<std::vector<double>> dbuf_;
    std::vector<long long> lregs_, iregs_;
    SeedFn on_seed_;

    long long ieval(const IExpr& e) const {
        switch (e.kind) {
            case IExpr::Kind::Const: return e.cval;
            case IExpr::Kind::LoopVar: return lregs_[size_t(e.id)];
            case IExpr::Kind::IntVar: return iregs_[size_t(e.id)];
            case IExpr::Kind::OffRead:
                return m_.plan.pairs[size_t(e.id)].offsets[size_t(ieval(*e.a))];
            case IExpr::Kind::MapRead:
                return m_.plan.pairs[size_t(e.id)].map[size_t(ieval(*e.a))];
            case IExpr::Kind::InvRead:
                return m_.plan.pairs[size_t(e.id)].slot(int(ieval(*e.a)), int(ieval(*e.b)));
            case IExpr::Kind::Bin: {
                long long l = ieval(*e.a), r = ieval(*e.b);
                switch (e.op) {
                    case IOp::Add: return l + r;
                    case IOp::Sub: return l - r;
                    case IOp::Mul: return l * r;
                    case IOp::Div:
                        if (r == 0) throw InputError("integer division by zero at runtime");
                        return l / r;
                    case IOp::Mod:
                        if (r == 0) throw InputError("integer division by zero at runtime");
                        return l % r;
                    case IOp::Eq: return l == r;
                    case IOp::Ne: return l != r;
                    case IOp::Lt: return l < r;
                    case IOp::Gt: return l > r;
                    case IOp::Le: return l <= r;
                    case IOp::Ge: return l >= r;
                }
                return 0;
            }
        }
        return 0;
    }

    double reval(const RExpr& e) const {
        switch (e.kind) {
            case RExpr::Kind::Const: return e.cval;
            case RExpr::Kind::Read: return vals_[size_t(e.id)][size_t(ieval(*e.idx))];
            case RExpr::Kind::DRead: return dbuf_[size_t(e.id)][size_t(ieval(*e.idx))];
            case RExpr::Kind::Neg: return -reval(*e.x);
            case RExpr::Kind::FromInt: return double(ieval(*e.idx));
            case RExpr::Kind::Call: return apply_builtin(e.fn, reval(*e.x));
            case RExpr::Kind::Bin: {
                double l = reval(*e.x), r = reval(*e.y);
                switch (e.op) {
                    case ROp::Add: return l + r;
                    case ROp::Sub: return l - r;
                    case ROp::Mul: return l * r;
                    case ROp::Div: return l / r;
                }
                return 0;
            }
        }
        return 0;
    }

    void exec(const LBlock& b) {
        for (const auto& s : b) exec_stmt(*s);
    }

    void exec_stmt(const LStmt& s) {
        switch (s.kind) {
            case LStmt::Kind::Loop: {
                long long lo = ieval(*s.lo), hi = ieval(*s.hi);
                for (long long i = lo; i < hi; ++i) {
                    lregs_[size_t(s.id)] = i;
                    exec(s.body);
                }
                return;
            }
            case LStmt::Kind::If:
                exec(ieval(*s.lo) != 0 ? s.body : s.els);
                return;
            case LStmt::Kind::SetInt:
                iregs_[size_t(s.id)] = ieval(*s.lo);
                return;
            case LStmt::Kind::SetReal: {
                double v = reval(*s.rhs);
                double& dst = vals_[size_t(s.id)][size_t(ieval(*s.idx))];
                dst = s.plus ? dst + v : v;
                return;
            }
            case LStmt::Kind::SetDeriv: {
                double v = reval(*s.rhs);
                double& dst = dbuf_[size_t(s.id)][size_t(ieval(*s.idx))];
                dst = s.plus ? dst + v : v;
                return;
            }
            case LStmt::Kind::SetDerivInv: {
                const PairPlan& pp = m_.plan.pairs[size_t(s.id)];
                long long cell = ieval(*s.idx), param = ieval(*s.param);
                double v = reval(*s.rhs);
                int slot = pp.slot(int(cell), int(param));
                if (slot != pp.total) dbuf_[size_t(s.id)][size_t(slot)] = v;
                if (on_seed_) on_seed_(CellRef{pp.var, int(cell)}, ParamRef{pp.pv, int(param)}, v);
                return;
            }
        }
    }
};

}  // namespace landau
