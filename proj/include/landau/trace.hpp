#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "landau/sema.hpp"

namespace landau {

struct CellRef {
    int var = -1;
    int idx = 0;  // 0 for scalars

    friend bool operator==(const CellRef&, const CellRef&) = default;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct ParamRef {
    int pv = -1;
    int idx = 0;

    friend bool operator==(const ParamRef&, const ParamRef&) = default;
    friend auto operator<=>(const ParamRef&, const ParamRef&) = default;
};

// One record of the fully unrolled stage-1 trace.
struct Action {
    enum class Kind : uint8_t { NeedDerivative, DependsFrom, HaveDerivative };

    Kind kind;
    bool overwrite = false;  // DependsFrom of a plain '=' kills earlier needs
    CellRef cell;            // Need/Have value cell, DependsFrom target
    ParamRef param;          // Need/Have
    uint32_t src_begin = 0, src_end = 0;  // DependsFrom sources in the pool
    int stmt_id = -1;
};

struct ActionTrace {
    std::vector<Action> actions;
    std::vector<CellRef> source_pool;

    std::span<const CellRef> sources(const Action& a) const {
        return {source_pool.data() + a.src_begin, a.src_end - a.src_begin};
    }
};

inline std::string cell_name(const SemaInfo& sema, CellRef c) {
    const VarInfo& v = sema.vars[size_t(c.var)];
    if (!v.is_array) return v.name;
    return v.name + "[" + std::to_string(c.idx) + "]";
}

inline std::string param_name(const SemaInfo& sema, ParamRef p) {
    const ParamVec& pv = sema.pvs[size_t(p.pv)];
    if (pv.scalar_arg) return pv.name;
    return pv.name + "[" + std::to_string(p.idx) + "]";
}

// Renders the trace reversed, one action per line, in the textual form used
// by --dump-actions and the golden tests.
inline std::string dump_actions_reversed(const ActionTrace& trace, const SemaInfo& sema) {
    std::string out;
    for (auto it = trace.actions.rbegin(); it != trace.actions.rend(); ++it) {
        const Action& a = *it;
        switch (a.kind) {
            case Action::Kind::NeedDerivative:
                out += "need-this-derivative " + cell_name(sema, a.cell) + " ' " +
                       param_name(sema, a.param) + "\n";
                break;
            case Action::Kind::HaveDerivative:
                out += "have-this-derivative " + cell_name(sema, a.cell) + " ' " +
                       param_name(sema, a.param) + "\n";
                break;
            case Action::Kind::DependsFrom: {
                out += cell_name(sema, a.cell) + " depends-from {";
                bool first = true;
                for (const CellRef& s : trace.sources(a)) {
                    if (!first) out += ", ";
                    first = false;
                    out += cell_name(sema, s);
                }
                out += "}\n";
                break;
            }
        }
    }
    return out;
}

}  // namespace landau
