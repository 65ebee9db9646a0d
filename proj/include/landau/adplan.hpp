#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landau/elaborator.hpp"
#include "landau/trace.hpp"

namespace landau {

// Flattening of all parameter-vector columns into one global bit index.
struct ParamSpace {
    std::vector<int> pv_offset;  // size pvs+1
    int total = 0;

    static ParamSpace build(const SemaInfo& sema) {
        ParamSpace s;
        s.pv_offset.push_back(0);
        for (const ParamVec& pv : sema.pvs) s.pv_offset.push_back(s.pv_offset.back() + pv.size);
        s.total = s.pv_offset.back();
        return s;
    }

    int col(ParamRef q) const { return pv_offset[size_t(q.pv)] + q.idx; }
    int pv_of_col(int c) const {
        int pv = 0;
        while (pv_offset[size_t(pv) + 1] <= c) ++pv;
        return pv;
    }
};

// Extra derivative demands appended after the whole trace (mainly for tests;
// normal compilation gets its demands from NeedDerivative records).
struct NeedSet {
    std::vector<std::pair<CellRef, ParamRef>> items;
    void add(CellRef c, ParamRef q) { items.emplace_back(c, q); }
};

// Which (cell, param) derivative values must actually be carried at runtime.
class StoredSet {
public:
    StoredSet(const SemaInfo& sema)
        : space_(ParamSpace::build(sema)), words_((size_t(space_.total) + 63) / 64) {
        var_offset_.push_back(0);
        for (const VarInfo& v : sema.vars) var_offset_.push_back(var_offset_.back() + v.size);
        bits_.assign(size_t(var_offset_.back()) * words_, 0);
    }

    const ParamSpace& space() const { return space_; }
    size_t words() const { return words_; }

    uint64_t* row(CellRef c) { return bits_.data() + size_t(var_offset_[size_t(c.var)] + c.idx) * words_; }
    const uint64_t* row(CellRef c) const {
        return bits_.data() + size_t(var_offset_[size_t(c.var)] + c.idx) * words_;
    }

    void set(CellRef c, ParamRef q) {
        int b = space_.col(q);
        row(c)[size_t(b) / 64] |= uint64_t(1) << (b % 64);
    }
    bool test(CellRef c, ParamRef q) const {
        int b = space_.col(q);
        return (row(c)[size_t(b) / 64] >> (b % 64)) & 1;
    }

    size_t count() const {
        size_t n = 0;
        for (uint64_t w : bits_) n += size_t(__builtin_popcountll(w));
        return n;
    }

private:
    ParamSpace space_;
    size_t words_;
    std::vector<int> var_offset_;
    std::vector<uint64_t> bits_;
};

namespace detail {

// Per-variable column masks used during propagation.
struct AllowMasks {
    std::vector<std::vector<uint64_t>> bearing;     // columns the var can carry
    std::vector<std::vector<uint64_t>> propagate;   // bearing minus discarded pairs

    AllowMasks(const SemaInfo& sema, const std::vector<std::vector<uint8_t>>& bear,
               const ParamSpace& space) {
        size_t words = (size_t(space.total) + 63) / 64;
        bearing.assign(sema.vars.size(), std::vector<uint64_t>(words, 0));
        propagate = bearing;
        for (size_t v = 0; v < sema.vars.size(); ++v)
            for (size_t pv = 0; pv < sema.pvs.size(); ++pv) {
                if (!bear[v][pv]) continue;
                int lo = space.pv_offset[pv], hi = space.pv_offset[pv + 1];
                bool disc = sema.discards.count({int(v), int(pv)}) > 0;
                for (int b = lo; b < hi; ++b) {
                    uint64_t m = uint64_t(1) << (b % 64);
                    bearing[v][size_t(b) / 64] |= m;
                    if (!disc) propagate[v][size_t(b) / 64] |= m;
                }
            }
    }
};

}  // namespace detail

// Stage 2, step 1: reverse traversal of the trace. A derivative is stored at
// a write if something executed later still wants it.
inline StoredSet propagate_needs(const ActionTrace& trace, const SemaInfo& sema,
                                 const std::vector<std::vector<uint8_t>>& bearing,
                                 const NeedSet& extra = {}) {
    StoredSet stored(sema);
    StoredSet active(sema);
    const ParamSpace& space = stored.space();
    size_t words = stored.words();
    detail::AllowMasks allow(sema, bearing, space);

    auto seed = [&](CellRef c, ParamRef q) {
        int b = space.col(q);
        if (allow.bearing[size_t(c.var)][size_t(b) / 64] & (uint64_t(1) << (b % 64)))
            active.set(c, q);
    };
    for (const auto& [c, q] : extra.items) seed(c, q);

    std::vector<uint64_t> tmp(words);
    for (auto it = trace.actions.rbegin(); it != trace.actions.rend(); ++it) {
        const Action& a = *it;
        switch (a.kind) {
            case Action::Kind::NeedDerivative:
                seed(a.cell, a.param);
                break;
            case Action::Kind::HaveDerivative: {
                int b = space.col(a.param);
                uint64_t m = uint64_t(1) << (b % 64);
                uint64_t* act = active.row(a.cell);
                if (act[size_t(b) / 64] & m) {
                    stored.row(a.cell)[size_t(b) / 64] |= m;
                    act[size_t(b) / 64] &= ~m;
                }
                break;
            }
            case Action::Kind::DependsFrom: {
                uint64_t* act = active.row(a.cell);
                bool any = false;
                for (size_t w = 0; w < words; ++w) {
                    tmp[w] = act[w];
                    any = any || tmp[w];
                    if (a.overwrite) act[w] = 0;
                }
                if (!any) break;
                uint64_t* st = stored.row(a.cell);
                for (size_t w = 0; w < words; ++w) st[w] |= tmp[w];
                for (const CellRef& s : trace.sources(a)) {
                    uint64_t* dst = active.row(s);
                    const std::vector<uint64_t>& pm = allow.propagate[size_t(s.var)];
                    for (size_t w = 0; w < words; ++w) dst[w] |= tmp[w] & pm[w];
                }
                break;
            }
        }
    }
    return stored;
}

// Packed index mapping for one (variable, parameter vector) pair.
struct PairPlan {
    int var = -1;
    int pv = -1;
    int ncells = 0;
    int total = 0;  // packed slots; runtime buffer has total+1, last slot pinned to 0
    int hrow = 0;   // inverse row width, shared per pv
    std::vector<int> offsets;  // ncells+1 prefix sums
    std::vector<int> map;      // param index per packed slot, ascending within a cell
    std::vector<int> inv;      // ncells*hrow, packed slot or `total` on a miss

    int count(int cell) const { return offsets[size_t(cell) + 1] - offsets[size_t(cell)]; }
    int param_at(int cell, int k) const { return map[size_t(offsets[size_t(cell)] + k)]; }
    // global packed slot, or `total` (the zero slot) when not stored
    int slot(int cell, int param) const {
        if (param >= hrow) return total;
        return inv[size_t(cell) * size_t(hrow) + size_t(param)];
    }
};

struct DerivPlan {
    std::vector<PairPlan> pairs;
    std::vector<std::vector<int>> pair_index;  // [var][pv] -> index into pairs, -1 if none
    ParamSpace space;

    const PairPlan* find(int var, int pv) const {
        int i = pair_index[size_t(var)][size_t(pv)];
        return i < 0 ? nullptr : &pairs[size_t(i)];
    }
};

// Stage 2, step 2: turn the stored set into packed mappings.
inline DerivPlan build_plan(const StoredSet& stored, const SemaInfo& sema) {
    DerivPlan plan;
    plan.space = stored.space();
    plan.pair_index.assign(sema.vars.size(), std::vector<int>(sema.pvs.size(), -1));
    const ParamSpace& space = stored.space();
    size_t words = stored.words();

    // per cell and pv: the stored columns, collected by scanning bitset words
    auto collect = [&](CellRef c, size_t pv, std::vector<int>& out) {
        const uint64_t* row = stored.row(c);
        int lo = space.pv_offset[pv], hi = space.pv_offset[pv + 1];
        for (size_t w = size_t(lo) / 64; w < words && int(w * 64) < hi; ++w) {
            uint64_t bits = row[w];
            while (bits) {
                int b = int(w) * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                if (b >= lo && b < hi) out.push_back(b - lo);
            }
        }
    };

    // inverse row width per pv: one past the highest stored column anywhere,
    // so a lookup for any in-range parameter index stays in bounds
    std::vector<int> hrow(sema.pvs.size(), 0);
    std::vector<int> cols;
    for (size_t v = 0; v < sema.vars.size(); ++v)
        for (int i = 0; i < sema.vars[v].size; ++i)
            for (size_t pv = 0; pv < sema.pvs.size(); ++pv) {
                cols.clear();
                collect({int(v), i}, pv, cols);
                if (!cols.empty() && cols.back() + 1 > hrow[pv]) hrow[pv] = cols.back() + 1;
            }

    for (size_t v = 0; v < sema.vars.size(); ++v) {
        for (size_t pv = 0; pv < sema.pvs.size(); ++pv) {
            PairPlan pp;
            pp.var = int(v);
            pp.pv = int(pv);
            pp.ncells = sema.vars[v].size;
            pp.hrow = hrow[pv];
            pp.offsets.push_back(0);
            for (int i = 0; i < pp.ncells; ++i) {
                cols.clear();
                collect({int(v), i}, pv, cols);
                for (int q : cols) pp.map.push_back(q);
                pp.offsets.push_back(int(pp.map.size()));
            }
            pp.total = int(pp.map.size());
            if (pp.total == 0) continue;
            pp.inv.assign(size_t(pp.ncells) * size_t(pp.hrow), pp.total);
            for (int i = 0; i < pp.ncells; ++i)
                for (int s = pp.offsets[size_t(i)]; s < pp.offsets[size_t(i) + 1]; ++s)
                    pp.inv[size_t(i) * size_t(pp.hrow) + size_t(pp.map[size_t(s)])] = s;
            plan.pair_index[v][pv] = int(plan.pairs.size());
            plan.pairs.push_back(std::move(pp));
        }
    }
    return plan;
}

struct PlanStats {
    size_t packed_slots = 0;  // sum of buffer payloads over all pairs
    size_t dense_slots = 0;   // cells x parameter columns for the same pairs
    size_t pair_count = 0;
};

inline PlanStats plan_stats(const DerivPlan& plan, const SemaInfo& sema) {
    PlanStats st;
    st.pair_count = plan.pairs.size();
    for (const PairPlan& pp : plan.pairs) {
        st.packed_slots += size_t(pp.total);
        st.dense_slots += size_t(pp.ncells) * size_t(sema.pvs[size_t(pp.pv)].size);
    }
    return st;
}

inline std::string dump_plan(const DerivPlan& plan, const SemaInfo& sema) {
    std::string out;
    for (const PairPlan& pp : plan.pairs) {
        out += "pair " + sema.vars[size_t(pp.var)].name + " ' " + sema.pvs[size_t(pp.pv)].name +
               ": " + std::to_string(pp.total) + " packed of " +
               std::to_string(size_t(pp.ncells) * size_t(sema.pvs[size_t(pp.pv)].size)) +
               " dense\n";
        for (int i = 0; i < pp.ncells; ++i) {
            if (pp.count(i) == 0) continue;
            out += "  " + cell_name(sema, {pp.var, i}) + ": {";
            for (int k = 0; k < pp.count(i); ++k) {
                if (k) out += ", ";
                out += std::to_string(pp.param_at(i, k));
            }
            out += "}\n";
        }
    }
    return out;
}

}  // namespace landau
