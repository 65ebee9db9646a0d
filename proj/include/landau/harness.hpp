#pragma once

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "landau/compiler.hpp"
#include "landau/interp.hpp"

namespace landau {

// One checked Jacobian entry: the return cell holding the AD value, the
// return cell holding the value whose derivative it claims to be, and the
// finite-difference estimate it was compared against.
struct JacEntry {
    int out_idx = -1;
    int value_out_idx = -1;
    CellRef cell;
    ParamRef param;
    double ad = 0, fd = 0;
    double abs_err = 0, rel_err = 0;
    bool ok = false;
};

struct JacobianReport {
    std::vector<JacEntry> entries;
    size_t checked = 0, failed = 0, skipped = 0;
    bool ok() const { return failed == 0 && checked > 0; }

    std::string tsv(const SemaInfo& sema) const {
        std::string out = "out_idx\tvalue\tparam\tad\tfd\tabs_err\trel_err\tstatus\n";
        char buf[256];
        for (const JacEntry& e : entries) {
            std::snprintf(buf, sizeof(buf), "%d\t%s\t%s\t%.17g\t%.17g\t%.3g\t%.3g\t%s\n",
                          e.out_idx, cell_name(sema, e.cell).c_str(),
                          param_name(sema, e.param).c_str(), e.ad, e.fd, e.abs_err, e.rel_err,
                          e.ok ? "ok" : "FAIL");
            out += buf;
        }
        return out;
    }
};

namespace detail {

// Perturbation of the runtime inputs that realizes a unit change of one
// parameter column, reconstructed from the executed derivative seeds.
struct Direction {
    std::map<std::pair<int, int>, double> weights;  // (arg var, idx) -> weight
    bool known = true;
};

inline Inputs perturb(const Inputs& base, const SemaInfo& sema, const Direction& dir, double h) {
    Inputs out = base;
    for (const auto& [where, w] : dir.weights) {
        const VarInfo& vi = sema.vars[size_t(where.first)];
        out.values[vi.name][size_t(where.second)] += w * h;
    }
    return out;
}

// One seed-logging run: base outputs plus the input-space direction realizing
// each parameter column.
inline std::vector<double> build_directions(const Artifact& a, Interpreter& interp,
                                            const Inputs& in,
                                            std::map<ParamRef, Direction>& dirs) {
    const SemaInfo& sema = a.sema;
    std::map<std::pair<CellRef, ParamRef>, std::pair<int, int>> origin;
    for (const SeedSite& s : a.unrolled.seeds)
        origin[{s.cell, s.param}] = {s.origin_var, s.origin_idx};
    interp.load_inputs(in);
    interp.on_seed([&](CellRef c, ParamRef q, double v) {
        auto& d = dirs[q];
        auto it = origin.find({c, q});
        if (it == origin.end() || it->second.first < 0) {
            if (v != 0.0) d.known = false;  // a zero seed perturbs nothing anyway
            return;
        }
        if (v != 0.0) d.weights[{it->second.first, it->second.second}] += v;
    });
    std::vector<double> base = interp.run();
    interp.on_seed(nullptr);
    for (size_t pv = 0; pv < sema.pvs.size(); ++pv)
        if (sema.pvs[pv].scalar_arg)
            for (int q = 0; q < sema.pvs[pv].size; ++q)
                dirs[ParamRef{int(pv), q}].weights[{sema.pvs[pv].arg_var, 0}] += 1.0;
    return base;
}

inline double auto_step(const SemaInfo& sema, const Inputs& in, const Direction& dir) {
    double scale = 1.0;
    for (const auto& [where, w] : dir.weights) {
        const VarInfo& vi = sema.vars[size_t(where.first)];
        double x = in.values.at(vi.name)[size_t(where.second)];
        scale = std::max(scale, std::abs(x) * std::abs(w));
    }
    return std::cbrt(DBL_EPSILON) * scale;
}

}  // namespace detail

// Central-difference verification of every Jacobian value the program places
// in its return array. Derivative seeds fixed by the program (the `'`
// assignments) define what a unit change of each parameter column means for
// the runtime inputs; seeds whose value cell is not a plain copy of an input
// cell cannot be probed and are reported as skipped.
inline JacobianReport check_jacobian(const Artifact& a, const Inputs& in, double tol_rel = 1e-6,
                                     double abs_floor = 1e-9, double step = 0) {
    const SemaInfo& sema = a.sema;
    JacobianReport rep;

    // value cell -> return index holding that value
    std::map<CellRef, int> value_out;
    for (size_t r = 0; r < a.unrolled.out_copy.size(); ++r)
        if (a.unrolled.out_copy[r].var >= 0) value_out[a.unrolled.out_copy[r]] = int(r);

    // base run, logging executed seed values
    Interpreter interp(a.module, a.sema);
    std::map<ParamRef, detail::Direction> dirs;
    std::vector<double> base = detail::build_directions(a, interp, in, dirs);

    // group the claimed entries by parameter column
    std::map<ParamRef, std::vector<const JacSlot*>> by_col;
    for (const JacSlot& js : a.unrolled.jac_slots) by_col[js.param].push_back(&js);

    for (const auto& [q, slots] : by_col) {
        auto dit = dirs.find(q);
        if (dit == dirs.end() || !dit->second.known || dit->second.weights.empty()) {
            rep.skipped += slots.size();
            continue;
        }
        const detail::Direction& dir = dit->second;
        double h = step > 0 ? step : detail::auto_step(sema, in, dir);
        std::vector<double> up = interp.run(detail::perturb(in, sema, dir, h));
        std::vector<double> dn = interp.run(detail::perturb(in, sema, dir, -h));

        for (const JacSlot* js : slots) {
            auto vit = value_out.find(js->cell);
            if (vit == value_out.end()) {
                ++rep.skipped;
                continue;
            }
            JacEntry e;
            e.out_idx = js->out_idx;
            e.value_out_idx = vit->second;
            e.cell = js->cell;
            e.param = js->param;
            e.ad = base[size_t(js->out_idx)];
            e.fd = (up[size_t(vit->second)] - dn[size_t(vit->second)]) / (2 * h);
            e.abs_err = std::abs(e.ad - e.fd);
            double mag = std::max(std::abs(e.ad), std::abs(e.fd));
            e.rel_err = mag > 0 ? e.abs_err / mag : 0;
            // the absolute floor only rescues entries that are near zero on
            // both sides; everything else is held to the relative tolerance
            e.ok = mag <= abs_floor ? e.abs_err <= abs_floor : e.rel_err <= tol_rel;
            rep.entries.push_back(e);
            ++rep.checked;
            if (!e.ok) ++rep.failed;
        }
    }
    return rep;
}

// Central-difference estimates for explicit (value cell, parameter) targets.
// The value cell must be returned by the program (a plain copy into the
// return array) so the oracle can observe it. step <= 0 is rejected; omit it
// for the automatic cube-root-of-epsilon choice.
inline std::vector<double> finite_difference_jacobian(
    const Artifact& a, const Inputs& in,
    const std::vector<std::pair<CellRef, ParamRef>>& targets,
    std::optional<double> step = std::nullopt) {
    if (step && *step <= 0) throw InputError("invalid step: must be positive");
    const SemaInfo& sema = a.sema;

    std::map<CellRef, int> value_out;
    for (size_t r = 0; r < a.unrolled.out_copy.size(); ++r)
        if (a.unrolled.out_copy[r].var >= 0) value_out[a.unrolled.out_copy[r]] = int(r);

    Interpreter interp(a.module, a.sema);
    std::map<ParamRef, detail::Direction> dirs;
    detail::build_directions(a, interp, in, dirs);

    std::map<ParamRef, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::vector<double> out;
    for (const auto& [cell, q] : targets) {
        auto vit = value_out.find(cell);
        if (vit == value_out.end())
            throw InputError("cell '" + cell_name(sema, cell) + "' is not a returned value");
        auto dit = dirs.find(q);
        if (dit == dirs.end() || !dit->second.known || dit->second.weights.empty())
            throw InputError("no input direction realizes parameter '" + param_name(sema, q) +
                             "'");
        double h = step ? *step : detail::auto_step(sema, in, dit->second);
        auto cit = cache.find(q);
        if (cit == cache.end()) {
            std::vector<double> up = interp.run(detail::perturb(in, sema, dit->second, h));
            std::vector<double> dn = interp.run(detail::perturb(in, sema, dit->second, -h));
            cit = cache.emplace(q, std::make_pair(std::move(up), std::move(dn))).first;
        }
        double fp = cit->second.first[size_t(vit->second)];
        double fm = cit->second.second[size_t(vit->second)];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw InputError("non-finite value at perturbed point for '" +
                             cell_name(sema, cell) + "' ' '" + param_name(sema, q) + "'");
        out.push_back((fp - fm) / (2 * h));
    }
    return out;
}

// The state argument of a dynamical-system right-hand side: the unique array
// argument whose length equals the return length.
inline int state_arg(const SemaInfo& sema) {
    int found = -1;
    int ret_size = sema.vars[size_t(sema.ret_var)].size;
    for (size_t v = 0; v < sema.vars.size(); ++v) {
        const VarInfo& vi = sema.vars[v];
        if (!vi.is_arg || !vi.is_array || vi.size != ret_size) continue;
        if (found >= 0) return -1;
        found = int(v);
    }
    return found;
}


// Uniform-step RK4 trajectory of the compiled system, including any
// variational components carried inside the state vector. The trajectory has
// steps+1 states; a zero-length span returns just the initial state.
inline std::vector<std::vector<double>> integrate(
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    std::vector<double> y, double t0, double t1, int steps) {
    std::vector<std::vector<double>> traj;
    traj.push_back(y);
    if (steps <= 0 || t0 == t1) return traj;
    double h = (t1 - t0) / steps;
    size_t n = y.size();
    std::vector<double> tmp(n);
    for (int s = 0; s < steps; ++s) {
        std::vector<double> k1 = f(y);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        std::vector<double> k2 = f(tmp);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        std::vector<double> k3 = f(tmp);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        std::vector<double> k4 = f(tmp);
        for (size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (double v : y)
            if (!std::isfinite(v))
                throw InputError("non-finite state at step " + std::to_string(s + 1));
        traj.push_back(y);
    }
    return traj;
}

// f(y) closure over the compiled program: y goes into the state argument,
// everything else stays fixed.
inline std::function<std::vector<double>(const std::vector<double>&)> make_rhs(
    const Artifact& a, const Inputs& fixed) {
    int sv = state_arg(a.sema);
    if (sv < 0) throw InputError("program has no unambiguous state argument");
    auto interp = std::make_shared<Interpreter>(a.module, a.sema);
    std::string state_name = a.sema.vars[size_t(sv)].name;
    return [interp, fixed, state_name](const std::vector<double>& y) {
        Inputs in = fixed;
        in.values[state_name] = y;
        return interp->run(in);
    };
}

inline std::string report_stats(const Artifact& a) {
    const SemaInfo& sema = a.sema;
    std::string out;
    out += "function " + a.program.func.name + ": " +
           std::to_string(sema.vars[size_t(sema.ret_var)].size) + " outputs\n";
    out += "actions: " + std::to_string(a.unrolled.trace.actions.size()) + "\n";
    PlanStats st = plan_stats(a.plan, a.sema);
    out += "derivative pairs: " + std::to_string(st.pair_count) + "\n";
    out += "packed slots: " + std::to_string(st.packed_slots) + " (dense would be " +
           std::to_string(st.dense_slots) + ")\n";
    if (st.dense_slots > 0) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "density ratio: %g\n",
                      double(st.packed_slots) / double(st.dense_slots));
        out += buf;
    }
    for (const PairPlan& pp : a.plan.pairs)
        out += "  " + sema.vars[size_t(pp.var)].name + " ' " + sema.pvs[size_t(pp.pv)].name +
               ": " + std::to_string(pp.total) + " of " +
               std::to_string(size_t(pp.ncells) * size_t(sema.pvs[size_t(pp.pv)].size)) + "\n";
    return out;
}

}  // namespace landau
