// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "landau/landau.hpp"
#include "support/bad_programs.hpp"
#include "support/common.hpp"

using landau::Artifact;
using landau::CellRef;
using landau::Inputs;
using landau::ParamRef;

namespace {

int failures = 0;
std::vector<std::string> notes;

void report(int n, const char* what, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what);
    if (!ok) {
        ++failures;
        for (const std::string& s : notes) std::printf("       %s\n", s.c_str());
    }
    notes.clear();
}

void note(const std::string& s) { notes.push_back(s); }

double rel(double a, double b) {
    double m = std::max(std::fabs(a), std::fabs(b));
    return m == 0 ? 0 : std::fabs(a - b) / m;
}

// ---- criterion 1: corpus fidelity -------------------------------------------

bool corpus_fidelity() {
    bool ok = true;
    std::vector<std::string> names = support::corpus_names();
    names.push_back("migration");
    for (const std::string& name : names) {
        try {
            support::compile_corpus(name);
        } catch (const std::exception& e) {
            note(name + ": " + e.what());
            ok = false;
        }
    }
    try {
        Artifact a = support::compile_corpus("migration_n4");
        std::string got = landau::dump_actions_reversed(a.unrolled.trace, a.sema);
        std::string want =
            support::read_file(support::src_dir() + "/tests/golden/migration_n4_actions.txt");
        if (got != want) {
            note("migration reversed action trace differs from the golden dump");
            ok = false;
        }
    } catch (const std::exception& e) {
        note(e.what());
        ok = false;
    }
    return ok;
}

// ---- criterion 2: sparsity and compile time ----------------------------------

bool sparsity() {
    bool ok = true;
    Artifact a100 = support::compile_corpus("migration_n100");
    const landau::PairPlan* pp =
        a100.plan.find(a100.sema.var_by_name("p_dot"), a100.sema.pv_by_name("p0"));
    if (!pp || pp->total != 1000) {
        note("N=100: expected 1000 packed p_dot slots, got " +
             std::to_string(pp ? pp->total : -1));
        ok = false;
    }
    if (pp && size_t(pp->ncells) * 100 != 10000) {
        note("N=100: dense count is not 10000");
        ok = false;
    }

    auto t0 = std::chrono::steady_clock::now();
    Artifact a1000 = support::compile_corpus("migration");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 120.0) {
        note("N=1000 compile took " + std::to_string(secs) + " s");
        ok = false;
    }
    const landau::PairPlan* pd =
        a1000.plan.find(a1000.sema.var_by_name("p_dot"), a1000.sema.pv_by_name("p0"));
    if (!pd || pd->total != 100000) {
        note("N=1000: expected 100000 packed p_dot slots, got " +
             std::to_string(pd ? pd->total : -1));
        ok = false;
    }
    return ok;
}

// ---- criterion 3: AD vs central differences ----------------------------------

bool ad_vs_fd() {
    bool ok = true;
    std::mt19937 rng(101);
    for (const std::string& name : support::corpus_names()) {
        Artifact a = support::compile_corpus(name);
        for (int t = 0; t < 20; ++t) {
            Inputs in = support::random_inputs(a.sema, rng);
            landau::JacobianReport rep = landau::check_jacobian(a, in, 1e-6, 1e-9);
            if (rep.failed != 0 || rep.skipped != 0) {
                note(name + " point " + std::to_string(t) + ": " + std::to_string(rep.failed) +
                     " failed, " + std::to_string(rep.skipped) + " skipped");
                ok = false;
                break;
            }
        }
    }
    // Kepler partials against the closed forms
    Artifact k = support::compile_corpus("kepler");
    landau::Interpreter ki(k.module, k.sema);
    for (int t = 0; t < 20; ++t) {
        Inputs in = support::random_inputs(k.sema, rng);
        double E = in.values["E"][0], e = in.values["e"][0];
        std::vector<double> out = ki.run(in);
        if (std::fabs(out[1] - (1.0 - e * std::cos(E))) > 1e-12 ||
            std::fabs(out[2] + std::sin(E)) > 1e-12) {
            note("kepler closed forms violated at E=" + std::to_string(E));
            ok = false;
            break;
        }
    }
    return ok;
}

// ---- criterion 4: interpreter vs emitted C -----------------------------------

bool interp_vs_c() {
    bool ok = true;
    std::mt19937 rng(202);
    for (const std::string& name : support::corpus_names()) {
        Artifact a = support::compile_corpus(name);
        try {
            // strict flags: -std=c99 -Wall -Wextra -pedantic -Werror
            support::CompiledC cc(a);
            landau::Interpreter interp(a.module, a.sema);
            for (int t = 0; t < 100; ++t) {
                Inputs in = support::random_inputs(a.sema, rng);
                std::vector<double> vi = interp.run(in);
                std::vector<double> vc = cc.run(in);
                for (size_t i = 0; i < vi.size(); ++i)
                    if (rel(vi[i], vc[i]) > 1e-12) {
                        note(name + ": backends differ at output " + std::to_string(i));
                        ok = false;
                        t = 100;
                        break;
                    }
            }
        } catch (const std::exception& e) {
            note(name + ": " + e.what());
            ok = false;
        }
    }
    return ok;
}

// ---- criterion 5: spacecraft integration -------------------------------------

std::vector<double> spacecraft_state(std::vector<double> rv) {
    std::vector<double> y(48, 0.0);
    for (int i = 0; i < 6; ++i) y[size_t(i)] = rv[size_t(i)];
    for (int i = 0; i < 6; ++i) y[size_t(6 + 6 * i + i)] = 1.0;
    return y;
}

bool trajectory() {
    bool ok = true;
    Artifact a = support::compile_corpus("spacecraft");
    Inputs fixed;
    fixed.values["GM"] = {1.0};
    auto rhs = landau::make_rhs(a, fixed);
    std::vector<double> y0 = spacecraft_state({1, 0, 0, 0, 1, 0});
    double period = 2.0 * std::acos(-1.0);

    // quarter orbit: carried Jacobian blocks vs trajectory perturbation
    double T = period / 4.0;
    int steps = 2500;
    std::vector<double> yT = landau::integrate(rhs, y0, 0.0, T, steps).back();
    double h = 1e-6;
    for (int j = 0; j < 7 && ok; ++j) {  // 6 initial components, then GM
        std::vector<double> up = y0, dn = y0;
        Inputs fup = fixed, fdn = fixed;
        if (j < 6) {
            up[size_t(j)] += h;
            dn[size_t(j)] -= h;
        } else {
            fup.values["GM"][0] += h;
            fdn.values["GM"][0] -= h;
        }
        std::vector<double> tu =
            landau::integrate(landau::make_rhs(a, fup), up, 0.0, T, steps).back();
        std::vector<double> td =
            landau::integrate(landau::make_rhs(a, fdn), dn, 0.0, T, steps).back();
        for (int i = 0; i < 6; ++i) {
            double fd = (tu[size_t(i)] - td[size_t(i)]) / (2 * h);
            double ad = j < 6 ? yT[size_t(6 + 6 * i + j)] : yT[size_t(42 + i)];
            if (std::fabs(ad - fd) > 1e-4 * std::max(1.0, std::max(std::fabs(ad), std::fabs(fd)))) {
                note("jacobian block (" + std::to_string(i) + "," + std::to_string(j) +
                     "): ad " + std::to_string(ad) + " vs fd " + std::to_string(fd));
                ok = false;
            }
        }
    }

    // circular orbit closes after one period
    std::vector<double> yP = landau::integrate(rhs, y0, 0.0, period, 10000).back();
    for (int i = 0; i < 6; ++i)
        if (std::fabs(yP[size_t(i)] - y0[size_t(i)]) > 1e-6) {
            note("orbit component " + std::to_string(i) + " off by " +
                 std::to_string(yP[size_t(i)] - y0[size_t(i)]));
            ok = false;
        }
    return ok;
}

// ---- criterion 6: discard ----------------------------------------------------

bool discard_bitwise() {
    std::string three =
        "#lang landau\n"
        "real[2] f(real a, real t) {\n"
        "  real y = sin(a)\n"
        "  real z = a * a\n"
        "  discard y ' a\n"
        "  real x = y + z + t\n"
        "  f[0] = x\n"
        "  f[1] = x ' a\n"
        "}\n";
    std::string two =
        "#lang landau\n"
        "real[2] f(real a, real t) {\n"
        "  real y = sin(a)\n"
        "  real z = a * a\n"
        "  real x = z + t\n"
        "  f[0] = x\n"
        "  f[1] = x ' a\n"
        "}\n";
    Artifact a3 = landau::compile(three);
    Artifact a2 = landau::compile(two);
    Inputs in;
    in.values["a"] = {0.8125};
    in.values["t"] = {1.375};
    landau::Interpreter i3(a3.module, a3.sema), i2(a2.module, a2.sema);
    double d3 = i3.run(in)[1];
    double d2 = i2.run(in)[1];
    bool ok = std::memcmp(&d3, &d2, sizeof(double)) == 0;
    if (!ok) note("interpreter: " + std::to_string(d3) + " vs " + std::to_string(d2));

    support::CompiledC c3(a3), c2(a2);
    double e3 = c3.run(in)[1];
    double e2 = c2.run(in)[1];
    if (std::memcmp(&e3, &e2, sizeof(double)) != 0) {
        note("emitted C: " + std::to_string(e3) + " vs " + std::to_string(e2));
        ok = false;
    }
    return ok;
}

// ---- criterion 7: diagnostics ------------------------------------------------

bool diagnostics() {
    bool ok = true;
    support::TempDir td;
    int i = 0;
    for (const support::BadProgram& bp : support::bad_programs()) {
        std::string path = td.file("bad" + std::to_string(i++) + ".landau");
        support::write_file(path, bp.source);
        support::CmdResult r = support::run_cli("build '" + path + "'");
        if (r.exit_code != 1) {
            note(bp.name + ": exit code " + std::to_string(r.exit_code));
            ok = false;
        }
        if (r.err.find(bp.diagnostic) == std::string::npos) {
            note(bp.name + ": diagnostic '" + bp.diagnostic + "' missing from: " + r.err);
            ok = false;
        }
    }
    return ok;
}

// ---- criterion 8: mapping round trip -----------------------------------------

bool mapping_round_trip() {
    Artifact base = support::compile_corpus("migration_n4");
    const landau::SemaInfo& sema = base.sema;
    std::mt19937 rng(303);
    std::uniform_int_distribution<int> var_dist(0, int(sema.vars.size()) - 1);

    for (int iter = 0; iter < 1000; ++iter) {
        landau::StoredSet stored(sema);
        std::set<std::tuple<int, int, int, int>> model;
        int picks = 1 + iter % 32;
        for (int p = 0; p < picks; ++p) {
            int var = var_dist(rng);
            int cell = std::uniform_int_distribution<int>(0, sema.vars[size_t(var)].size - 1)(rng);
            int pv = std::uniform_int_distribution<int>(0, int(sema.pvs.size()) - 1)(rng);
            int param = std::uniform_int_distribution<int>(0, sema.pvs[size_t(pv)].size - 1)(rng);
            stored.set(CellRef{var, cell}, ParamRef{pv, param});
            model.insert({var, cell, pv, param});
        }
        landau::DerivPlan plan = landau::build_plan(stored, sema);

        // inverse(mapping(slot)) == slot for every packed slot
        for (const landau::PairPlan& pp : plan.pairs)
            for (int cell = 0; cell < pp.ncells; ++cell)
                for (int k = 0; k < pp.count(cell); ++k) {
                    int slot = pp.offsets[size_t(cell)] + k;
                    if (pp.slot(cell, pp.param_at(cell, k)) != slot) {
                        note("inverse(mapping(slot)) != slot at iteration " + std::to_string(iter));
                        return false;
                    }
                }
        // mapping(inverse(param)) == param wherever the inverse is defined
        for (const landau::PairPlan& pp : plan.pairs)
            for (int cell = 0; cell < pp.ncells; ++cell)
                for (int param = 0; param < sema.pvs[size_t(pp.pv)].size; ++param) {
                    int slot = pp.slot(cell, param);
                    bool stored_bit = model.count({pp.var, cell, pp.pv, param}) == 1;
                    if (stored_bit != (slot != pp.total) ||
                        (stored_bit && pp.map[size_t(slot)] != param)) {
                        note("mapping(inverse(param)) mismatch at iteration " +
                             std::to_string(iter));
                        return false;
                    }
                }
    }
    return true;
}

}  // namespace

int main() {
    report(1, "corpus programs compile cleanly; migration trace matches the reference",
           corpus_fidelity());
    report(2, "packed sparsity is 1000/10000 at N=100 and 100000 slots at N=1000 within 120 s",
           sparsity());
    report(3, "AD matches central differences on the corpus; kepler matches closed forms",
           ad_vs_fd());
    report(4, "interpreter and strict-C99 output agree to 1e-12 on 100 random inputs",
           interp_vs_c());
    report(5, "spacecraft variational blocks match trajectory FD; orbit closes to 1e-6",
           trajectory());
    report(6, "discard makes the three-term derivative bitwise equal to the two-term program",
           discard_bitwise());
    report(7, "ill-formed programs exit 1 with their designated diagnostics",
           diagnostics());
    report(8, "packed mappings and inverses round-trip on 1000 random need sets",
           mapping_round_trip());
    return failures == 0 ? 0 : 1;
}
