#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "landau/harness.hpp"
#include "support/common.hpp"

using landau::Artifact;
using landau::CellRef;
using landau::Inputs;
using landau::InputError;
using landau::JacobianReport;
using landau::ParamRef;

namespace {

// 48-dim spacecraft state: (r, v), d(state)/d(initial) = I, d(state)/dGM = 0
std::vector<double> spacecraft_state(const std::vector<double>& rv) {
    std::vector<double> y(48, 0.0);
    for (int i = 0; i < 6; ++i) y[size_t(i)] = rv[size_t(i)];
    for (int i = 0; i < 6; ++i) y[size_t(6 + 6 * i + i)] = 1.0;
    return y;
}

}  // namespace

TEST_CASE("finite differences recover the square rule") {
    Artifact a = landau::compile(
        "#lang landau\n"
        "real[2] g(real x) {\n"
        "  real y = sqr(x)\n"
        "  g[0] = y\n"
        "  g[1] = y ' x\n"
        "}\n");
    Inputs in;
    in.values["x"] = {1.5};
    CellRef y{a.sema.var_by_name("y"), 0};
    ParamRef x{a.sema.pv_by_name("x"), 0};
    std::vector<double> fd = landau::finite_difference_jacobian(a, in, {{y, x}});
    REQUIRE(fd.size() == 1);
    CHECK_THAT(fd[0], Catch::Matchers::WithinAbs(3.0, 1e-8));

    JacobianReport rep = landau::check_jacobian(a, in);
    CHECK(rep.checked == 1);
    CHECK(rep.failed == 0);
    CHECK(rep.entries[0].ad == 3.0);
}

TEST_CASE("a non-positive step is rejected") {
    Artifact a = support::compile_corpus("kepler");
    Inputs in;
    in.values["E"] = {0.5};
    in.values["e"] = {0.1};
    CellRef M{a.sema.var_by_name("M"), 0};
    ParamRef E{a.sema.pv_by_name("E"), 0};
    CHECK_THROWS_WITH(landau::finite_difference_jacobian(a, in, {{M, E}}, 0.0),
                      Catch::Matchers::ContainsSubstring("invalid step"));
    CHECK_THROWS_AS(landau::finite_difference_jacobian(a, in, {{M, E}}, -1e-6), InputError);
}

TEST_CASE("unreturned cells cannot be probed") {
    Artifact a = landau::compile(
        "#lang landau\n"
        "real[1] g(real x) {\n"
        "  real y = sqr(x)\n"
        "  g[0] = y + 1.0\n"  // y itself never reaches the return array
        "}\n");
    Inputs in;
    in.values["x"] = {1.0};
    CellRef y{a.sema.var_by_name("y"), 0};
    CHECK_THROWS_WITH(landau::finite_difference_jacobian(a, in, {{y, ParamRef{0, 0}}}),
                      Catch::Matchers::ContainsSubstring("not a returned value"));
}

TEST_CASE("kepler AD matches the closed-form partials to 1e-12") {
    Artifact a = support::compile_corpus("kepler");
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        Inputs in = support::random_inputs(a.sema, rng);
        double E = in.values["E"][0], e = in.values["e"][0];
        JacobianReport rep = landau::check_jacobian(a, in);
        REQUIRE(rep.checked == 2);
        CHECK(rep.failed == 0);
        for (const landau::JacEntry& ent : rep.entries) {
            double want = ent.param.pv == a.sema.pv_by_name("E") ? 1.0 - e * std::cos(E)
                                                                 : -std::sin(E);
            CHECK_THAT(ent.ad, Catch::Matchers::WithinAbs(want, 1e-12));
        }
    }
}

TEST_CASE("a zero relative tolerance exposes FD truncation error") {
    Artifact a = support::compile_corpus("kepler");
    Inputs in;
    in.values["E"] = {0.5};
    in.values["e"] = {0.1};
    JacobianReport strict = landau::check_jacobian(a, in, 0.0);
    CHECK(strict.failed > 0);
}

TEST_CASE("corpus AD agrees with central differences") {
    std::mt19937 rng(23);
    for (const std::string& name : support::corpus_names()) {
        INFO(name);
        Artifact a = support::compile_corpus(name);
        for (int t = 0; t < 3; ++t) {
            Inputs in = support::random_inputs(a.sema, rng);
            JacobianReport rep = landau::check_jacobian(a, in);
            CHECK(rep.failed == 0);
            if (!a.unrolled.jac_slots.empty()) CHECK(rep.checked > 0);
        }
    }
}

TEST_CASE("an explicit step also verifies") {
    Artifact a = support::compile_corpus("kepler");
    Inputs in;
    in.values["E"] = {0.9};
    in.values["e"] = {0.3};
    JacobianReport rep = landau::check_jacobian(a, in, 1e-6, 1e-9, 1e-5);
    CHECK(rep.checked == 2);
    CHECK(rep.failed == 0);
}

TEST_CASE("state argument detection") {
    CHECK(landau::state_arg(support::compile_corpus("spacecraft").sema) ==
          support::compile_corpus("spacecraft").sema.var_by_name("x"));
    CHECK(landau::state_arg(support::compile_corpus("kepler").sema) == -1);
    CHECK(landau::state_arg(support::compile_corpus("migration_n4").sema) == -1);
}

TEST_CASE("integration basics") {
    // dy/dt = y over [0, 1]: e within RK4 truncation
    Artifact a = landau::compile("#lang landau\nreal[1] f(real[1] y) { f[0] = y[0] }\n");
    auto rhs = landau::make_rhs(a, Inputs{});
    auto traj = landau::integrate(rhs, {1.0}, 0.0, 1.0, 200);
    REQUIRE(traj.size() == 201);
    CHECK_THAT(traj.back()[0], Catch::Matchers::WithinAbs(std::exp(1.0), 1e-9));

    // zero-length span: just the initial state
    auto still = landau::integrate(rhs, {2.0}, 3.0, 3.0, 100);
    REQUIRE(still.size() == 1);
    CHECK(still[0][0] == 2.0);
}

TEST_CASE("integration reports non-finite states") {
    Artifact a = landau::compile("#lang landau\nreal[1] f(real[1] y) { f[0] = y[0] * y[0] }\n");
    auto rhs = landau::make_rhs(a, Inputs{});
    CHECK_THROWS_WITH(landau::integrate(rhs, {1e200, }, 0.0, 10.0, 10),
                      Catch::Matchers::ContainsSubstring("non-finite state at step"));
}

TEST_CASE("circular orbit closes after one period") {
    Artifact a = support::compile_corpus("spacecraft");
    Inputs fixed;
    fixed.values["GM"] = {1.0};
    auto rhs = landau::make_rhs(a, fixed);
    std::vector<double> y0 = spacecraft_state({1, 0, 0, 0, 1, 0});
    double period = 2.0 * std::acos(-1.0);
    auto traj = landau::integrate(rhs, y0, 0.0, period, 2000);
    const std::vector<double>& yT = traj.back();
    for (int i = 0; i < 6; ++i) {
        INFO("component " << i);
        CHECK_THAT(yT[size_t(i)], Catch::Matchers::WithinAbs(y0[size_t(i)], 1e-6));
    }
}

TEST_CASE("variational block tracks a perturbed trajectory") {
    // d(position at T)/d(initial velocity y) from the carried Jacobian vs
    // rerunning the integration from a perturbed initial state
    Artifact a = support::compile_corpus("spacecraft");
    Inputs fixed;
    fixed.values["GM"] = {1.0};
    auto rhs = landau::make_rhs(a, fixed);
    std::vector<double> y0 = spacecraft_state({1, 0, 0, 0, 1, 0});
    double T = 0.7;
    int steps = 400;
    auto traj = landau::integrate(rhs, y0, 0.0, T, steps);
    const std::vector<double>& yT = traj.back();

    double h = 1e-6;
    for (int j : {1, 4}) {  // initial y position, initial y velocity
        std::vector<double> up = y0, dn = y0;
        up[size_t(j)] += h;
        dn[size_t(j)] -= h;
        auto tu = landau::integrate(rhs, up, 0.0, T, steps).back();
        auto td = landau::integrate(rhs, dn, 0.0, T, steps).back();
        for (int i = 0; i < 6; ++i) {
            double fd = (tu[size_t(i)] - td[size_t(i)]) / (2 * h);
            double ad = yT[size_t(6 + 6 * i + j)];
            INFO("d state[" << i << "] / d initial[" << j << "]");
            CHECK_THAT(ad, Catch::Matchers::WithinAbs(fd, 1e-4));
        }
    }
}

TEST_CASE("stats report shape") {
    Artifact a = support::compile_corpus("migration_n100");
    std::string st = landau::report_stats(a);
    CHECK_THAT(st, Catch::Matchers::ContainsSubstring("function f: 1100 outputs"));
    CHECK_THAT(st, Catch::Matchers::ContainsSubstring("p_dot ' p0: 1000 of 10000"));
    CHECK_THAT(st, Catch::Matchers::ContainsSubstring("density ratio"));
}
