#include <catch2/catch_amalgamated.hpp>

#include "landau/parser.hpp"
#include "landau/sema.hpp"
#include "support/bad_programs.hpp"
#include "support/common.hpp"

using landau::CompileError;
using landau::Program;
using landau::SemaInfo;
using landau::analyze;
using landau::parse_source;

namespace {

SemaInfo check(const std::string& source, Program* out = nullptr) {
    static Program keep;  // analyze annotates in place; keep the tree alive
    keep = Program{};
    keep = parse_source(source);
    SemaInfo info = analyze(keep);
    if (out) *out = std::move(keep);
    return info;
}

}  // namespace

TEST_CASE("constant folding") {
    SemaInfo s = check(
        "#lang landau\n"
        "const int N = 6\n"
        "const int k = 2\n"
        "const int l = N / k\n"
        "const int q = l * l - N + (k == 2)\n"
        "real[1] f(real x) { f[0] = x }\n");
    CHECK(s.consts.lookup("N") == 6);
    CHECK(s.consts.lookup("l") == 3);
    CHECK(s.consts.lookup("q") == 4);
    CHECK_FALSE(s.consts.lookup("missing").has_value());
}

TEST_CASE("variable and parameter tables") {
    SemaInfo s = check(
        "#lang landau\n"
        "const int N = 3\n"
        "parameter[N] p0\n"
        "real[N] f(real[N] x, real t) {\n"
        "  real[N] v = x\n"
        "  int n = 0\n"
        "  v ' p0[0] = x\n"
        "  f[ : ] = v ' t\n"
        "}\n");
    REQUIRE(s.ret_var >= 0);
    CHECK(s.vars[size_t(s.ret_var)].name == "f");
    CHECK(s.vars[size_t(s.ret_var)].size == 3);
    int x = s.var_by_name("x");
    REQUIRE(x >= 0);
    CHECK(s.vars[size_t(x)].is_arg);
    CHECK(s.vars[size_t(x)].is_array);

    // p0 is a declared parameter; t becomes a scalar-argument denominator.
    REQUIRE(s.pvs.size() == 2);
    CHECK(s.pvs[0].name == "p0");
    CHECK(s.pvs[0].size == 3);
    CHECK_FALSE(s.pvs[0].scalar_arg);
    CHECK(s.pvs[1].name == "t");
    CHECK(s.pvs[1].size == 1);
    CHECK(s.pvs[1].scalar_arg);
    CHECK(s.pvs[1].arg_var == s.var_by_name("t"));
}

TEST_CASE("scalar argument not used as denominator stays a plain argument") {
    SemaInfo s = check("#lang landau\nreal[1] f(real t) { f[0] = t }\n");
    CHECK(s.pvs.empty());
}

TEST_CASE("discards are recorded") {
    SemaInfo s = check(
        "#lang landau\n"
        "parameter[2] p0\n"
        "real[1] f(real[2] x) {\n"
        "  real y = x[0]\n"
        "  y ' p0[0] = 1.0\n"
        "  discard y ' p0\n"
        "  f[0] = y\n"
        "}\n");
    int y = s.var_by_name("y");
    REQUIRE(y >= 0);
    CHECK(s.discards.count({y, 0}) == 1);
}

TEST_CASE("integer registers") {
    SemaInfo s = check(
        "#lang landau\n"
        "real[1] f(real x) {\n"
        "  int a = 1\n"
        "  for i = [0 : 2] { for j = [0 : 2] { int b = i + j\n a = b } }\n"
        "  f[0] = x\n"
        "}\n");
    CHECK(s.n_loop_regs == 2);
    CHECK(s.n_int_regs == 4);
    int a = s.var_by_name("a");
    CHECK(s.int_var_reg(a) >= s.n_loop_regs);
}

TEST_CASE("block scoping") {
    // names declared inside a loop body do not leak out
    CHECK_THROWS_WITH(check("#lang landau\nreal[1] f(real x) {\n"
                            "  for i = [0 : 2] { real y = x }\n"
                            "  f[0] = y\n}\n"),
                      Catch::Matchers::ContainsSubstring("unknown name 'y'"));
    // but sibling blocks may reuse a name
    CHECK_NOTHROW(check("#lang landau\nreal[1] f(real x) {\n"
                        "  for i = [0 : 2] { real y = x }\n"
                        "  for i = [0 : 2] { real y = x }\n"
                        "  f[0] = x\n}\n"));
}

TEST_CASE("loop bounds may depend on outer loop indices") {
    CHECK_NOTHROW(check("#lang landau\nconst int N = 4\nreal[1] f(real x) {\n"
                        "  for i = [0 : N] for j = [i : N] f[0] += x\n}\n"));
}

TEST_CASE("whole-array reads become full slices") {
    Program p;
    check("#lang landau\nreal[2] f(real[2] x) { f[ : ] = x }\n", &p);
    const landau::Expr& rhs = *p.func.body[0]->rhs;
    CHECK(rhs.kind == landau::Expr::Kind::Slice);
    CHECK(rhs.type.is_vec());
    CHECK(rhs.type.len == 2);
}

TEST_CASE("every ill-formed program yields its designated diagnostic") {
    for (const support::BadProgram& bp : support::bad_programs()) {
        INFO(bp.name);
        try {
            check(bp.source);
            FAIL("expected a diagnostic containing: " + bp.diagnostic);
        } catch (const CompileError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(bp.diagnostic));
        }
    }
}

TEST_CASE("corpus passes sema with zero diagnostics") {
    for (const std::string& name : support::corpus_names()) {
        INFO(name);
        CHECK_NOTHROW(check(support::read_file(support::corpus_path(name))));
    }
}
