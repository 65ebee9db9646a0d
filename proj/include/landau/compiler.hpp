#pragma once

#include <string>

#include "landau/adplan.hpp"
#include "landau/codegen.hpp"
#include "landau/elaborator.hpp"
#include "landau/emit_c.hpp"
#include "landau/lexer.hpp"
#include "landau/lir.hpp"
#include "landau/parser.hpp"
#include "landau/sema.hpp"

namespace landau {

// Everything the pipeline produces for one source file.
struct Artifact {
    Program program;
    SemaInfo sema;
    UnrollResult unrolled;
    StoredSet stored;
    DerivPlan plan;
    LModule module;
};

inline Artifact compile(const std::string& source, const std::string& file = "<input>") {
    Program prog = parse_source(source, file);
    SemaInfo sema = analyze(prog);
    UnrollResult unrolled = unroll(prog, sema);
    StoredSet stored = propagate_needs(unrolled.trace, sema, unrolled.bearing);
    DerivPlan plan = build_plan(stored, sema);
    LModule module = lower(prog, sema, plan);
    return Artifact{std::move(prog),   std::move(sema), std::move(unrolled),
                    std::move(stored), std::move(plan), std::move(module)};
}

inline std::string emit_c(const Artifact& a) {
    return emit_c(a.module, a.sema, a.program.func.name);
}

}  // namespace landau
