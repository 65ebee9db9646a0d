#pragma once

#include "landau/adplan.hpp"
#include "landau/ast.hpp"
#include "landau/codegen.hpp"
#include "landau/compiler.hpp"
#include "landau/diagnostics.hpp"
#include "landau/elaborator.hpp"
#include "landau/emit_c.hpp"
#include "landau/harness.hpp"
#include "landau/interp.hpp"
#include "landau/lexer.hpp"
#include "landau/lir.hpp"
#include "landau/parser.hpp"
#include "landau/printer.hpp"
#include "landau/sema.hpp"
#include "landau/token.hpp"
#include "landau/trace.hpp"
