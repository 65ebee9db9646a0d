#pragma once

#include <memory>
#include <string>
#include <vector>

#include "landau/diagnostics.hpp"

namespace landau {

enum class BinOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Gt, Le, Ge };

inline const char* bin_op_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Gt: return ">";
        case BinOp::Le: return "<=";
        case BinOp::Ge: return ">=";
    }
    return "?";
}

// Expression type after sema. Vectors are real-valued; len < 0 means the
// length is loop-dependent and gets checked per iteration during unrolling.
struct SemType {
    enum class Kind { None, Int, Real, Vec } kind = Kind::None;
    int len = 1;

    bool is_int() const { return kind == Kind::Int; }
    bool is_real() const { return kind == Kind::Real; }
    bool is_vec() const { return kind == Kind::Vec; }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        IntLit,
        RealLit,
        Name,       // scalar variable, loop index, const, or whole-array read
        Index,      // base[idx]
        Slice,      // base[lo : hi], either bound omissible
        Unary,      // -x
        Binary,
        Call,       // builtin(arg)
        DerivRead,  // value ' denom
    };

    Kind kind;
    SourceLoc loc;

    long long int_val = 0;   // IntLit
    double real_val = 0;     // RealLit
    std::string name;        // Name / Index / Slice base name / Call name
    ExprPtr a, b;            // Unary/Binary operands; Index: a = idx; Slice: a = lo, b = hi (may be null)
    std::vector<ExprPtr> args;  // Call
    ExprPtr value, denom;       // DerivRead sides (Name/Index/Slice expressions)
    BinOp op = BinOp::Add;

    // sema annotations
    SemType type;
    int var_id = -1;    // resolved variable (Name/Index/Slice over a variable)
    int const_id = -1;  // resolved const (Name)
    int loop_id = -1;   // resolved loop index register (Name)
    int pv_id = -1;     // resolved parameter vector (DerivRead denom base)
    long long folded = 0;  // value, when this is a folded constant expression
    bool is_folded = false;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
    enum class Kind { VarDecl, Assign, DerivAssign, Discard, For, If };

    Kind kind;
    SourceLoc loc;
    int stmt_id = -1;  // assigned by the parser, back-referenced by later stages

    // VarDecl
    std::string name;
    bool decl_is_int = false;
    ExprPtr decl_size;  // null for scalars
    ExprPtr init;       // optional

    // Assign / DerivAssign
    ExprPtr lhs;   // Name/Index/Slice
    ExprPtr denom; // DerivAssign only
    bool plus_assign = false;
    ExprPtr rhs;

    // Discard: name ' denom_name
    std::string denom_name;

    // For
    ExprPtr lo, hi;
    Block body;

    // If
    ExprPtr cond;
    Block else_body;

    // sema annotations
    int var_id = -1;   // VarDecl / Discard variable
    int loop_id = -1;  // For index register
    int pv_id = -1;    // Discard denominator
};

struct ConstDecl {
    std::string name;
    ExprPtr value;
    SourceLoc loc;
    long long folded = 0;
};

struct ParamDecl {
    std::string name;
    ExprPtr size;
    SourceLoc loc;
    int folded_size = 0;
};

struct ArgDecl {
    std::string name;
    bool is_array = false;
    ExprPtr size;  // null for scalars
    SourceLoc loc;
    int folded_size = 1;
};

struct FuncDecl {
    std::string name;
    ExprPtr ret_size;
    std::vector<ArgDecl> args;
    Block body;
    SourceLoc loc;
    int folded_ret_size = 0;
};

struct Program {
    std::string file = "<input>";
    std::vector<ConstDecl> consts;
    std::vector<ParamDecl> params;
    FuncDecl func;
    int stmt_count = 0;
};

}  // namespace landau
