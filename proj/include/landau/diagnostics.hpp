#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace landau {

struct SourceLoc {
    int line = 0;  // 1-based, 0 = unknown
    int col = 0;
};

// A single compiler diagnostic, rendered as "file:line:col: severity: message".
struct Diagnostic {
    std::string file;
    SourceLoc loc;
    std::string severity;  // "error" | "warning"
    std::string message;

    std::string str() const {
        char head[256];
        std::snprintf(head, sizeof(head), "%s:%d:%d: ", file.c_str(), loc.line, loc.col);
        return std::string(head) + severity + ": " + message;
    }
};

// Thrown for any problem that makes the program ill-formed. The CLI maps it
// to exit code 1, test code catches it to assert on the message.
class CompileError : public std::runtime_error {
public:
    CompileError(std::string file, SourceLoc loc, std::string message)
        : std::runtime_error(Diagnostic{file, loc, "error", message}.str()),
          diag_{std::move(file), loc, "error", std::move(message)} {}

    const Diagnostic& diag() const { return diag_; }

private:
    Diagnostic diag_;
};

// Bad runtime inputs (missing file, mis-sized array, ...). CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(std::string message) : std::runtime_error(std::move(message)) {}
};

}  // namespace landau
