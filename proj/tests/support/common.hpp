#pragma once

// Shared helpers for the test suite: corpus paths, subprocess capture,
// random input generation, and a dlopen-based executor for the C backend.

#include <dlfcn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/landau.hpp"

#ifndef LANDAU_SOURCE_DIR
#define LANDAU_SOURCE_DIR "."
#endif
#ifndef LANDAU_CLI_PATH
#define LANDAU_CLI_PATH "landau"
#endif

namespace support {

inline std::string src_dir() { return LANDAU_SOURCE_DIR; }
inline std::string cli_path() { return LANDAU_CLI_PATH; }
inline std::string corpus_path(const std::string& name) {
    return src_dir() + "/corpus/" + name + ".landau";
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("test: cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("test: cannot write " + path);
    f << text;
}

inline landau::Artifact compile_corpus(const std::string& name) {
    std::string path = corpus_path(name);
    return landau::compile(read_file(path), path);
}

inline std::vector<std::string> corpus_names() {
    return {"kepler", "kepler_steps", "spacecraft", "migration_n4", "migration_n20",
            "migration_n100"};
}

// Uniform generic inputs, away from zero so sqrt/log stay well defined.
inline landau::Inputs random_inputs(const landau::SemaInfo& sema, std::mt19937& rng,
                                    double lo = 0.2, double hi = 1.7) {
    std::uniform_real_distribution<double> dist(lo, hi);
    landau::Inputs in;
    for (const landau::VarInfo& v : sema.vars) {
        if (!v.is_arg) continue;
        std::vector<double>& vals = in.values[v.name];
        vals.resize(size_t(v.size));
        for (double& x : vals) x = dist(rng);
    }
    return in;
}

// --- subprocess capture -----------------------------------------------------

struct CmdResult {
    int exit_code = -1;
    std::string out, err;
};

class TempDir {
public:
    TempDir() {
        char tmpl[] = "/tmp/landau_test_XXXXXX";
        if (!mkdtemp(tmpl)) throw std::runtime_error("test: mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        int rc = std::system(("rm -rf " + path_).c_str());
        (void)rc;
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

inline CmdResult run_cmd(const std::string& cmd) {
    TempDir td;
    std::string full = cmd + " > " + td.file("out") + " 2> " + td.file("err");
    int rc = std::system(full.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_file(td.file("out"));
    r.err = read_file(td.file("err"));
    return r;
}

inline CmdResult run_cli(const std::string& args) {
    return run_cmd("'" + cli_path() + "' " + args);
}

// --- C backend executor ------------------------------------------------------

// Compiles the emitted C plus a fixed-ABI shim into a shared object and loads
// it. The shim keeps the verified code untouched while giving every program
// the same call signature.
class CompiledC {
public:
    explicit CompiledC(const landau::Artifact& a, bool strict = true) : a_(&a) {
        std::string src = landau::emit_c(a);
        std::string sym = landau::c_symbol_name(a.program.func.name);
        std::string shim = "\nvoid landau_test_shim(double* ret, const double* const* arrs,\n"
                           "                      const double* scalars) {\n"
                           "    (void) arrs;\n    (void) scalars;\n    " + sym + "(ret";
        int na = 0, ns = 0;
        for (const landau::ArgDecl& arg : a.program.func.args) {
            if (arg.is_array) shim += ", arrs[" + std::to_string(na++) + "]";
            else shim += ", scalars[" + std::to_string(ns++) + "]";
        }
        shim += ");\n}\n";

        dir_ = std::make_unique<TempDir>();
        std::string c_path = dir_->file("gen.c");
        std::string so_path = dir_->file("gen.so");
        write_file(c_path, src + shim);

        const char* cc = std::getenv("LANDAU_CC");
        std::string compiler = cc && *cc ? cc : "cc";
        std::string flags = strict ? "-std=c99 -Wall -Wextra -pedantic -Werror" : "-std=c99";
        CmdResult r = run_cmd(compiler + " " + flags + " -O2 -fPIC -shared -o " + so_path +
                              " " + c_path + " -lm");
        if (r.exit_code != 0)
            throw std::runtime_error("test: C compile failed:\n" + r.err);

        handle_ = dlopen(so_path.c_str(), RTLD_NOW);
        if (!handle_) throw std::runtime_error(std::string("test: dlopen failed: ") + dlerror());
        fn_ = reinterpret_cast<ShimFn>(dlsym(handle_, "landau_test_shim"));
        if (!fn_) throw std::runtime_error("test: shim symbol not found");
    }

    ~CompiledC() {
        if (handle_) dlclose(handle_);
    }
    CompiledC(const CompiledC&) = delete;
    CompiledC& operator=(const CompiledC&) = delete;

    std::vector<double> run(const landau::Inputs& in) const {
        std::vector<const double*> arrs;
        std::vector<double> scalars;
        for (const landau::ArgDecl& arg : a_->program.func.args) {
            const auto it = in.values.find(arg.name);
            if (it == in.values.end())
                throw std::runtime_error("test: missing argument " + arg.name);
            if (arg.is_array) arrs.push_back(it->second.data());
            else scalars.push_back(it->second.at(0));
        }
        std::vector<double> ret(size_t(a_->program.func.folded_ret_size), 0.0);
        fn_(ret.data(), arrs.data(), scalars.data());
        return ret;
    }

private:
    using ShimFn = void (*)(double*, const double* const*, const double*);
    const landau::Artifact* a_;
    std::unique_ptr<TempDir> dir_;
    void* handle_ = nullptr;
    ShimFn fn_ = nullptr;
};

}  // namespace support
