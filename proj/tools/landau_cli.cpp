// Command-line driver: compile, run, verify and inspect landau programs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "landau/landau.hpp"

namespace {

std::string read_file(const std::string& path, const char* what) {
    std::ifstream f(path);
    if (!f) throw landau::InputError(std::string(what) + " not found: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

landau::Inputs parse_inputs(const std::string& path) {
    landau::Inputs in;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path, "input file"));
    } catch (const nlohmann::json::exception& e) {
        throw landau::InputError("cannot parse inputs '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw landau::InputError("inputs must be an object of name -> values");
    for (const auto& [name, val] : j.items()) {
        std::vector<double>& v = in.values[name];
        if (val.is_number()) {
            v.push_back(val.get<double>());
        } else if (val.is_array()) {
            for (const auto& x : val) {
                if (!x.is_number())
                    throw landau::InputError("argument '" + name + "' has a non-numeric entry");
                v.push_back(x.get<double>());
            }
        } else {
            throw landau::InputError("argument '" + name + "' must be a number or an array");
        }
    }
    return in;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw landau::InputError("cannot write to " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"landau: compiler and toolchain for sparse forward-AD dynamical systems"};
    app.require_subcommand(1);

    std::string source, output, inputs_path, report_path, emit = "interp";
    double tol = 1e-6;
    bool want_actions = false, want_plan = false;

    CLI::App* build = app.add_subcommand("build", "compile a program");
    build->add_option("file", source)->required();
    build->add_option("--emit", emit, "target backend")
        ->check(CLI::IsMember({"c", "interp"}));
    build->add_option("-o,--output", output, "output path ('-' for stdout)");
    build->add_flag("--dump-actions", want_actions, "also print the reversed action trace");
    build->add_flag("--dump-plan", want_plan, "also print the packed derivative plan");

    CLI::App* run = app.add_subcommand("run", "execute via the interpreter");
    run->add_option("file", source)->required();
    run->add_option("--inputs", inputs_path, "JSON object: argument name -> value(s)")
        ->required();
    run->add_option("-o,--output", output);

    CLI::App* check = app.add_subcommand("check", "verify AD against finite differences");
    check->add_option("file", source)->required();
    check->add_option("--inputs", inputs_path)->required();
    check->add_option("--tol", tol, "relative tolerance");
    check->add_option("--report", report_path, "write per-entry TSV report");

    CLI::App* stats = app.add_subcommand("stats", "sparsity and size report");
    stats->add_option("file", source)->required();

    CLI::App* dump = app.add_subcommand("dump", "print compiler artifacts");
    dump->add_option("file", source)->required();
    dump->add_flag("--actions", want_actions, "reversed stage-1 action trace");
    dump->add_flag("--plan", want_plan, "packed index mappings");

    CLI11_PARSE(app, argc, argv);

    try {
        landau::Artifact art = landau::compile(read_file(source, "source file"), source);

        if (build->parsed()) {
            if (want_actions) std::cout << dump_actions_reversed(art.unrolled.trace, art.sema);
            if (want_plan) std::cout << dump_plan(art.plan, art.sema);
            if (emit == "c") write_output(output.empty() ? "-" : output, landau::emit_c(art));
            return 0;
        }
        if (run->parsed()) {
            landau::Interpreter interp(art.module, art.sema);
            std::vector<double> out = interp.run(parse_inputs(inputs_path));
            nlohmann::json j = out;
            write_output(output, j.dump() + "\n");
            return 0;
        }
        if (check->parsed()) {
            landau::JacobianReport rep =
                landau::check_jacobian(art, parse_inputs(inputs_path), tol);
            if (!report_path.empty()) write_output(report_path, rep.tsv(art.sema));
            std::cout << "checked " << rep.checked << " entries, " << rep.failed
                      << " failed, " << rep.skipped << " skipped\n";
            return rep.failed == 0 ? 0 : 3;
        }
        if (stats->parsed()) {
            std::cout << landau::report_stats(art);
            return 0;
        }
        if (dump->parsed()) {
            if (!want_actions && !want_plan)
                throw landau::InputError("dump: pass --actions and/or --plan");
            if (want_actions) std::cout << dump_actions_reversed(art.unrolled.trace, art.sema);
            if (want_plan) std::cout << dump_plan(art.plan, art.sema);
            return 0;
        }
    } catch (const landau::CompileError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const landau::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
