#include "qirvm/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qirvm/backend.hpp"
#include "qirvm/frontend.hpp"
#include "qirvm/interpreter.hpp"
#include "qirvm/recorder.hpp"

namespace qirvm::cli {

std::variant<CliArgs, CliExit> parse_args(const std::vector<std::string>& argv, std::ostream& out,
                                          std::ostream& err) {
    CliArgs args;
    CLI::App app{"Execute QIR base-profile programs and print a JSON histogram of recorded results.", "qirvm"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Parse, validate and execute a QIR (.ll) program");
    run->add_option("file", args.input_path, "QIR textual assembly file")->required();
    run->add_option("--shots", args.shots, "Number of shots")->check(CLI::PositiveNumber)->capture_default_str();
    run->add_option("--seed", args.seed, "Seed for the per-shot RNG streams")->capture_default_str();
    run->add_option("--backend", args.backend, "Execution backend (statevector, trace)")->capture_default_str();
    run->add_option("--entry", args.entry, "Run this function instead of the entry_point-attributed one");
    run->add_option("--output", args.output, "Write JSON here instead of standard output");
    run->add_flag("--per-shot", args.per_shot, "Include the per-shot bitstrings in the JSON");
    run->add_flag("--validate-only", args.validate_only, "Stop after validation; print diagnostics only");

    std::vector<std::string> rest(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(rest.begin(), rest.end());  // CLI11 consumes a reversed vector
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return CliExit{kExitOk};
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return CliExit{kExitOk};
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return CliExit{kExitOk};
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return CliExit{kExitUsage};
    }
    return args;
}

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

}  // namespace

int main_run(const CliArgs& args, std::ostream& out, std::ostream& err) {
    auto text = read_file(args.input_path);
    if (!text || std::filesystem::is_directory(args.input_path)) {
        err << "qirvm: cannot read input file '" << args.input_path << "'\n";
        return kExitNoInput;
    }

    if (!default_backends().contains(args.backend)) {
        err << "qirvm: " << UnknownBackend(args.backend, default_backends().names()).what() << '\n';
        return kExitUsage;
    }

    ProgramModule module;
    try {
        module = parse_module(*text, std::filesystem::path(args.input_path).stem().string());
    } catch (const ParseError& e) {
        err << args.input_path << ':' << e.loc().line << ':' << e.loc().column << ": error: " << e.detail() << '\n';
        return kExitParse;
    }

    const Registry registry = default_registry();
    EntryPoint entry;
    try {
        entry = find_entry(module, args.entry);
    } catch (const EntryError& e) {
        err << args.input_path << ": error: " << e.what() << '\n';
        return kExitValidation;
    }

    auto diags = validate_profile(module, entry, registry);
    for (const auto& d : diags) {
        err << args.input_path << ':' << d.loc.line << ':' << d.loc.column << ": "
            << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message << '\n';
    }
    if (has_errors(diags)) return kExitValidation;
    if (args.validate_only) return kExitOk;

    RunConfig config;
    config.shots = args.shots;
    config.seed = args.seed;
    config.backend = args.backend;
    config.output_path = args.output;
    config.per_shot = args.per_shot;

    RunResult result;
    try {
        result = run_program(module, entry, registry, config);
    } catch (const RuntimeFault& e) {
        err << args.input_path;
        if (e.loc()) err << ':' << e.loc()->line << ':' << e.loc()->column;
        err << ": runtime fault: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "qirvm: internal error: " << e.what() << '\n';
        return kExitRuntime;
    }

    const std::string json = emit_json(result);
    if (args.output) {
        std::ofstream file(*args.output, std::ios::binary | std::ios::trunc);
        if (!file || !(file << json) || !file.flush()) {
            err << "qirvm: cannot write output file '" << *args.output << "'\n";
            return kExitCantCreate;
        }
    } else {
        out << json;
        out.flush();
    }
    return kExitOk;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    auto parsed = parse_args(argv, out, err);
    if (const auto* exit = std::get_if<CliExit>(&parsed)) return exit->code;
    return main_run(std::get<CliArgs>(parsed), out, err);
}

}  // namespace qirvm::cli
