// nonrecip: command-line front end for sweeps, maps, design and noise reports

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "nonrecip/commands.hpp"
#include "nonrecip/config.hpp"
#include "nonrecip/error.hpp"

namespace {

struct Args {
    std::string config_path;
    std::string out_path;
    std::string model;
    int workers = 1;
};

int execute(const std::string& command, const Args& args) {
    using namespace nonrecip;
    try {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw Error(ErrorKind::ParseError, "cannot read config '" + args.config_path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();

        RunConfig config = parse_config(buffer.str());
        if (!args.model.empty()) config.model = parse_model_kind(args.model);
        const std::string body = run_command(command, config, args.workers);

        if (args.out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(args.out_path, std::ios::binary);
            if (!out) throw Error(ErrorKind::ValidationError, "cannot write '" + args.out_path + "'");
            out << body;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_status(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonreciprocal optomechanical amplifier/isolator simulator"};
    app.require_subcommand(1);

    Args args;
    std::string chosen;
    const std::pair<const char*, const char*> commands[] = {
        {"sweep", "transmission and added noise versus frequency (CSV)"},
        {"map", "scalar over a two-parameter grid"},
        {"design", "isolation solutions, amplifier working point, optional optimization"},
        {"stability", "eigenvalue criterion, printed inequalities, stability boundary"},
        {"noise", "output spectrum and added noise versus frequency (CSV)"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", args.config_path, "JSON run configuration")->required();
        sub->add_option("--out", args.out_path, "output file (default stdout)");
        sub->add_option("--model", args.model, "override model: full|reduced|analytic")
            ->check(CLI::IsMember({"full", "reduced", "analytic"}));
        sub->add_option("--workers", args.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return execute(chosen, args);
}
