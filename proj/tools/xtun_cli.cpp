#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xtun/run_config.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::vector<std::string> overrides;
};

int execute(const std::string& subcommand, const Options& opt) {
    try {
        nlohmann::json config = xtun::load_config(opt.config_path, opt.overrides);
        std::ostringstream buffer;
        xtun::run_pipeline(subcommand, config, buffer, opt.format);
        if (opt.out_path.empty()) {
            std::cout << buffer.str();
        } else {
            std::ofstream out(opt.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "ERROR 1: cannot open output file: " << opt.out_path << "\n";
                return 1;
            }
            out << buffer.str();
        }
        return 0;
    } catch (const xtun::validation_error& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    } catch (const xtun::regime_error& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for exchange-assisted tunneling in 1D"};
    app.require_subcommand(1);

    Options opt;
    int rc = 0;
    for (const std::string& name : xtun::pipeline_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--out", opt.out_path, "output file (default: stdout)");
        sub->add_option("--format", opt.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--override", opt.overrides,
                        "dot-path config override, e.g. physics.hbar=0.5");
        sub->callback([&rc, &opt, name] { rc = execute(name, opt); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
