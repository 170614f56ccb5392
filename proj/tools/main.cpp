#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "kinlap/solver.hpp"

namespace {

int config_error(const std::string& msg) {
    std::cerr << "kinlap: config error: " << msg << '\n';
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace kinlap::cli;
    CLI::App app{"kinlap: kinetic p-Laplace numerical workbench"};
    app.require_subcommand(1);

    const auto& cmds = commands();
    std::map<std::string, std::map<std::string, std::string>> flag_values;
    std::map<std::string, std::string> config_paths;
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.description);
        subs[c.name] = sub;
        sub->add_option("--config", config_paths[c.name], "JSON config file; its keys override flags");
        for (const auto& k : c.schema) sub->add_option("--" + k.name, flag_values[c.name][k.name], k.help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const auto& c : cmds) {
        CLI::App* sub = subs[c.name];
        if (!sub->parsed()) continue;
        std::vector<std::pair<std::string, std::string>> flags;
        for (const auto& k : c.schema)
            if (sub->count("--" + k.name) > 0) flags.emplace_back(k.name, flag_values[c.name][k.name]);
        try {
            const Config cfg = build_config(c.name, c.schema, flags, config_paths[c.name]);
            return c.run(cfg);
        } catch (const ConfigError& e) {
            return config_error(e.what());
        } catch (const kinlap::NumericalError& e) {
            json diag{{"error", "numerical"}, {"command", c.name}, {"message", e.what()}};
            std::cerr << diag.dump() << '\n';
            return 3;
        } catch (const std::invalid_argument& e) {
            return config_error(e.what());
        } catch (const std::domain_error& e) {
            return config_error(e.what());
        } catch (const std::exception& e) {
            std::cerr << "kinlap: " << e.what() << '\n';
            return 1;
        }
    }
    return 2;
}
