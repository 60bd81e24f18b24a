#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "derivlab/demos.hpp"
#include "derivlab/error.hpp"
#include "derivlab/scenario.hpp"

using namespace derivlab;

namespace {

struct CommonOpts {
    RunOptions run;
    long seed = 0;
    long samples = 0;
};

void add_run_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.run.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
    cmd->add_option("--seed", o.seed, "Append seeded random samples (0 = none)");
    cmd->add_option("--samples", o.samples, "Sample count per check")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timestamp", o.run.no_timestamp, "Omit the timestamp from JSON reports");
    cmd->add_flag("--serial", o.run.serial, "Force the serial batch engine");
    cmd->add_flag("--swap-mobius-roles", o.run.swap_mobius_roles,
                  "Swap the f and g roles in triangle checks");
}

int run_and_render(Scenario& s, CommonOpts& o) {
    o.run.seed = static_cast<std::uint64_t>(o.seed);
    if (o.samples > 0)
        o.run.samples = static_cast<size_t>(o.samples);
    const ScenarioResult res = run_scenario(s, o.run);
    std::cout << (o.run.format == "json" ? render_json(s, res, o.run)
                                         : render_text(s, res, o.run));
    return res.all_met ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"derivlab: exact verification of functional equations for additive maps,\n"
                 "derivations, and automorphisms on tower fields over Q"};
    app.require_subcommand(1);

    std::string file;
    std::string demo_name;
    CommonOpts run_opts;
    CommonOpts demo_opts;

    CLI::App* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("file", file, "Scenario file (UTF-8, line-oriented)")->required();
    add_run_options(run, run_opts);

    CLI::App* demo = app.add_subcommand("demo", "Run a bundled scenario");
    demo->add_option("name", demo_name, "Bundled scenario name (see `derivlab list`)")
        ->required();
    add_run_options(demo, demo_opts);

    CLI::App* list = app.add_subcommand("list", "List bundled scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (list->parsed()) {
            size_t width = 0;
            for (const auto& d : bundled_demos())
                width = std::max(width, d.name.size());
            for (const auto& d : bundled_demos())
                std::cout << d.name << std::string(width - d.name.size(), ' ') << "  "
                          << d.anchor << "\n";
            return 0;
        }
        if (run->parsed()) {
            std::ifstream in(file, std::ios::binary);
            if (!in) {
                std::cerr << "cannot open " << file << "\n";
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            Scenario s = parse_scenario(buf.str());
            return run_and_render(s, run_opts);
        }
        const DemoScenario* d = find_demo(demo_name);
        if (!d) {
            std::cerr << "no bundled scenario '" << demo_name << "'; available:";
            for (const auto& other : bundled_demos())
                std::cerr << " " << other.name;
            std::cerr << "\n";
            return 2;
        }
        Scenario s = parse_scenario(d->text);
        s.name = d->name;
        s.anchor = d->anchor;
        return run_and_render(s, demo_opts);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
