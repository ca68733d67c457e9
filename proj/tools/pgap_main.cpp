#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pgap/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pgap: volumes of perspective and naive relaxations of on/off disjunctions"};
    app.require_subcommand(1);

    pgap::RunConfig cfg;
    std::string mu = "envelope";

    auto add_common = [&](CLI::App* sub, bool needs_function, bool needs_domain) {
        if (needs_function)
            sub->add_option("--function", cfg.function_spec,
                            "function spec, inline JSON or a path to a JSON file")
                ->required();
        if (needs_domain)
            sub->add_option("--domain", cfg.domain_spec,
                            "domain spec, inline JSON or a path to a JSON file")
                ->required();
        sub->add_option("--mu", mu, "concave upper bound: constant or envelope");
        sub->add_option("--seed", cfg.seed, "seed for Monte Carlo streams (default 42)");
        sub->add_option("--samples", cfg.samples, "Monte Carlo sample count (default 1000000)");
        sub->add_option("--format", cfg.format, "output format: csv or json (default csv)");
        sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    };

    add_common(app.add_subcommand("integrate",
                                  "integrate f over the domain by every applicable method"),
               true, true);
    add_common(app.add_subcommand("volume",
                                  "volumes of the perspective and naive relaxations plus the "
                                  "cut-off amount and ratio"),
               true, true);
    add_common(app.add_subcommand("delta", "cut-off amount (independent of mu)"), true, true);
    auto* sweep = app.add_subcommand("sweep", "relaxation quantities across box scales u");
    add_common(sweep, true, true);
    sweep->add_option("--u", cfg.u_values, "comma-separated increasing u values")
        ->required()
        ->delimiter(',');
    add_common(app.add_subcommand("verify", "run the built-in identity suite"), false, false);
    add_common(app.add_subcommand("envelope-export",
                                  "export the concave envelope cells over a box"),
               true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (mu == "constant") {
        cfg.mu = pgap::MuKind::constant;
    } else if (mu == "envelope") {
        cfg.mu = pgap::MuKind::concave_envelope;
    } else {
        std::cerr << "error: --mu must be constant or envelope\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file " << cfg.out_path << "\n";
            return 2;
        }
        out = &file;
    }
    return pgap::run_command(cfg, *out, std::cerr);
}
