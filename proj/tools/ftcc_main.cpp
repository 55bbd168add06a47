// Copyright 2026 The ftcc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <utility>

#include "CLI11.hpp"

#include "ftcc/run.hpp"

namespace {

struct Flags {
    std::string eps, p, grid;
};

void add_common(CLI::App &cmd, ftcc::RunConfig &c, Flags &f) {
    cmd.add_option("--model", c.model, "level2 | level3 | concat | hypercube | vn | universal");
    cmd.add_option("--level", c.level, "code level n (3^(n+1) bits) or concat levels");
    cmd.add_option("--t", c.t, "concat threshold denominator (6 or 7)");
    cmd.add_option("--eps", f.eps, "single epsilon");
    cmd.add_option("--p", f.p, "single physical error rate p");
    cmd.add_option("--grid", f.grid, "lo:hi:steps, over epsilon (or p with --noise componentwise or encode)");
    cmd.add_option("--seed", c.seed, "master seed");
    cmd.add_option("--min-flips", c.min_flips, "stop once this many logical flips are seen");
    cmd.add_option("--max-phases", c.max_phases, "phase budget per point");
    cmd.add_option("--workers", c.workers, "threads; never changes the output");
    cmd.add_option("--format", c.format, "csv | json");
    cmd.add_option("--out", c.out, "output file (default stdout)");
    cmd.add_option("--noise", c.noise, "idealized | componentwise");
    cmd.add_option("--readout", c.readout, "corrected | majority");
    cmd.add_option("--trials", c.trials, "cascade Monte Carlo trials per point");
    cmd.add_option("--correction-phases", c.correction_phases, "phases after encoding before scoring");
    cmd.add_flag("--pcrit", c.pcrit, "report the encoding critical point");
    cmd.add_flag("--mc", c.mc, "add a cascade Monte Carlo row per point");
}

std::optional<double> number(const std::string &flag, const std::string &text) {
    if (text.empty()) return std::nullopt;
    std::size_t used = 0;
    try {
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception &) {
    }
    throw ftcc::ConfigError(flag + ": not a number: '" + text + "'");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fault-tolerant classical computation laboratory", "ftcc"};
    app.require_subcommand(1);
    ftcc::RunConfig config;
    Flags flags;
    const std::pair<const char *, const char *> commands[] = {
        {"sweep", "evaluate a model over --eps, --p or --grid"},
        {"simulate", "bit-level Monte Carlo of a restorative schedule"},
        {"threshold", "correction threshold (level2, level3) or universal threshold"},
        {"encode", "AMP-cascade encoding bound, p_crit, and cascade Monte Carlo"},
        {"compare-vn", "randomized multiplexing vs hypercube at equal code size"},
    };
    for (const auto &[name, about] : commands) add_common(*app.add_subcommand(name, about), config, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    const auto *cmd = app.get_subcommands().front();
    try {
        config.command = cmd->get_name();
        config.eps = number("--eps", flags.eps);
        config.p = number("--p", flags.p);
        if (!flags.grid.empty()) {
            config.grid = ftcc::parse_grid(flags.grid);
            if (config.noise == "componentwise" || config.command == "encode") config.grid_var = "p";
        }
        return ftcc::run(config);
    } catch (const ftcc::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
