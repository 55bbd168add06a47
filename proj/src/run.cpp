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

#include "ftcc/run.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "ftcc/analysis.hpp"
#include "ftcc/encoding.hpp"

namespace ftcc {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string &key, const std::string &text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ConfigError(key + ": not a number: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError(key + ": not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string &key, const std::string &text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(key + ": not a non-negative integer: '" + text + "'");
    }
    errno = 0;
    const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
    if (errno == ERANGE) throw ConfigError(key + ": out of range: '" + text + "'");
    return v;
}

int parse_int(const std::string &key, const std::string &text) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception &) {
        throw ConfigError(key + ": not an integer: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError(key + ": not an integer: '" + text + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &text) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(key + ": expected true or false: '" + text + "'");
}

std::string fmt_grid(const GridSpec &g) {
    return fmt_double(g.lo) + ":" + fmt_double(g.hi) + ":" + std::to_string(g.steps);
}

bool one_of(const std::string &v, std::initializer_list<const char *> options) {
    return std::any_of(options.begin(), options.end(), [&](const char *o) { return v == o; });
}

std::string effective_model(const RunConfig &c) {
    if (!c.model.empty()) return c.model;
    if (c.command == "simulate") return "hypercube";
    if (c.command == "sweep" || c.command == "threshold") return "level3";
    return "";
}

bool is_mc_model(const std::string &model) { return model == "hypercube" || model == "vn"; }

std::vector<double> x_values(const RunConfig &c) {
    if (c.eps) return {*c.eps};
    if (c.p) return {*c.p};
    if (c.grid) return c.grid->points();
    return {};
}

bool x_is_p(const RunConfig &c) { return c.p.has_value() || (c.grid && c.grid_var == "p"); }

Readout readout_of(const RunConfig &c, ScheduleKind kind) {
    if (c.readout == "majority") return Readout::kMajority;
    if (c.readout == "corrected") return Readout::kCorrected;
    return kind == ScheduleKind::kHypercube ? Readout::kCorrected : Readout::kMajority;
}

ModelSpec model_spec(const RunConfig &c, const std::string &model) {
    ModelSpec spec;
    spec.t = c.t;
    spec.level = c.level;
    spec.x_is_p = x_is_p(c);
    if (model == "level2") spec.kind = ModelKind::kLevel2;
    if (model == "level3") spec.kind = ModelKind::kLevel3;
    if (model == "concat") spec.kind = ModelKind::kConcat;
    if (model == "hypercube") spec.kind = ModelKind::kHypercubeMc;
    if (model == "vn") spec.kind = ModelKind::kVnMc;
    spec.mc.seed = c.seed;
    spec.mc.stop = {c.min_flips, c.max_phases};
    spec.mc.componentwise = c.noise == "componentwise";
    spec.mc.options.workers = c.workers;
    spec.mc.options.readout =
        readout_of(c, spec.kind == ModelKind::kVnMc ? ScheduleKind::kRandomized : ScheduleKind::kHypercube);
    return spec;
}

void append_sweep(const RunConfig &c, const ModelSpec &spec, RunResult &result) {
    const auto xs = x_values(c);
    for (const auto &r : sweep(spec, xs)) {
        if (!r.ok()) {
            result.warnings.push_back("x=" + fmt_double(r.x) + ": " + r.warning + "; point skipped");
            continue;
        }
        result.rows.push_back({r.x, r.y, r.y_lo, r.y_hi, r.model, r.n, c.seed});
    }
}

}  // namespace

std::vector<double> GridSpec::points() const {
    if (steps < 1) throw ConfigError("grid: steps must be at least 1");
    if (steps == 1) {
        if (lo != hi) throw ConfigError("grid: a single step needs lo == hi");
        return {lo};
    }
    if (!(lo < hi)) throw ConfigError("grid: need lo < hi");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[std::size_t(i)] = lo + (hi - lo) * i / (steps - 1);
    out.back() = hi;
    return out;
}

GridSpec parse_grid(const std::string &text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw ConfigError("grid: expected lo:hi:steps, got '" + text + "'");
    }
    GridSpec g;
    g.lo = parse_double("grid", text.substr(0, a));
    g.hi = parse_double("grid", text.substr(a + 1, b - a - 1));
    g.steps = parse_int("grid", text.substr(b + 1));
    return g;
}

std::vector<std::pair<std::string, std::string>> config_fields(const RunConfig &c) {
    auto opt = [](const std::optional<double> &v) { return v ? fmt_double(*v) : std::string("none"); };
    return {
        {"command", c.command},
        {"model", c.model.empty() ? "default" : c.model},
        {"level", std::to_string(c.level)},
        {"t", std::to_string(c.t)},
        {"eps", opt(c.eps)},
        {"p", opt(c.p)},
        {"grid", c.grid ? fmt_grid(*c.grid) : "none"},
        {"grid_var", c.grid_var},
        {"seed", std::to_string(c.seed)},
        {"min_flips", std::to_string(c.min_flips)},
        {"max_phases", std::to_string(c.max_phases)},
        {"noise", c.noise},
        {"readout", c.readout.empty() ? "default" : c.readout},
        {"trials", std::to_string(c.trials)},
        {"correction_phases", std::to_string(c.correction_phases)},
        {"pcrit", c.pcrit ? "true" : "false"},
        {"mc", c.mc ? "true" : "false"},
        {"format", c.format},
    };
}

RunConfig config_from_fields(const std::vector<std::pair<std::string, std::string>> &fields) {
    RunConfig c;
    auto opt = [](const std::string &key, const std::string &v) -> std::optional<double> {
        if (v == "none") return std::nullopt;
        return parse_double(key, v);
    };
    for (const auto &[key, v] : fields) {
        if (key == "command") {
            c.command = v;
        } else if (key == "model") {
            c.model = v == "default" ? "" : v;
        } else if (key == "level") {
            c.level = parse_int(key, v);
        } else if (key == "t") {
            c.t = parse_int(key, v);
        } else if (key == "eps") {
            c.eps = opt(key, v);
        } else if (key == "p") {
            c.p = opt(key, v);
        } else if (key == "grid") {
            c.grid = v == "none" ? std::nullopt : std::optional<GridSpec>(parse_grid(v));
        } else if (key == "grid_var") {
            c.grid_var = v;
        } else if (key == "seed") {
            c.seed = parse_u64(key, v);
        } else if (key == "min_flips") {
            c.min_flips = parse_u64(key, v);
        } else if (key == "max_phases") {
            c.max_phases = parse_u64(key, v);
        } else if (key == "noise") {
            c.noise = v;
        } else if (key == "readout") {
            c.readout = v == "default" ? "" : v;
        } else if (key == "trials") {
            c.trials = parse_u64(key, v);
        } else if (key == "correction_phases") {
            c.correction_phases = parse_int(key, v);
        } else if (key == "pcrit") {
            c.pcrit = parse_bool(key, v);
        } else if (key == "mc") {
            c.mc = parse_bool(key, v);
        } else if (key == "format") {
            c.format = v;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return c;
}

void validate(const RunConfig &c) {
    if (!one_of(c.command, {"sweep", "simulate", "threshold", "encode", "compare-vn"})) {
        throw ConfigError("unknown command '" + c.command + "'");
    }
    if (!one_of(c.format, {"csv", "json"})) throw ConfigError("--format must be csv or json");
    if (!one_of(c.noise, {"idealized", "componentwise"})) throw ConfigError("--noise must be idealized or componentwise");
    if (!one_of(c.readout, {"", "corrected", "majority"})) throw ConfigError("--readout must be corrected or majority");
    if (!one_of(c.grid_var, {"eps", "p"})) throw ConfigError("grid variable must be eps or p");
    if (c.workers < 1) throw ConfigError("--workers must be at least 1");

    const int sources = int(c.eps.has_value()) + int(c.p.has_value()) + int(c.grid.has_value());
    if (sources > 1) throw ConfigError("give only one of --eps, --p and --grid");
    if (c.grid) c.grid->points();
    if (c.noise == "componentwise" && (c.eps || (c.grid && c.grid_var == "eps"))) {
        throw ConfigError("componentwise noise is parameterized by --p");
    }

    const std::string model = effective_model(c);
    if (c.command == "sweep" || c.command == "simulate") {
        const bool analytic = one_of(model, {"level2", "level3", "concat"});
        if (c.command == "simulate" && !is_mc_model(model)) throw ConfigError("simulate: --model must be hypercube or vn");
        if (!analytic && !is_mc_model(model)) throw ConfigError("sweep: unknown --model '" + model + "'");
        if (sources == 0) throw ConfigError(c.command + ": give --eps, --p or --grid");
        if (analytic && c.noise != "idealized") throw ConfigError("--noise applies to Monte Carlo models only");
        if (model == "concat" && (c.t != 6 && c.t != 7)) throw ConfigError("concat: --t must be 6 or 7");
        if (model == "concat" && (c.level < 2 || c.level > 4)) throw ConfigError("concat: --level must lie in [2, 4]");
        if (is_mc_model(model) && (c.level < 0 || c.level > 8)) throw ConfigError("--level must lie in [0, 8]");
        if (model == "vn" && c.readout == "corrected") throw ConfigError("vn: corrected readout needs the hypercube");
        if (is_mc_model(model) && c.max_phases == 0) throw ConfigError("--max-phases must be positive");
    } else if (c.command == "threshold") {
        if (!one_of(model, {"level2", "level3", "universal"})) {
            throw ConfigError("threshold: --model must be level2, level3 or universal");
        }
        if (sources != 0) throw ConfigError("threshold takes no --eps, --p or --grid");
    } else if (c.command == "encode") {
        if (!c.model.empty()) throw ConfigError("encode takes no --model");
        if (c.pcrit == (sources != 0)) throw ConfigError("encode: give either --pcrit or one of --p and --grid");
        if (c.eps || (c.grid && c.grid_var != "p")) throw ConfigError("encode is parameterized by --p");
        if (c.mc && c.pcrit) throw ConfigError("encode: --mc needs --p or --grid");
        if (c.mc && c.trials == 0) throw ConfigError("--trials must be positive");
        if (c.correction_phases < 0) throw ConfigError("--correction-phases must be non-negative");
    } else {  // compare-vn
        if (!c.model.empty()) throw ConfigError("compare-vn takes no --model");
        if (sources == 0) throw ConfigError("compare-vn: give --eps, --p or --grid");
        if (c.level < 0 || c.level > 8) throw ConfigError("--level must lie in [0, 8]");
        if (c.readout == "corrected") throw ConfigError("compare-vn: the randomized schedule has no corrected readout");
        if (c.max_phases == 0) throw ConfigError("--max-phases must be positive");
    }
}

RunResult execute(const RunConfig &c) {
    validate(c);
    RunResult result;
    const std::string model = effective_model(c);

    if (c.command == "sweep" || c.command == "simulate") {
        append_sweep(c, model_spec(c, model), result);
    } else if (c.command == "compare-vn") {
        RunConfig majority = c;
        majority.readout = "majority";
        append_sweep(c, model_spec(majority, "hypercube"), result);
        append_sweep(c, model_spec(majority, "vn"), result);
    } else if (c.command == "threshold") {
        if (model == "universal") {
            const auto u = universal_threshold(build_level3_chain());
            result.rows.push_back({u.p_star, u.eps_star, epsilon_of(u.bracket.lo), epsilon_of(u.bracket.hi),
                                   "universal_threshold", 3, c.seed});
        } else {
            const bool two = model == "level2";
            const auto b = correction_threshold_bracket(two ? build_level2_chain() : build_level3_chain());
            result.rows.push_back({b.value(), b.value(), b.lo, b.hi, model + "_threshold", two ? 2 : 3, c.seed});
        }
    } else {  // encode
        if (c.pcrit) {
            const double pc = p_crit();
            const double y = pfail_bound(pc).p_fail;
            result.rows.push_back({pc, y, y, y, "p_crit", 3, c.seed});
        } else {
            for (double p : x_values(c)) {
                if (!(p >= 0 && p <= 0.2)) {
                    result.warnings.push_back("x=" + fmt_double(p) + ": p outside [0, 0.2]; point skipped");
                    continue;
                }
                const double bound = pfail_bound(p).p_fail;
                result.rows.push_back({p, bound, bound, bound, "pfail_bound", 3, c.seed});
                if (c.mc) {
                    CascadeOptions opts;
                    opts.correction_phases = c.correction_phases;
                    opts.workers = c.workers;
                    const auto s = cascade_mc(p, point_seed(c.seed, p), c.trials, opts);
                    result.rows.push_back({p, s.p_hat, s.ci_lo, s.ci_hi, "cascade_mc", 3, c.seed});
                }
            }
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const Row &a, const Row &b) { return a.x < b.x; });
    return result;
}

std::string render(const RunConfig &config, const std::vector<Row> &rows) {
    if (config.format == "json") {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json header = nlohmann::ordered_json::object();
        for (const auto &[k, v] : config_fields(config)) header[k] = v;
        doc["config"] = header;
        doc["columns"] = {"x", "y", "y_lo", "y_hi", "model", "n", "seed"};
        nlohmann::ordered_json body = nlohmann::ordered_json::array();
        for (const auto &r : rows) {
            body.push_back({{"x", r.x}, {"y", r.y}, {"y_lo", r.y_lo}, {"y_hi", r.y_hi},
                            {"model", r.model}, {"n", r.n}, {"seed", r.seed}});
        }
        doc["rows"] = body;
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const auto &[k, v] : config_fields(config)) os << "# " << k << "=" << v << "\n";
    os << "x,y,y_lo,y_hi,model,n,seed\n";
    for (const auto &r : rows) {
        os << fmt_double(r.x) << ',' << fmt_double(r.y) << ',' << fmt_double(r.y_lo) << ',' << fmt_double(r.y_hi)
           << ',' << r.model << ',' << r.n << ',' << r.seed << "\n";
    }
    return os.str();
}

RunConfig parse_header(const std::string &rendered) {
    std::vector<std::pair<std::string, std::string>> fields;
    const auto first = rendered.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && rendered[first] == '{') {
        const auto doc = nlohmann::ordered_json::parse(rendered);
        for (const auto &[k, v] : doc.at("config").items()) fields.emplace_back(k, v.get<std::string>());
        return config_from_fields(fields);
    }
    std::istringstream is(rendered);
    std::string line;
    while (std::getline(is, line) && line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed header line '" + line + "'");
        fields.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
    }
    return config_from_fields(fields);
}

int run(const RunConfig &config) {
    const RunResult result = execute(config);
    for (const auto &w : result.warnings) std::cerr << "warning: " << w << "\n";
    const std::string text = render(config, result.rows);
    if (config.out.empty()) {
        std::cout << text << std::flush;
        return std::cout ? 0 : 1;
    }
    namespace fs = std::filesystem;
    const fs::path target(config.out);
    fs::path partial = target;
    partial += ".partial";
    {
        std::ofstream f(partial, std::ios::binary | std::ios::trunc);
        f << text;
        f.close();
        if (!f) {
            std::error_code ignored;
            fs::remove(partial, ignored);
            std::cerr << "error: cannot write " << partial.string() << "\n";
            return 1;
        }
    }
    std::error_code ec;
    fs::rename(partial, target, ec);
    if (ec) {
        fs::remove(partial, ec);
        std::cerr << "error: cannot create " << target.string() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ftcc
