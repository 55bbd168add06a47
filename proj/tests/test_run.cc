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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "ftcc/run.hpp"

using namespace ftcc;

namespace {

std::string slurp(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "ftcc_test_run";
    std::filesystem::create_directories(dir);
    return dir / name;
}

RunConfig base(const std::string &command) {
    RunConfig c;
    c.command = command;
    return c;
}

}  // namespace

TEST(run, grid_points) {
    const auto g = parse_grid("0.01:0.05:5");
    const auto pts = g.points();
    ASSERT_EQ(pts.size(), 5u);
    EXPECT_EQ(pts.front(), 0.01);
    EXPECT_EQ(pts.back(), 0.05);
    EXPECT_NEAR(pts[2], 0.03, 1e-17);
    EXPECT_THROW(parse_grid("0.1:0.2"), ConfigError);
    EXPECT_THROW(parse_grid("a:0.2:3"), ConfigError);
    EXPECT_THROW(parse_grid("0.3:0.2:3").points(), ConfigError);
    EXPECT_EQ(parse_grid("0.1:0.1:1").points().size(), 1u);
}

TEST(run, threshold_row) {
    const auto r = execute(base("threshold"));
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_GE(r.rows[0].y, 0.14);
    EXPECT_LE(r.rows[0].y, 0.167);
    EXPECT_EQ(r.rows[0].model, "level3_threshold");
}

TEST(run, pcrit_row) {
    RunConfig c = base("encode");
    c.pcrit = true;
    const auto r = execute(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_GE(r.rows[0].x, 0.027);
    EXPECT_LE(r.rows[0].x, 0.029);
}

TEST(run, level3_sweep_row) {
    RunConfig c = base("sweep");
    c.model = "level3";
    c.eps = 0.01;
    const auto r = execute(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_NEAR(r.rows[0].y, 3e-11, 1e-11);
}

TEST(run, csv_layout) {
    RunConfig c = base("sweep");
    c.model = "level2";
    c.grid = parse_grid("0.1:0.2:3");
    const std::string text = render(c, execute(c).rows);
    EXPECT_NE(text.find("\nx,y,y_lo,y_hi,model,n,seed\n"), std::string::npos);
    EXPECT_NE(text.find("0.10000000000000001,"), std::string::npos);
    EXPECT_EQ(text.find("workers"), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
}

TEST(run, rows_sorted_by_x) {
    RunConfig c = base("compare-vn");
    c.level = 1;
    c.grid = parse_grid("0.1:0.12:3");
    c.min_flips = 20;
    c.max_phases = 50000;
    const auto r = execute(c);
    ASSERT_EQ(r.rows.size(), 6u);
    for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_LE(r.rows[i - 1].x, r.rows[i].x);
    EXPECT_EQ(r.rows[0].model, "hypercube_mc");
    EXPECT_EQ(r.rows[1].model, "vn_mc");
}

TEST(run, header_round_trips) {
    RunConfig c = base("simulate");
    c.model = "vn";
    c.level = 2;
    c.grid = parse_grid("0.05:0.15:3");
    c.seed = 123456789012345ULL;
    c.min_flips = 17;
    c.max_phases = 999;
    c.readout = "majority";
    c.trials = 5;
    c.correction_phases = 9;
    c.mc = true;
    for (const char *format : {"csv", "json"}) {
        c.format = format;
        EXPECT_EQ(parse_header(render(c, {})), c) << format;
    }
    RunConfig e = base("encode");
    e.p = 0.1 + 0.2;  // not exactly representable as a short decimal
    EXPECT_EQ(parse_header(render(e, {})), e);
}

TEST(run, execution_fields_not_echoed) {
    RunConfig a = base("threshold");
    RunConfig b = a;
    b.workers = 7;
    b.out = "/somewhere/else.csv";
    EXPECT_EQ(render(a, {}), render(b, {}));
}

TEST(run, invalid_combinations) {
    RunConfig c = base("sweep");
    EXPECT_THROW(validate(c), ConfigError);  // no parameter
    c.eps = 0.1;
    c.p = 0.1;
    EXPECT_THROW(validate(c), ConfigError);
    c.p.reset();
    EXPECT_NO_THROW(validate(c));
    c.model = "nonsense";
    EXPECT_THROW(validate(c), ConfigError);
    c.model = "vn";
    c.readout = "corrected";
    EXPECT_THROW(validate(c), ConfigError);
    c.readout.clear();
    c.noise = "componentwise";
    EXPECT_THROW(validate(c), ConfigError);  // componentwise takes p
    c.eps.reset();
    c.p = 0.01;
    EXPECT_NO_THROW(validate(c));
    c.format = "xml";
    EXPECT_THROW(validate(c), ConfigError);

    RunConfig t = base("threshold");
    t.eps = 0.1;
    EXPECT_THROW(validate(t), ConfigError);
    RunConfig e = base("encode");
    EXPECT_THROW(validate(e), ConfigError);
    e.pcrit = true;
    e.mc = true;
    EXPECT_THROW(validate(e), ConfigError);
    RunConfig w = base("threshold");
    w.workers = 0;
    EXPECT_THROW(validate(w), ConfigError);
    EXPECT_THROW(validate(base("frobnicate")), ConfigError);
}

TEST(run, writes_file_atomically) {
    RunConfig c = base("sweep");
    c.eps = 0.05;
    c.out = scratch("sweep.csv").string();
    std::filesystem::remove(c.out);
    EXPECT_EQ(run(c), 0);
    const std::string text = slurp(c.out);
    EXPECT_EQ(parse_header(text), [&] {
        RunConfig e = c;
        e.out.clear();
        return e;
    }());
    EXPECT_FALSE(std::filesystem::exists(c.out + ".partial"));
}

TEST(run, no_partial_file_on_error) {
    RunConfig c = base("sweep");
    c.eps = 0.05;
    c.out = scratch("missing_dir/none.csv").string();
    EXPECT_NE(run(c), 0);
    EXPECT_FALSE(std::filesystem::exists(c.out));
    EXPECT_FALSE(std::filesystem::exists(c.out + ".partial"));

    RunConfig bad = base("sweep");
    bad.out = scratch("bad.csv").string();
    std::filesystem::remove(bad.out);
    EXPECT_THROW(run(bad), ConfigError);
    EXPECT_FALSE(std::filesystem::exists(bad.out));
}

TEST(run, mc_output_independent_of_workers) {
    RunConfig c = base("simulate");
    c.level = 2;
    c.grid = parse_grid("0.1:0.14:3");
    c.min_flips = 100;
    c.seed = 77;
    std::string first;
    for (int w : {1, 2, 4}) {
        c.workers = w;
        const std::string text = render(c, execute(c).rows);
        if (first.empty()) first = text;
        EXPECT_EQ(text, first) << w;
    }
}

TEST(run, out_of_domain_points_warn) {
    RunConfig c = base("sweep");
    c.model = "level3";
    c.grid = parse_grid("0.5:1.5:3");
    const auto r = execute(c);
    EXPECT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.warnings.size(), 2u);
}

TEST(run, encode_mc_rows) {
    RunConfig c = base("encode");
    c.p = 0.02;
    c.mc = true;
    c.trials = 20000;
    const auto r = execute(c);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0].model, "pfail_bound");
    EXPECT_EQ(r.rows[1].model, "cascade_mc");
}
