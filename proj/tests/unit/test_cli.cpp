// SPDX-License-Identifier: Apache-2.0
//
// fzbf - Fresnel-zone wideband beamforming for reconfigurable intelligent surfaces
// Copyright (C) 2026 The fzbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fzbf/cli.hpp"

using namespace fzbf;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name)
        {
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };

    int run(const std::vector<std::string> &args, std::string *out_text = nullptr)
    {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        if (out_text)
            *out_text = out.str() + err.str();
        return code;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    }

    nlohmann::json manifest(const fs::path &p)
    {
        return nlohmann::json::parse(slurp(p));
    }

    void write(const fs::path &p, const std::string &text)
    {
        std::ofstream(p) << text;
    }
}

TEST(Cli, UnknownSubcommandFails)
{
    std::string text;
    EXPECT_NE(run({"teleport"}, &text), 0);
    EXPECT_FALSE(text.empty());
    EXPECT_NE(run({}), 0);
}

TEST(Cli, BadConfigIsUsageError)
{
    TempDir d("fzbf_cli_bad");
    write(d.path / "bad.cfg", "bandwidth_hz = 61e9\n");
    std::string text;
    EXPECT_EQ(run({"spectrum", "--config", (d.path / "bad.cfg").string(), "--out", d.path.string()}, &text), 2);
    EXPECT_NE(text.find("bad.cfg"), std::string::npos) << text;
}

TEST(Cli, DesignWritesWeightsAndManifest)
{
    TempDir d("fzbf_cli_design");
    write(d.path / "run.cfg", "side_m = 0.1\n");
    ASSERT_EQ(run({"design", "--config", (d.path / "run.cfg").string(), "--out", d.path.string(), "--method",
                   "fz-spm", "--quantize-bits", "2"}),
              0);
    ASSERT_TRUE(fs::exists(d.path / "weights_fz-spm.csv"));
    const auto j = manifest(d.path / "weights_fz-spm.json");
    EXPECT_EQ(j["subcommand"], "design");
    EXPECT_FALSE(j["decisions"].empty());
    EXPECT_NE(j["config"].get<std::string>().find("quantize_bits = 2"), std::string::npos);
}

TEST(Cli, SpectrumHasOneColumnPerMethod)
{
    TempDir d("fzbf_cli_spectrum");
    write(d.path / "run.cfg", "side_m = 0.1\nspectrum_points = 21\nvsa_subarrays = 2\n");
    ASSERT_EQ(run({"spectrum", "--config", (d.path / "run.cfg").string(), "--out", d.path.string(), "--method", "all"}),
              0);
    const std::string csv = slurp(d.path / "spectrum.csv");
    const std::string header = csv.substr(0, csv.find('\n'));
    for (const char *m : {"narrowband", "vsa", "fz-spm", "fz-gsa", "upper-bound"})
        EXPECT_NE(header.find(m), std::string::npos) << header;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 22);
}

TEST(Cli, RateSweepIsReproducible)
{
    TempDir d("fzbf_cli_sweep");
    write(d.path / "run.cfg", "side_m = 0.1\ntrials = 2\nvalues = [0, 10]\nmethods = [narrowband, fz-spm]\n");
    const std::string cfg = (d.path / "run.cfg").string();
    ASSERT_EQ(run({"rate-sweep", "--config", cfg, "--seed", "5", "--out", (d.path / "a").string()}), 0);
    ASSERT_EQ(run({"rate-sweep", "--config", cfg, "--seed", "5", "--out", (d.path / "b").string()}), 0);
    const std::string a = slurp(d.path / "a" / "rates.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(std::hash<std::string>{}(a), std::hash<std::string>{}(slurp(d.path / "b" / "rates.csv")));
    EXPECT_EQ(manifest(d.path / "a" / "rates.json")["seed"], 5);
}

TEST(Cli, FlagBeatsEnvironmentBeatsFile)
{
    TempDir d("fzbf_cli_precedence");
    write(d.path / "run.cfg", "side_m = 0.1\ntrials = 1\nvalues = [0]\nmethods = [narrowband]\nseed = 11\n");
    const std::string cfg = (d.path / "run.cfg").string();
    ASSERT_EQ(run({"rate-sweep", "--config", cfg, "--out", (d.path / "file").string()}), 0);
    EXPECT_EQ(manifest(d.path / "file" / "rates.json")["seed"], 11);
    setenv("FZBF_SEED", "22", 1);
    ASSERT_EQ(run({"rate-sweep", "--config", cfg, "--out", (d.path / "env").string()}), 0);
    EXPECT_EQ(manifest(d.path / "env" / "rates.json")["seed"], 22);
    ASSERT_EQ(run({"rate-sweep", "--config", cfg, "--seed", "33", "--out", (d.path / "flag").string()}), 0);
    EXPECT_EQ(manifest(d.path / "flag" / "rates.json")["seed"], 33);
    unsetenv("FZBF_SEED");
}

TEST(Cli, GammaStudyReportsMedian)
{
    TempDir d("fzbf_cli_gamma");
    write(d.path / "run.cfg", "side_m = 0.25\ngamma_placements = 20\n");
    ASSERT_EQ(run({"gamma-study", "--config", (d.path / "run.cfg").string(), "--out", d.path.string()}), 0);
    const auto j = manifest(d.path / "gamma.json");
    EXPECT_TRUE(j["summary"].contains("median_gamma"));
    const std::string csv = slurp(d.path / "gamma.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "placement,iota,b3db_exact,b3db_approx,gamma");
}

TEST(Cli, RejectsBadThreadCount)
{
    TempDir d("fzbf_cli_threads");
    EXPECT_EQ(run({"design", "--threads", "zero", "--out", d.path.string()}), 2);
}
