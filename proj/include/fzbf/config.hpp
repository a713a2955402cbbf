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

// Run configuration files.
//
// Grammar, one entry per line:
//
//   line    := [key "=" value] ["#" comment]
//   value   := number | word | string | array
//   array   := "[" [value ("," value)*] "]"
//   string  := '"' characters without '"' '"'
//
// Keys are fixed; an unknown key, a repeated key or a malformed value is an error reported
// with the file name and line number. Absent keys keep their defaults.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fzbf/evaluation.hpp"

namespace fzbf
{
    struct RunConfig
    {
        SystemConfig system;
        ExperimentSpec experiment;
        int spectrum_points = 601;
        double spectrum_span = 2.0; // spectrum covers fc +- span * B / 2
        int gamma_placements = 500;
        std::optional<Vec3> bs_position;
        std::optional<Vec3> ue_position;

        // Fixed placement when both positions are given.
        std::optional<Placement> placement() const;
        // Throws ConfigError.
        void validate() const;
    };

    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    std::vector<std::string_view> config_keys();

    RunConfig parse_config_text(std::string_view text, std::string_view source = "<text>");
    RunConfig parse_config(const std::filesystem::path &path);

    // Sets one key from its textual value (the right-hand side of a config line).
    void apply_config_value(RunConfig &config, std::string_view key, std::string_view value,
                            std::string_view context = "override");

    // Every key with its current value, parseable back to the same configuration.
    std::string emit_config(const RunConfig &config);

    // Defaults chosen where the model leaves a choice open; listed in every manifest.
    std::vector<std::string> default_decisions(const RunConfig &config);

    struct RunManifest
    {
        std::string tool = "fzbf";
        std::string version;
        std::string subcommand;
        std::vector<std::string> arguments;
        std::uint64_t seed = 0;
        std::string config_text;
        std::vector<std::string> decisions;
        std::map<std::string, std::string> summary;
        std::string started_utc;
        std::string finished_utc;

        std::string to_json() const;
    };

    std::string utc_timestamp();
    std::string tool_version();
}
