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

#include "fzbf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <omp.h>

#include <CLI11.hpp>

#include "fzbf/config.hpp"
#include "fzbf/csv.hpp"
#include "fzbf/evaluation.hpp"

namespace fzbf
{
    namespace
    {
        namespace fs = std::filesystem;

        struct CommonFlags
        {
            std::string config_path;
            std::string out_dir;
            std::string seed;
            std::string threads;
            std::string methods;
            std::string quantize_bits;
        };

        std::string env_or(const char *name, const std::string &fallback)
        {
            const char *v = std::getenv(name);
            return v ? std::string(v) : fallback;
        }

        std::string env_name(std::string_view key)
        {
            std::string s = "FZBF_";
            for (char c : key)
                s += char(std::toupper(static_cast<unsigned char>(c)));
            return s;
        }

        std::string list_text(const std::string &comma_list)
        {
            std::string s = "[";
            for (char c : comma_list)
                s += c == ',' ? std::string(", ") : std::string(1, c);
            return s + "]";
        }

        // File, then FZBF_* environment, then flags.
        RunConfig resolve_config(const CommonFlags &flags)
        {
            const std::string path = !flags.config_path.empty() ? flags.config_path : env_or("FZBF_CONFIG", "");
            RunConfig config = path.empty() ? RunConfig{} : parse_config(path);
            for (std::string_view key : config_keys())
                if (const char *v = std::getenv(env_name(key).c_str()))
                    apply_config_value(config, key, v, env_name(key));
            if (!flags.seed.empty())
                apply_config_value(config, "seed", flags.seed, "--seed");
            if (!flags.methods.empty())
                apply_config_value(config, "methods",
                                   flags.methods == "all" ? "[narrowband, vsa, fz-spm, fz-gsa, upper-bound, optimal]"
                                                          : list_text(flags.methods),
                                   "--method");
            if (!flags.quantize_bits.empty())
                apply_config_value(config, "quantize_bits", flags.quantize_bits, "--quantize-bits");
            config.validate();
            config.experiment.design.quantize_bits = config.system.quantize_bits;
            config.experiment.placement = config.placement();
            return config;
        }

        int resolve_threads(const CommonFlags &flags)
        {
            const std::string t = !flags.threads.empty() ? flags.threads : env_or("FZBF_THREADS", "");
            if (t.empty())
                return 0;
            int n = 0;
            try
            {
                n = std::stoi(t);
            }
            catch (const std::exception &)
            {
                throw ConfigError("--threads expects a positive integer, got '" + t + "'");
            }
            if (n < 1)
                throw ConfigError("--threads expects a positive integer, got '" + t + "'");
            return n;
        }

        struct Output
        {
            fs::path dir;
            RunManifest manifest;

            void write(const std::string &stem, const std::function<void(std::ostream &)> &body)
            {
                fs::create_directories(dir);
                {
                    std::ofstream csv_out(dir / (stem + ".csv"), std::ios::binary);
                    if (!csv_out)
                        throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
                    body(csv_out);
                }
                manifest.finished_utc = utc_timestamp();
                std::ofstream json_out(dir / (stem + ".json"), std::ios::binary);
                if (!json_out)
                    throw std::runtime_error("cannot write " + (dir / (stem + ".json")).string());
                json_out << manifest.to_json();
            }
        };

        std::vector<Method> weight_methods(const RunConfig &config)
        {
            std::vector<Method> out;
            for (Method m : config.experiment.methods)
                if (has_weights(m))
                    out.push_back(m);
            return out;
        }

        Placement chosen_placement(const RunConfig &config)
        {
            return config.placement().value_or(demo_placement());
        }

        void cmd_design(const RunConfig &config, Output &out, std::ostream &log)
        {
            const Scene scene = Scene::build(config.system, chosen_placement(config), config.experiment.design.amplitude);
            const int bits = config.system.quantize_bits.value_or(0);
            DesignOptions opts = config.experiment.design;
            opts.quantize_bits.reset();
            const std::vector<double> fk = subcarrier_frequencies(scene.config.carrier_hz, scene.config.bandwidth_hz,
                                                                  scene.config.subcarriers);
            const double bound = rate_upper_bound(scene.profile, scene.budget);
            for (Method m : weight_methods(config))
            {
                const Design d = design(scene, m, opts);
                const Weights used = bits > 0 ? quantize_weights(d.weights, bits) : d.weights;
                const double rate = achievable_rate(gain_spectrum(scene, used, fk), scene.budget,
                                                    scene.config.carrier_hz, scene.config.subcarriers);
                out.manifest.summary = {{"method", std::string(to_string(m))},
                                        {"rate_bps", csv::num(rate)},
                                        {"upper_bound_bps", csv::num(bound)}};
                const std::string stem = "weights_" + std::string(to_string(m));
                out.write(stem, [&](std::ostream &os) { write_weights_csv(d.weights, scene.grid, bits, os); });
                log << to_string(m) << ": rate " << csv::num(rate) << " bit/s, bound " << csv::num(bound)
                    << " bit/s -> " << (out.dir / (stem + ".csv")).string() << '\n';
            }
        }

        void cmd_spectrum(const RunConfig &config, Output &out, std::ostream &log)
        {
            const Scene scene = Scene::build(config.system, chosen_placement(config), config.experiment.design.amplitude);
            const double fc = scene.config.carrier_hz, B = scene.config.bandwidth_hz;
            const std::vector<double> freqs =
                linear_grid(fc - 0.5 * config.spectrum_span * B, fc + 0.5 * config.spectrum_span * B,
                            config.spectrum_points);
            std::vector<GainSpectrum> spectra;
            std::vector<std::string> names;
            for (Method m : weight_methods(config))
            {
                const Design d = design(scene, m, config.experiment.design);
                spectra.push_back(gain_spectrum(scene, d.weights, freqs));
                names.emplace_back(to_string(m));
                spectra.push_back(gain_spectrum(scene, d.components, freqs, config.experiment.design.frequency_scaling));
                names.push_back(std::string(to_string(m)) + "/fast");
                out.manifest.summary[names[names.size() - 2] + ".ripple_db"] =
                    csv::num(inband_ripple_db(spectra[spectra.size() - 2], fc, B));
                out.manifest.summary[names[names.size() - 2] + ".leakage"] =
                    csv::num(out_of_band_energy(spectra[spectra.size() - 2], fc, B));
            }
            spectra.push_back(gain_spectrum(ideal_gain(scene.profile, scene.config), freqs));
            names.emplace_back("upper-bound");
            out.write("spectrum", [&](std::ostream &os) { write_spectrum_csv(spectra, names, os); });
            log << "spectrum with " << names.size() << " columns -> " << (out.dir / "spectrum.csv").string() << '\n';
        }

        void cmd_rate_sweep(const RunConfig &config, Output &out, std::ostream &log)
        {
            const SweepResult r = run_sweep(config.experiment, config.system);
            int failures = 0;
            for (const CellResult &c : r.cells)
            {
                failures += c.failures;
                if (c.failures > 0)
                    out.manifest.summary["error." + csv::num(c.value) + "." + c.method] = c.error;
            }
            out.manifest.summary["failed_trials"] = std::to_string(failures);
            out.write("rates", [&](std::ostream &os) { write_sweep_csv(r, os); });
            log << r.cells.size() << " sweep cells -> " << (out.dir / "rates.csv").string() << '\n';
        }

        void cmd_gamma_study(const RunConfig &config, Output &out, std::ostream &log)
        {
            const SystemConfig sys = config.system.resolved();
            const ExperimentSpec &e = config.experiment;
            std::vector<SplitMetrics> metrics(static_cast<std::size_t>(config.gamma_placements));
            for (int i = 0; i < config.gamma_placements; ++i)
                metrics[std::size_t(i)] =
                    split_metrics(sample_placement(rng::trial_seed(e.seed, std::uint64_t(i)), e.bs_range, e.ue_range), sys);
            std::vector<double> gammas;
            for (const SplitMetrics &m : metrics)
                if (m.gamma_defined())
                    gammas.push_back(m.gamma);
            if (!gammas.empty())
            {
                std::sort(gammas.begin(), gammas.end());
                const std::size_t n = gammas.size();
                const double median = n % 2 ? gammas[n / 2] : 0.5 * (gammas[n / 2 - 1] + gammas[n / 2]);
                out.manifest.summary["median_gamma"] = csv::num(median);
            }
            out.manifest.summary["reference_gamma"] = csv::num(sinc_half_power_width);
            out.write("gamma", [&](std::ostream &os) {
                os << "placement,iota,b3db_exact,b3db_approx,gamma\n";
                for (std::size_t i = 0; i < metrics.size(); ++i)
                    os << i << ',' << csv::num(metrics[i].iota) << ',' << csv::num(metrics[i].b3db_exact) << ','
                       << csv::num(metrics[i].b3db_approx) << ',' << csv::num(metrics[i].gamma) << '\n';
            });
            log << metrics.size() << " placements -> " << (out.dir / "gamma.csv").string() << '\n';
        }
    }

    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Fresnel-zone wideband beamforming for reconfigurable intelligent surfaces", "fzbf"};
        app.set_version_flag("--version", tool_version());
        app.require_subcommand(1, 1);

        CommonFlags flags;
        using Handler = void (*)(const RunConfig &, Output &, std::ostream &);
        const std::pair<const char *, const char *> commands[] = {
            {"design", "Emit element phases for one placement"},
            {"spectrum", "Emit gain versus frequency for each method"},
            {"rate-sweep", "Average achievable rate over a parameter sweep"},
            {"gamma-study", "Beam-split bandwidth factor over random placements"},
        };
        const Handler handlers[] = {cmd_design, cmd_spectrum, cmd_rate_sweep, cmd_gamma_study};
        std::vector<CLI::App *> subs;
        for (const auto &[name, help] : commands)
        {
            CLI::App *s = app.add_subcommand(name, help);
            s->add_option("--config", flags.config_path, "Configuration file");
            s->add_option("--seed", flags.seed, "Master seed");
            s->add_option("--out", flags.out_dir, "Output directory");
            s->add_option("--threads", flags.threads, "OpenMP thread count");
            s->add_option("--method", flags.methods, "Comma-separated methods or 'all'");
            s->add_option("--quantize-bits", flags.quantize_bits, "Phase resolution in bits");
            subs.push_back(s);
        }

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            if (code != 0)
                err << app.help();
            return code == 0 ? 0 : 2;
        }

        std::size_t which = 0;
        while (which < subs.size() && !subs[which]->parsed())
            ++which;

        RunConfig config;
        Output output;
        try
        {
            config = resolve_config(flags);
            if (const int n = resolve_threads(flags); n > 0)
                omp_set_num_threads(n);
            output.dir = !flags.out_dir.empty() ? flags.out_dir : env_or("FZBF_OUT", ".");
        }
        catch (const std::exception &e)
        {
            err << "fzbf: " << e.what() << '\n';
            return 2;
        }

        RunManifest &m = output.manifest;
        m.version = tool_version();
        m.subcommand = commands[which].first;
        m.arguments = args;
        m.seed = config.experiment.seed;
        m.config_text = emit_config(config);
        m.decisions = default_decisions(config);
        m.started_utc = utc_timestamp();
        try
        {
            handlers[which](config, output, out);
        }
        catch (const std::exception &e)
        {
            err << "fzbf " << commands[which].first << ": " << e.what() << '\n';
            return 1;
        }
        return 0;
    }
}
