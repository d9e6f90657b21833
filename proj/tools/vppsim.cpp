// Command-line driver: run controller comparisons on CSV or synthetic
// scenarios, validate configurations.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "vpp/config.hpp"
#include "vpp/errors.hpp"
#include "vpp/results.hpp"
#include "vpp/scenario.hpp"
#include "vpp/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct RunArgs {
    std::string config_path;
    std::string weather_path;
    std::string prices_path;
    std::int64_t synth_seed = -1;
    int days = 0;
    std::string profile;
    std::string controllers;
    std::string epsilon;
    std::string regime;
    std::string out_dir = "results";
    int jobs = 1;
};

vpp::io::ExperimentConfig resolve_config(const RunArgs& a) {
    auto cfg = a.config_path.empty() ? vpp::io::default_config()
                                     : vpp::io::load_config(a.config_path);
    if (!a.controllers.empty()) {
        vpp::io::apply_config_entry(cfg, "run.controllers", a.controllers);
    }
    if (!a.epsilon.empty()) {
        vpp::io::apply_config_entry(cfg, "run.epsilon", a.epsilon);
    }
    if (!a.regime.empty()) vpp::io::apply_config_entry(cfg, "run.regime", a.regime);
    if (a.days > 0) {
        vpp::io::apply_config_entry(cfg, "run.days", std::to_string(a.days));
    }
    if (!a.profile.empty()) {
        vpp::io::apply_config_entry(cfg, "run.profile", a.profile);
    }
    if (a.synth_seed >= 0) {
        vpp::io::apply_config_entry(cfg, "run.seed", std::to_string(a.synth_seed));
    }
    cfg.validate();
    return cfg;
}

int cmd_run(const RunArgs& a) {
    const auto cfg = resolve_config(a);

    const bool use_synth = a.synth_seed >= 0;
    const bool use_files = !a.weather_path.empty() || !a.prices_path.empty();
    if (use_synth == use_files) {
        throw vpp::ValidationError(
            "pick one scenario source: --synth SEED or --weather/--prices");
    }
    if (use_files && (a.weather_path.empty() || a.prices_path.empty())) {
        throw vpp::ValidationError("--weather and --prices go together");
    }

    std::vector<vpp::mpc::ControllerMode> modes;
    for (auto kind : cfg.run.controllers) {
        if (kind == vpp::mpc::ControllerKind::dist_robust) {
            if (cfg.run.epsilons.empty()) {
                throw vpp::ValidationError(
                    "dr controller requested but no --epsilon list given");
            }
            for (double e : cfg.run.epsilons) {
                modes.push_back({kind, e, cfg.run.regime});
            }
        } else {
            modes.push_back({kind, 0.0, cfg.run.regime});
        }
    }

    vpp::io::Scenario scenario;
    if (use_synth) {
        const int total_days = cfg.run.days + cfg.sim.lookback_days + 2;
        scenario = vpp::io::synth_scenario(cfg.run.seed, total_days,
                                           vpp::io::synth_profile_from_string(
                                               cfg.run.profile));
    } else {
        scenario = vpp::io::load_scenario(a.weather_path, a.prices_path);
        scenario.lat_deg = cfg.sim.latitude_deg;
        scenario.lon_deg = cfg.sim.longitude_deg;
    }
    for (const auto& w : scenario.warnings) {
        std::cerr << "warning: " << w << "\n";
    }

    vpp::mpc::SimOptions opts;
    if (use_synth) opts.steps = cfg.run.days * 24;

    std::vector<vpp::mpc::TrajectoryLog> logs(modes.size());
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::size_t next = 0;
    std::mutex next_mutex;

    auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= modes.size() || first_error) return;
                i = next++;
            }
            try {
                logs[i] = vpp::mpc::simulate(scenario, cfg, modes[i], opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(modes.size())));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs - 1; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    std::filesystem::create_directories(a.out_dir);
    vpp::io::write_results(logs, a.out_dir + "/summary.csv", a.out_dir);
    std::cout << vpp::io::summary_table(logs);
    std::cout << "wrote " << a.out_dir << "/summary.csv and "
              << logs.size() << " time-series files\n";
    return kExitOk;
}

int cmd_validate(const std::string& config_path, const std::string& format) {
    const auto cfg = config_path.empty() ? vpp::io::default_config()
                                         : vpp::io::load_config(config_path);
    cfg.validate();
    if (format == "json") {
        std::cout << vpp::io::config_to_json(cfg);
    } else {
        std::cout << vpp::io::config_to_text(cfg);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virtual power plant dispatch simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand(
        "run", "Simulate the controller comparison and write result CSVs");
    run->add_option("--config", run_args.config_path, "Config file (key = value)");
    run->add_option("--weather", run_args.weather_path, "Weather CSV");
    run->add_option("--prices", run_args.prices_path, "Price CSV");
    run->add_option("--synth", run_args.synth_seed,
                    "Generate a synthetic scenario from this seed");
    run->add_option("--days", run_args.days, "Simulated days");
    run->add_option("--profile", run_args.profile,
                    "Synthetic profile: spring|autumn");
    run->add_option("--controllers", run_args.controllers,
                    "Comma list from pf,fc,dr");
    run->add_option("--epsilon", run_args.epsilon,
                    "Comma list of ambiguity radii for dr");
    run->add_option("--regime", run_args.regime,
                    "Uncertainty regime: full|price-only");
    run->add_option("--out", run_args.out_dir, "Output directory");
    run->add_option("--jobs", run_args.jobs, "Parallel runs");

    std::string validate_config, validate_format = "table";
    auto* validate = app.add_subcommand(
        "validate", "Resolve and print the configuration");
    validate->add_option("--config", validate_config, "Config file");
    validate->add_option("--format", validate_format, "table|json");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_args);
        if (validate->parsed()) {
            return cmd_validate(validate_config, validate_format);
        }
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    } catch (const vpp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const vpp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
