// toroidq: spectra, sweeps, bistability and pulse fidelities of a single
// atom coupled to the counter-propagating whispering-gallery modes of a
// fiber-coupled microtoroid.
//
//   toroidq <command> [--config FILE] [--figure N] [--set key=value ...]
//           [--out PATH] [--format csv|json] [--workers K] [--strict]
//
// Exit codes: 0 success, 1 configuration error, 2 computational failure
// (strict mode).

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toroidq/toroidq.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"single-atom quantum switch on a microtoroidal resonator"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {
        "spectrum", "sweep-coupling", "sweep-drive", "bistability",
        "pulse",    "fidelity",       "table1-check"};
    const std::vector<std::string> descriptions = {
        "transmission/reflection vs probe detuning",
        "steady-state observables vs atom-field coupling",
        "steady-state observables vs drive strength",
        "semiclassical bistability curve and turning points",
        "time-domain pulse shapes, channel photon numbers, fidelity",
        "entangled-path preparation fidelity vs pulse photon number",
        "closed-form field amplitudes against their limiting values"};

    std::string config_path;
    std::string out_path;
    std::string format;
    std::vector<std::string> overrides;
    int figure = 0;
    int workers = 0;
    bool strict = false;

    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--figure", figure, "load a built-in preset (2..9)");
        sub->add_option("--set", overrides,
                        "override a config key, e.g. --set params.g_tw_mhz=50");
        sub->add_option("--out", out_path, "output file path");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", workers, "sweep parallelism degree");
        sub->add_flag("--strict", strict,
                      "abort the sweep on the first failed point");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        toroidq::RunConfig cfg;
        const std::string invoked = app.get_subcommands().at(0)->get_name();
        cfg.command = toroidq::command_from_string(invoked);
        if (figure != 0) toroidq::apply_figure_preset(cfg, figure);
        cfg.command = toroidq::command_from_string(invoked);
        if (!config_path.empty()) toroidq::parse_config_file(cfg, config_path);
        for (const auto& kv : overrides) toroidq::apply_override(cfg, kv);
        if (!out_path.empty()) cfg.output_path = out_path;
        if (format == "csv") cfg.format = toroidq::OutputFormat::csv;
        if (format == "json") cfg.format = toroidq::OutputFormat::json;
        if (workers > 0) cfg.workers = workers;
        if (strict) cfg.strict = true;

        toroidq::run(cfg);
        return 0;
    } catch (const toroidq::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
