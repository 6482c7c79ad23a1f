#include "twave/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Travelling waves of the 5-point leapfrog scheme"};
    app.footer(twave::configHelp());
    app.require_subcommand(1);

    std::string configPath, outDir = "out";
    std::vector<std::string> overrides;
    unsigned threads = 1;

    for (const auto& name : twave::experimentNames()) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", configPath, "key=value config file")->check(CLI::ExistingFile);
        sub->add_option("--out", outDir, "output directory")->capture_default_str();
        sub->add_option("--set", overrides, "override, key=value (repeatable)")->take_all();
        sub->add_option("--threads", threads, "worker threads for sweeps (0 = all cores)")->capture_default_str();
    }
    CLI11_PARSE(app, argc, argv);

    try {
        twave::RunConfig cfg = configPath.empty() ? twave::RunConfig{} : twave::RunConfig::fromFile(configPath);
        for (const auto& s : overrides) cfg.set(s);
        cfg.experiment = app.get_subcommands().front()->get_name();
        cfg.outDir = outDir;
        cfg.threads = threads;
        const auto res = twave::runExperiment(cfg);
        for (const auto& f : res.files) std::cout << f.string() << '\n';
        if (res.exitStatus != 0) std::cerr << "error: " << res.failure << '\n';
        return res.exitStatus;
    } catch (const twave::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 2;
    }
}
