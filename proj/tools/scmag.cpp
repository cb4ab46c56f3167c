// scmag <subcommand> --config <file> [--out <dir>]
//
// Thread count comes from SCMAG_THREADS (default: OpenMP's choice). Exit
// codes are listed in the README.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scmag/config.hpp"
#include "scmag/errors.hpp"
#include "scmag/parallel.hpp"
#include "scmag/scenario.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kInternal = 9;

int apply_thread_env() {
    const char* env = std::getenv("SCMAG_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        std::cerr << "scmag: SCMAG_THREADS must be a positive integer, got '" << env << "'\n";
        return kUsage;
    }
    scmag::set_threads(static_cast<int>(n));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magnetostatics of superconducting atom-chip wires: fields, side-guide traps, Bean profiles"};
    std::string sub, configPath, outDir;
    bool serial = false, quiet = false;
    std::string subList;
    for (auto s : scmag::kSubcommands) subList += (subList.empty() ? "" : "|") + std::string(s);
    app.add_option("subcommand", sub, subList)->required();
    app.add_option("-c,--config", configPath, "scenario file");
    app.add_option("-o,--out", outDir, "output directory (overrides [output] dir)");
    app.add_flag("--serial", serial, "use the serial reference kernels");
    app.add_flag("-q,--quiet", quiet, "do not print the summary");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    if (!scmag::is_subcommand(sub)) {
        std::cerr << "scmag: unknown subcommand '" << sub << "' (expected " << subList << ")\n";
        return kUsage;
    }
    if (configPath.empty() && sub != "materials") {
        std::cerr << "scmag: " << sub << " needs --config <file>\n";
        return kUsage;
    }
    if (int rc = apply_thread_env()) return rc;

    try {
        scmag::ScenarioConfig cfg = configPath.empty() ? scmag::ScenarioConfig{} : scmag::load_config(configPath);
        if (!outDir.empty()) cfg.output.dir = outDir;
        std::string summary;
        auto files = scmag::run_scenario(cfg, sub, serial ? scmag::Execution::Serial : scmag::Execution::Parallel,
                                         &summary);
        if (!quiet) {
            std::cout << summary << '\n';
            for (const auto& f : files) std::cout << "wrote " << f << '\n';
        }
        return 0;
    } catch (const scmag::Error& e) {
        std::cerr << "scmag: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "scmag: internal error: " << e.what() << '\n';
        return kInternal;
    }
}
