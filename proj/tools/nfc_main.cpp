#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace nfc::cli;
    CLI::App app{"Specializations, field counts and integral points over number fields"};
    std::string command, config_path, outdir = ".";
    std::optional<double> B, y, delta;
    std::optional<int> D;
    std::optional<unsigned long> seed, prime_bound;
    std::optional<unsigned> workers;
    std::optional<int> precision_cap;
    app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(command_names()));
    app.add_option("config", config_path, "Config file")->required();
    app.add_option("--out", outdir, "Output directory");
    app.add_option("--B", B, "Height bound");
    app.add_option("--y", y, "Discriminant-norm budget");
    app.add_option("--delta", delta, "delta (must exceed delta_P)");
    app.add_option("--D", D, "Auxiliary degree for det-cover");
    app.add_option("--seed", seed, "Seed");
    app.add_option("--workers", workers, "Worker threads");
    app.add_option("--prime-bound", prime_bound, "Fingerprint prime bound X");
    app.add_option("--precision-cap", precision_cap, "Embedding precision cap in bits");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return 1;
    }
    if (B) cfg.B = B;
    if (y) cfg.y = y;
    if (delta) cfg.delta = delta;
    if (D) cfg.D = D;
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (prime_bound) cfg.prime_bound = *prime_bound;
    if (precision_cap) cfg.precision_cap = *precision_cap;
    return run_command(command, cfg, outdir, std::cerr);
}
