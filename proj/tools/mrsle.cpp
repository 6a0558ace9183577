#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "mrsle/config_file.hpp"
#include "mrsle/drivers.hpp"
#include "mrsle/experiments.hpp"
#include "mrsle/io.hpp"
#include "mrsle/loewner.hpp"
#include "mrsle/svg.hpp"

// exit codes: 0 ok, 1 assertion failure, 2 config error, 3 numerical abort

int main(int argc, char** argv) {
    CLI::App app{"multiradial Loewner evolution laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "results";
    auto* run = app.add_subcommand("run", "run a configured experiment");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--out", out_dir, "output directory");

    auto* audit = app.add_subcommand("audit", "check the bound battery on canned trajectories");

    int tr_n = 2;
    double tr_kappa = 4, tr_T = 1, tr_dt = 1e-3;
    long tr_seed = -1;
    std::string tr_out = "trace_out";
    auto* tr = app.add_subcommand("trace", "simulate and trace one trajectory");
    tr->add_option("--n", tr_n)->required();
    tr->add_option("--kappa", tr_kappa)->required();
    tr->add_option("--T", tr_T)->required();
    tr->add_option("--dt", tr_dt)->required();
    tr->add_option("--seed", tr_seed)->required();
    tr->add_option("--out", tr_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const mrsle::Config cfg = mrsle::Config::parse_file(config_path);
            return mrsle::run_experiment(cfg, out_dir);
        }
        if (audit->parsed()) return mrsle::run_audit(std::cout);
        if (tr->parsed()) {
            std::ostringstream cfg_text;
            cfg_text << "[experiment]\nname = trace\nseed = " << tr_seed << "\n[params]\nn = "
                     << tr_n << "\nkappa = " << tr_kappa << "\nT = " << tr_T << "\ndt = " << tr_dt
                     << "\n";
            const mrsle::Config cfg = mrsle::Config::parse_text(cfg_text.str());
            return mrsle::run_experiment(cfg, tr_out);
        }
    } catch (const mrsle::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mrsle::numerical_abort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
