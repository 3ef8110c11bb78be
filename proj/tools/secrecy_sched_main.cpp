#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "secrecy/oracle.hpp"
#include "secrecy/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw secrecy::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw secrecy::ConfigError("cannot open output file '" + path + "'");
    out << data;
}

std::vector<double> parse_grid_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw secrecy::ConfigError(std::string("invalid ") + what + " entry '" +
                                       item + "'");
        }
    }
    if (out.empty()) throw secrecy::ConfigError(std::string(what) + " list is empty");
    return out;
}

struct CommonArgs {
    std::string config_path;
    int figure = 0;
    std::string out_path;
    std::int64_t trials = -1;
    std::int64_t seed = -1;
    unsigned threads = 0;
};

secrecy::SweepSpec load_spec(const CommonArgs& args) {
    if (!args.config_path.empty() && args.figure != 0)
        throw secrecy::ConfigError("give either --config or --figure, not both");
    secrecy::SweepSpec spec;
    if (args.figure != 0)
        spec = secrecy::figure_spec(args.figure);
    else if (!args.config_path.empty())
        spec = secrecy::parse_config(read_file(args.config_path));
    else
        throw secrecy::ConfigError("one of --config or --figure is required");
    if (args.trials >= 0) spec.mc_trials = static_cast<std::uint64_t>(args.trials);
    if (args.seed >= 0) spec.seed = static_cast<std::uint64_t>(args.seed);
    spec.validate();
    return spec;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mc) {
    cmd->add_option("--config", args.config_path, "JSON sweep configuration file");
    cmd->add_option("--figure", args.figure, "built-in parameterization (2-5)")
        ->check(CLI::Range(2, 5));
    cmd->add_option("--out", args.out_path, "output CSV path (default: stdout)");
    if (with_mc) {
        cmd->add_option("--trials", args.trials, "Monte-Carlo trials per point (0 = analytic only)");
        cmd->add_option("--seed", args.seed, "Monte-Carlo base seed");
        cmd->add_option("--threads", args.threads, "Monte-Carlo worker threads (0 = all cores)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage analysis of multi-user scheduling under an "
                 "interference-limited uplink with eavesdroppers"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "evaluate outage curves over a parameter grid");
    add_common(sweep_cmd, sweep_args, /*with_mc=*/true);

    CommonArgs floor_args;
    std::string floor_mer_list = "-10,-5,0,5,10,15,20,25,30";
    CLI::App* floor_cmd =
        app.add_subcommand("floor", "emit floor/bound table versus the main-to-eavesdropper ratio");
    add_common(floor_cmd, floor_args, /*with_mc=*/false);
    floor_cmd->add_option("--mer-db", floor_mer_list,
                          "comma-separated MER grid in dB");

    CommonArgs div_args;
    std::string div_mer_list = "1e6,1e8";
    CLI::App* div_cmd =
        app.add_subcommand("diversity", "estimate secrecy diversity orders from floor slopes");
    add_common(div_cmd, div_args, /*with_mc=*/false);
    div_cmd->add_option("--mer-grid", div_mer_list,
                        "comma-separated linear MER grid (largest >= 1e6)");

    std::string certify_out;
    double certify_rel_tol = 1e-6;
    CLI::App* certify_cmd = app.add_subcommand(
        "certify", "compare closed forms against quadrature oracles on a fixed battery");
    certify_cmd->add_option("--out", certify_out, "output CSV path (default: stdout)");
    certify_cmd->add_option("--max-rel-error", certify_rel_tol,
                            "fail when any relative error exceeds this bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sweep_cmd->parsed()) {
            const secrecy::SweepSpec spec = load_spec(sweep_args);
            secrecy::SimulationOptions opts;
            opts.threads = sweep_args.threads;
            const auto rows = secrecy::run_sweep(spec, opts);
            write_output(sweep_args.out_path, secrecy::to_csv(rows));
        } else if (floor_cmd->parsed()) {
            const secrecy::SweepSpec spec = load_spec(floor_args);
            const auto grid = parse_grid_list(floor_mer_list, "--mer-db");
            const auto rows = secrecy::run_floor_table(spec, grid);
            write_output(floor_args.out_path, secrecy::to_csv(rows));
        } else if (div_cmd->parsed()) {
            const secrecy::SweepSpec spec = load_spec(div_args);
            const auto grid = parse_grid_list(div_mer_list, "--mer-grid");
            const auto rows = secrecy::run_diversity_table(spec, grid);
            write_output(div_args.out_path, secrecy::to_csv(rows));
        } else if (certify_cmd->parsed()) {
            const auto results = secrecy::oracle::run_certification_battery();
            std::string csv = "case,closed_form,quadrature,quad_error,rel_error\n";
            double max_rel = 0.0;
            for (const auto& r : results) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.3g,%.3g\n", r.closed_form,
                              r.quadrature, r.quad_error, r.rel_error);
                csv += r.label + buf;
                max_rel = std::max(max_rel, r.rel_error);
            }
            char tail[64];
            std::snprintf(tail, sizeof(tail), "%.3g", max_rel);
            csv += "max_rel_error,,,," + std::string(tail) + "\n";
            write_output(certify_out, csv);
            if (max_rel > certify_rel_tol) {
                std::cerr << "certification failed: max relative error " << max_rel
                          << " exceeds " << certify_rel_tol << "\n";
                return 2;
            }
        }
    } catch (const secrecy::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const secrecy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
