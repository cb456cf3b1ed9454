// cli.cpp — Subcommand front end: sweep, point, spectrum, selftest.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrabi/harness.hpp"

namespace qrabi {

namespace {

struct PointFlags {
    double omega = 1.0, delta1 = 1.0, delta2 = 1.0, g1 = 0.0, g2 = 0.0, temp = 0.1;
    int max_fock = 1024;
};

void add_model_flags(CLI::App* cmd, PointFlags& f) {
    cmd->add_option("--omega", f.omega, "boson mode frequency");
    cmd->add_option("--delta1", f.delta1, "first qubit transition frequency");
    cmd->add_option("--delta2", f.delta2, "second qubit transition frequency");
    cmd->add_option("--g1", f.g1, "first qubit coupling");
    cmd->add_option("--g2", f.g2, "second qubit coupling");
    cmd->add_option("--max-fock", f.max_fock, "hard Fock cutoff limit");
}

int run_point(const PointFlags& f, bool gap) {
    model::ModelParams params{f.omega, f.delta1, f.delta2, f.g1, f.g2};
    bath::BathParams b = bath::BathParams::defaults(params.omega, f.temp);
    quant::EvalOptions opt;
    opt.include_gap = gap;
    opt.cutoff.max_fock = f.max_fock;

    quant::QuantifierReport r = quant::evaluate_all(params, b, f.temp, opt);

    nlohmann::json j;
    j["omega"] = params.omega;
    j["delta1"] = params.delta1;
    j["delta2"] = params.delta2;
    j["g1"] = params.g1;
    j["g2"] = params.g2;
    j["T"] = f.temp;
    for (quant::Field field : quant::all_fields()) {
        const auto& v = r.by_field(field);
        if (v) j[quant::field_name(field)] = *v;
        else j[quant::field_name(field)] = nullptr;  // undefined G² stays null
    }
    if (gap) j["gap_ratio"] = r.gap_ratio ? nlohmann::json(*r.gap_ratio) : nlohmann::json();
    j["n_fock_used"] = r.n_fock_used;
    j["M_used"] = r.m_used;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_spectrum(const PointFlags& f, int levels) {
    model::ModelParams params{f.omega, f.delta1, f.delta2, f.g1, f.g2};
    model::CutoffOptions copt;
    copt.max_fock = f.max_fock;
    // Converge the printed part of the spectrum itself.
    auto gaps = [&](const model::EigenSystem& eigs) {
        std::vector<double> v;
        const int n = std::min(levels, eigs.levels() - 1);
        for (int k = 1; k <= n; ++k) v.push_back(eigs.energies(k) - eigs.energies(0));
        return v;
    };
    model::ConvergedCutoff conv = model::converge_cutoff(params, gaps, copt);
    std::cout << "# n_fock=" << conv.n_fock << "\n";
    std::cout << "# k  E_k-E_0  parity\n";
    const int n = std::min(levels, conv.eigs.levels() - 1);
    for (int k = 0; k <= n; ++k)
        std::cout << k << " " << conv.eigs.energies(k) - conv.eigs.energies(0) << " "
                  << (conv.eigs.parities(k) > 0 ? "+1" : "-1") << "\n";
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_override) {
    sweep::SweepConfig config = sweep::load_config(config_path);
    if (!out_override.empty()) config.output_dir = out_override;

    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);

    sweep::SweepResult result = sweep::run_sweep(config);

    sweep::emit_csv(result, dir / "results.csv");
    {
        std::ofstream echo(dir / "config.json", std::ios::binary);
        echo << sweep::config_echo_json(config) << "\n";
    }
    if (config.heatmaps && config.axes.size() == 2) {
        for (quant::Field f : config.quantifiers)
            sweep::emit_heatmap(result, f, dir / (quant::field_name(f) + ".pgm"));
    }
    if (!result.failures.empty()) {
        std::ofstream fail(dir / "failures.txt", std::ios::binary);
        for (const auto& f : result.failures) fail << f.error << "\n";
    }

    std::cout << result.rows.size() << " points written to " << (dir / "results.csv").string();
    if (!result.failures.empty())
        std::cout << " (" << result.failures.size() << " failed, see failures.txt)";
    std::cout << "\n";
    return result.failures.empty() ? 0 : 2;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"thermal two-qubit quantum Rabi model toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
    sweep_cmd->add_option("--config", config_path, "config file")->required();
    sweep_cmd->add_option("--out", out_override, "output directory (overrides config)");

    PointFlags pf;
    bool gap = false;
    CLI::App* point_cmd = app.add_subcommand("point", "evaluate all quantifiers at one point");
    add_model_flags(point_cmd, pf);
    point_cmd->add_option("--temp", pf.temp, "temperature");
    point_cmd->add_flag("--gap", gap, "also compute the Liouvillian gap ratio");

    PointFlags sf;
    int levels = 10;
    CLI::App* spec_cmd = app.add_subcommand("spectrum", "print E_k − E_0 and parities");
    add_model_flags(spec_cmd, sf);
    spec_cmd->add_option("--levels", levels, "number of excited levels");

    CLI::App* self_cmd = app.add_subcommand("selftest", "run the fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints usage/help
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (sweep_cmd->parsed()) return run_sweep_cmd(config_path, out_override);
        if (point_cmd->parsed()) return run_point(pf, gap);
        if (spec_cmd->parsed()) return run_spectrum(sf, levels);
        if (self_cmd->parsed()) return selftest(std::cout) ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace qrabi
