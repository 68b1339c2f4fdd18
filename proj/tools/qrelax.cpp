#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qrelax/matrix_io.hpp"
#include "qrelax/run.hpp"

namespace {

// "index:k" or "q:value"; a bare number is treated as a q target.
qrelax::InitialSelector parse_initial(const std::string& s) {
    qrelax::InitialSelector sel;
    if (s.rfind("index:", 0) == 0) {
        sel.kind = qrelax::InitialSelector::Kind::Index;
        sel.index = std::stoul(s.substr(6));
        return sel;
    }
    const std::string v = (s.rfind("q:", 0) == 0) ? s.substr(2) : s;
    sel.kind = qrelax::InitialSelector::Kind::NearestQ;
    sel.q_value = std::stod(v);
    return sel;
}

void add_shared(CLI::App* sub, qrelax::RunConfig& cfg, std::vector<std::string>& initial_raw,
                std::string& format_raw, std::string& config_path) {
    sub->add_option("--tau-max", cfg.tau_max, "Scaled-time horizon");
    sub->add_option("--tau-steps", cfg.tau_steps, "Grid points (>= 2)");
    sub->add_option("--seed", cfg.seed, "RNG seed (SplitMix64 stream)");
    sub->add_option("--out", cfg.out_path, "Output path")->required();
    sub->add_option("--format", format_raw, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--deterministic", cfg.deterministic,
                  "Suppress the timestamp metadata line");
    sub->add_flag("--debug", cfg.debug, "Emit cross-check channels");
    sub->add_option("--initial", initial_raw,
                    "Initial state selector(s): index:k or q:value");
    sub->add_option("--snapshots", cfg.snapshot_taus,
                    "Scaled times at which strength-function and amplitude "
                    "histograms are written");
    sub->add_option("--config", config_path,
                    "Flat key=value file of option defaults (flags win)");
}

// Expands --config into option tokens inserted after the subcommand name.
// Keys are long option names without the dashes; values already given on
// the command line are left alone, so explicit flags always win.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    std::size_t sub_pos = std::string::npos;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (sub_pos == std::string::npos && !args[i].empty() && args[i][0] != '-') sub_pos = i;
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || sub_pos == std::string::npos) return args;

    std::ifstream in(path);
    if (!in) throw qrelax::ConfigError("cannot open config file: " + path);
    std::vector<std::string> inject;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw qrelax::ConfigError("config line is not key=value: " + line);
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (value == "true" || value == "1" || value == "yes") {
            inject.push_back(flag);
        } else if (value == "false" || value == "0" || value == "no") {
            // booleans default off; nothing to inject
            if (key != "deterministic" && key != "debug" && key != "squeezed")
                inject.push_back(flag + "=" + value);
        } else {
            inject.push_back(flag + "=" + value);
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, inject.begin(),
                inject.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-dependent relaxation of observables in closed quantum systems"};
    app.require_subcommand(1);

    qrelax::RunConfig cfg;
    std::vector<std::string> initial_raw;
    std::string format_raw = "csv";
    std::string config_path;
    double initial_q_shortcut = 0.0;

    auto* goe = app.add_subcommand("goe", "Single GOE realization with a generated observable");
    goe->add_option("--dim", cfg.dim, "Matrix dimension");
    goe->add_option("--lambda", cfg.lambda, "Energy scale (semicircle radius 2*lambda)");
    goe->add_option("--q-scale", cfg.q_scale, "Scale of the generated observable spectrum");
    goe->add_option("--realizations", cfg.realizations,
                    "Average channels over this many seeds (post hoc)");
    auto* init_q_opt =
        goe->add_option("--initial-q", initial_q_shortcut, "Shortcut for --initial q:value");
    add_shared(goe, cfg, initial_raw, format_raw, config_path);

    auto* boson = app.add_subcommand("boson", "Bosonic two-body random ensemble");
    boson->add_option("--n-bosons", cfg.n_bosons, "Boson count");
    boson->add_option("--n-levels", cfg.n_levels, "Single-particle level count");
    boson->add_option("--v", cfg.v, "Two-body interaction strength");
    boson->add_option("--q-scale", cfg.q_scale, "Scale of the generated observable spectrum");
    boson->add_option("--export-hamiltonian", cfg.export_hamiltonian,
                      "Also write the assembled H as a QRXM1 file");
    add_shared(boson, cfg, initial_raw, format_raw, config_path);

    auto* osc = app.add_subcommand("oscillator", "Harmonic-oscillator regular limit");
    osc->add_option("--alpha", cfg.alpha_re, "Coherent displacement (real part)");
    osc->add_option("--alpha-im", cfg.alpha_im, "Coherent displacement (imaginary part)");
    osc->add_option("--omega", cfg.omega, "Oscillator frequency");
    osc->add_option("--n-max", cfg.n_max, "Fock truncation");
    osc->add_flag("--squeezed", cfg.squeezed,
                  "Evolve the truncated coordinate eigenstate instead");
    osc->add_option("--a-position", cfg.a_position, "Coordinate eigenvalue (squeezed mode)");
    add_shared(osc, cfg, initial_raw, format_raw, config_path);

    auto* ext = app.add_subcommand("external", "Analyze supplied H and Q matrix files");
    ext->add_option("--hamiltonian-file", cfg.hamiltonian_file, "QRXM1 Hamiltonian");
    ext->add_option("--observable-file", cfg.observable_file, "QRXM1 observable");
    add_shared(ext, cfg, initial_raw, format_raw, config_path);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config_file(args);
    } catch (const qrelax::ConfigError& e) {
        std::cerr << "qrelax: " << e.what() << "\n";
        return 2;
    }
    try {
        // CLI11 consumes the argument vector in reverse order
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (goe->parsed()) cfg.mode = qrelax::RunMode::Goe;
    if (boson->parsed()) cfg.mode = qrelax::RunMode::Boson;
    if (osc->parsed()) cfg.mode = qrelax::RunMode::Oscillator;
    if (ext->parsed()) cfg.mode = qrelax::RunMode::External;
    cfg.format = (format_raw == "json") ? qrelax::OutputFormat::Json : qrelax::OutputFormat::Csv;

    try {
        for (const auto& s : initial_raw) cfg.initial.push_back(parse_initial(s));
        if (init_q_opt->count() > 0) {
            qrelax::InitialSelector sel;
            sel.kind = qrelax::InitialSelector::Kind::NearestQ;
            sel.q_value = initial_q_shortcut;
            cfg.initial.push_back(sel);
        }
    } catch (const std::exception& e) {
        std::cerr << "qrelax: bad --initial value: " << e.what() << "\n";
        return 2;
    }

    try {
        qrelax::run(cfg);
    } catch (const qrelax::ConfigError& e) {
        std::cerr << "qrelax: " << e.what() << "\n";
        return 2;
    } catch (const qrelax::IngestError& e) {
        std::cerr << "qrelax: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "qrelax: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
