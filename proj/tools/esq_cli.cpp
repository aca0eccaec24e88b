// Command-line driver: mu scans, phase fringes, decoherence curves, Husimi
// grids and the invariant self-check, all writing deterministic CSV/text
// artifacts. Angles are radians everywhere; there is no degree support.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "esq/scan.hpp"

namespace {

// Flat key=value config: one option per line, '#' comments, list values
// comma separated. Explicit command-line flags win over file values.
void apply_config(CLI::App* cmd, const std::string& path,
                  const std::map<std::string, std::function<void(const std::string&)>>& setters) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config line " + std::to_string(lineno) +
                                       ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw CLI::ValidationError("config line " + std::to_string(lineno) +
                                       ": unknown key '" + key + "'");
        const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt && opt->count() > 0) continue;  // explicit flag wins
        it->second(value);
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated integer list");
    return out;
}

esq::scan::GridSpec parse_grid(const std::string& text) {
    esq::scan::GridSpec grid;
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':'))
        throw CLI::ValidationError("expected start:stop:count");
    grid.start = std::stod(a);
    grid.stop = std::stod(b);
    grid.count = std::stoi(c);
    grid.validate();
    return grid;
}

std::vector<esq::protocols::Kind> parse_kinds(const std::vector<std::string>& names) {
    std::vector<esq::protocols::Kind> out;
    for (const std::string& name : names) {
        auto kind = esq::protocols::kind_from_name(name);
        if (!kind)
            throw CLI::ValidationError("unknown protocol '" + name +
                                       "' (gesp-e, gesp-o, cesp, scsp-e, scsp-o)");
        out.push_back(*kind);
    }
    return out;
}

struct CommonArgs {
    std::string config_path;
    std::string n_list = "100";
    double mu_single = -1.0;  // >= 0 overrides the grid with one point
    std::string mu_grid = "0.01:1.5707963267948966:100";
    std::string phi_grid = "-0.1:0.1:101";
    std::vector<std::string> protocols = {"gesp-e"};
    std::string out_path;
    double dn = 0.0;
    int numeric_cutoff = 512;
    int threads = 0;
    long seed = 0;
    std::string ntilde = "0,1,2,4,8";

    // decoherence parameters (used when any is set)
    double kappa = 0.0;
    double delta = 0.0;
    double gamma_sp = 0.0;
    double g = 0.0;
    double alpha = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_phi) {
    cmd->add_option("--config", args.config_path, "flat key=value config file (flags win)");
    cmd->add_option("--n", args.n_list, "atom counts, comma separated");
    cmd->add_option("--mu", args.mu_single, "single squeezing value (overrides --mu-grid)");
    cmd->add_option("--mu-grid", args.mu_grid, "squeezing grid start:stop:count (radians)");
    if (with_phi) cmd->add_option("--phi-grid", args.phi_grid, "phase grid start:stop:count");
    cmd->add_option("--protocol", args.protocols,
                    "protocol kinds (gesp-e gesp-o cesp scsp-e scsp-o)");
    cmd->add_option("--out", args.out_path, "output CSV path");
    cmd->add_option("--dn", args.dn, "detection noise Delta S_DN");
    cmd->add_option("--numeric-cutoff", args.numeric_cutoff,
                    "largest N simulated for the numeric column");
    cmd->add_option("--threads", args.threads, "worker threads (0 = library default)");
    cmd->add_option("--seed", args.seed, "reserved; outputs are deterministic");
}

void load_common_config(CLI::App* cmd, CommonArgs& args) {
    if (args.config_path.empty()) return;
    std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"n", [&](const std::string& v) { args.n_list = v; }},
        {"mu", [&](const std::string& v) { args.mu_single = std::stod(v); }},
        {"mu-grid", [&](const std::string& v) { args.mu_grid = v; }},
        {"phi-grid", [&](const std::string& v) { args.phi_grid = v; }},
        {"protocol",
         [&](const std::string& v) {
             args.protocols.clear();
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) args.protocols.push_back(item);
         }},
        {"out", [&](const std::string& v) { args.out_path = v; }},
        {"dn", [&](const std::string& v) { args.dn = std::stod(v); }},
        {"numeric-cutoff", [&](const std::string& v) { args.numeric_cutoff = std::stoi(v); }},
        {"threads", [&](const std::string& v) { args.threads = std::stoi(v); }},
        {"seed", [&](const std::string& v) { args.seed = std::stol(v); }},
        {"kappa", [&](const std::string& v) { args.kappa = std::stod(v); }},
        {"delta", [&](const std::string& v) { args.delta = std::stod(v); }},
        {"gamma-sp", [&](const std::string& v) { args.gamma_sp = std::stod(v); }},
        {"g", [&](const std::string& v) { args.g = std::stod(v); }},
        {"alpha", [&](const std::string& v) { args.alpha = std::stod(v); }},
        {"ntilde", [&](const std::string& v) { args.ntilde = v; }},
    };
    apply_config(cmd, args.config_path, setters);
    if (args.out_path.empty())
        throw CLI::ValidationError("missing output path (--out or out= in the config)");
}

void add_decoherence_params(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--kappa", args.kappa, "cavity decay rate");
    cmd->add_option("--delta", args.delta, "|probe detuning|");
    cmd->add_option("--gamma-sp", args.gamma_sp, "atomic spontaneous decay rate");
    cmd->add_option("--g", args.g, "single-photon Rabi half-coupling");
    cmd->add_option("--alpha", args.alpha, "fragility exponent override (default: plateau PMF)");
    cmd->add_option("--ntilde", args.ntilde, "collided-atom counts, comma separated");
}

esq::scan::ScanConfig to_config(const CommonArgs& args, bool with_phi) {
    if (args.out_path.empty()) throw CLI::ValidationError("missing output path (--out)");
    esq::scan::ScanConfig cfg;
    cfg.n_atoms = parse_int_list(args.n_list);
    cfg.mu_grid = args.mu_single >= 0.0 ? esq::scan::GridSpec{args.mu_single, args.mu_single, 1}
                                        : parse_grid(args.mu_grid);
    if (with_phi) cfg.phi_grid = parse_grid(args.phi_grid);
    cfg.kinds = parse_kinds(args.protocols);
    cfg.detection_noise = args.dn;
    cfg.output_path = args.out_path;
    cfg.numeric_cutoff = args.numeric_cutoff;
    cfg.seed = args.seed;
    cfg.n_collided = parse_int_list(args.ntilde);
    if (args.kappa > 0.0 || args.g > 0.0) {
        esq::decoherence::DecoherenceParams p;
        p.kappa = args.kappa;
        p.delta_abs = args.delta > 0.0 ? args.delta : 1.0;
        p.gamma_sp = args.gamma_sp;
        p.g = args.g;
        if (args.alpha > 0.0) p.alpha = args.alpha;
        cfg.decoherence = p;
    }
#ifdef _OPENMP
    if (args.threads > 0) omp_set_num_threads(args.threads);
#endif
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"echo-squeezing protocol scans and verification"};
    app.require_subcommand(1);

    CommonArgs scan_args, fringe_args, dec_args;
    auto* scan_cmd = app.add_subcommand("scan-mu", "sensitivity/PMF/NAF versus mu");
    add_common(scan_cmd, scan_args, false);

    auto* fringe_cmd = app.add_subcommand("fringe", "signal and noise versus phi");
    add_common(fringe_cmd, fringe_args, true);

    auto* dec_cmd = app.add_subcommand("decoherence", "collision and cavity/spontaneous curves");
    add_common(dec_cmd, dec_args, false);
    add_decoherence_params(dec_cmd, dec_args);

    auto* husimi_cmd = app.add_subcommand("husimi", "Husimi grid after a protocol stage");
    esq::scan::HusimiConfig husimi;
    std::string husimi_protocol = "gesp-e";
    std::string husimi_grid_spec = "128:128";
    std::string husimi_config;
    int husimi_threads = 0;
    husimi_cmd->add_option("--config", husimi_config, "flat key=value config file (flags win)");
    husimi_cmd->add_option("--n", husimi.n_atoms, "atom count");
    husimi_cmd->add_option("--protocol", husimi_protocol, "protocol kind");
    husimi_cmd->add_option("--mu", husimi.mu, "squeezing parameter (radians)");
    husimi_cmd->add_option("--phi", husimi.phi, "scan phase (radians)");
    husimi_cmd->add_option("--stage", husimi.stage, "initial | post-squeeze | post-phase | final");
    husimi_cmd->add_option("--grid", husimi_grid_spec, "n_theta:n_phi");
    husimi_cmd->add_option("--out", husimi.output_path, "output CSV path");
    husimi_cmd->add_option("--threads", husimi_threads, "worker threads");

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    esq::scan::VerifyOptions verify;
    int verify_threads = 0;
    verify_cmd->add_option("--only", verify.only, "reductions | oracle | qcr | collisions");
    verify_cmd->add_option("--threads", verify_threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan_cmd->parsed()) {
            load_common_config(scan_cmd, scan_args);
            esq::scan::cmd_scan_mu(to_config(scan_args, false));
        } else if (fringe_cmd->parsed()) {
            load_common_config(fringe_cmd, fringe_args);
            esq::scan::cmd_fringe(to_config(fringe_args, true));
        } else if (dec_cmd->parsed()) {
            load_common_config(dec_cmd, dec_args);
            esq::scan::cmd_decoherence(to_config(dec_args, false));
        } else if (husimi_cmd->parsed()) {
            if (!husimi_config.empty()) {
                std::map<std::string, std::function<void(const std::string&)>> setters = {
                    {"n", [&](const std::string& v) { husimi.n_atoms = std::stoi(v); }},
                    {"protocol", [&](const std::string& v) { husimi_protocol = v; }},
                    {"mu", [&](const std::string& v) { husimi.mu = std::stod(v); }},
                    {"phi", [&](const std::string& v) { husimi.phi = std::stod(v); }},
                    {"stage", [&](const std::string& v) { husimi.stage = v; }},
                    {"grid", [&](const std::string& v) { husimi_grid_spec = v; }},
                    {"out", [&](const std::string& v) { husimi.output_path = v; }},
                    {"threads", [&](const std::string& v) { husimi_threads = std::stoi(v); }},
                };
                apply_config(husimi_cmd, husimi_config, setters);
            }
            if (husimi.output_path.empty())
                throw std::invalid_argument("missing output path (--out)");
            auto kind = esq::protocols::kind_from_name(husimi_protocol);
            if (!kind) throw std::invalid_argument("unknown protocol: " + husimi_protocol);
            husimi.kind = *kind;
            std::stringstream ss(husimi_grid_spec);
            std::string a, b;
            if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':'))
                throw std::invalid_argument("--grid expects n_theta:n_phi");
            husimi.n_theta = std::stoi(a);
            husimi.n_phi = std::stoi(b);
#ifdef _OPENMP
            if (husimi_threads > 0) omp_set_num_threads(husimi_threads);
#endif
            esq::scan::cmd_husimi(husimi);
        } else if (verify_cmd->parsed()) {
#ifdef _OPENMP
            if (verify_threads > 0) omp_set_num_threads(verify_threads);
#endif
            return esq::scan::cmd_verify(verify, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
