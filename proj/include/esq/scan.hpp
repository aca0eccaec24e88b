// Scan engines behind the CLI: mu scans, phase fringes, decoherence curves,
// Husimi grids and the self-check suite. Grid points are evaluated by a
// parallel worker pool with each point computed entirely on one thread, and
// rows are written in grid order, so output bytes do not depend on the thread
// count.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "esq/decoherence.hpp"
#include "esq/protocols.hpp"

namespace esq::scan {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    std::vector<double> points() const;
    void validate() const;
};

struct ScanConfig {
    std::vector<int> n_atoms;
    GridSpec mu_grid;
    GridSpec phi_grid;
    std::vector<protocols::Kind> kinds;
    double detection_noise = 0.0;
    std::optional<decoherence::DecoherenceParams> decoherence;
    std::vector<int> n_collided = {0, 1, 2, 4, 8};
    std::string output_path;
    long seed = 0;  // reserved; every computation here is deterministic
    int numeric_cutoff = 512;
};

/// One row per (N, protocol, mu): analytic/numeric sensitivity, QCR bound,
/// PMF/NAF and the Heisenberg/SQL reference lines, plus figure-normalized
/// companion columns. The numeric column is left empty above numeric_cutoff.
void cmd_scan_mu(const ScanConfig& cfg);

/// Signal and noise versus phi per (N, protocol, mu); for the symmetric
/// protocols two extra rows mark the hopping points +-pi/(2M).
void cmd_fringe(const ScanConfig& cfg);

/// Decoherence curves over the mu grid: max tolerable collision count with
/// its 2/mu^2 asymptote, collision contrast per n_collided, and the
/// cavity/spontaneous factors when parameters are given.
void cmd_decoherence(const ScanConfig& cfg);

struct HusimiConfig {
    int n_atoms = 20;
    protocols::Kind kind = protocols::Kind::GespE;
    double mu = 0.0;
    double phi = 0.0;
    std::string stage = "final";  // initial | post-squeeze | post-phase | final
    int n_theta = 128;
    int n_phi = 128;
    std::string output_path;
};

/// Q(theta, phi) after the requested protocol stage, long-format rows
/// theta,phi,q in row-major grid order.
void cmd_husimi(const HusimiConfig& cfg);

struct VerifyOptions {
    std::string only;  // empty = all; else one of the suite names below
};

/// Invariant suites with measured residuals: "reductions", "oracle", "qcr",
/// "collisions". Returns 0 when everything passes, 1 otherwise.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

}  // namespace esq::scan
