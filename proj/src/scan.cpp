#include "esq/scan.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "esq/analytics.hpp"
#include "esq/csv.hpp"
#include "esq/rotation.hpp"

namespace esq::scan {

namespace {

constexpr double kPi = std::numbers::pi;

using analytics::GespVersion;
using protocols::Form;
using protocols::Kind;

double effective_mu(Kind kind, double mu) {
    return (kind == Kind::ScspE || kind == Kind::ScspO) ? kPi / 2.0 : mu;
}

bool is_gesp(Kind kind) { return kind == Kind::GespE || kind == Kind::GespO; }

std::optional<double> analytic_sensitivity(Kind kind, int n, double mu) {
    switch (kind) {
        case Kind::Cesp: return analytics::cesp_sensitivity(n, mu);
        case Kind::GespE:
        case Kind::ScspE: return analytics::gesp_sensitivity(n, mu, GespVersion::E);
        default: return analytics::gesp_sensitivity(n, mu, GespVersion::O);
    }
}

double bound_for(Kind kind, int n, double mu) {
    const GespVersion v =
        (kind == Kind::GespE || kind == Kind::ScspE) ? GespVersion::E : GespVersion::O;
    return analytics::qcr_bound(n, mu, v);
}

analytics::PmfNaf pmf_for(Kind kind, int n, double mu) {
    if (is_gesp(kind)) return analytics::pmf_naf(n, mu, analytics::PmfProtocol::GespPlateau);
    if (kind == Kind::Cesp) return analytics::pmf_naf(n, mu, analytics::PmfProtocol::CespOptimum);
    const bool matched = (kind == Kind::ScspE) == (n % 2 == 0);
    return analytics::pmf_naf(n, mu,
                              matched ? analytics::PmfProtocol::ScspMatched
                                      : analytics::PmfProtocol::ScspCrossed);
}

void prewarm_rotation_cache(const std::vector<int>& ns) {
    for (int n : ns) dicke::x_eigensystem(n);
}

}  // namespace

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    for (int i = 0; i < count; ++i) out[i] = start + (stop - start) * i / (count - 1);
    return out;
}

void GridSpec::validate() const {
    if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
    if (stop < start) throw std::invalid_argument("grid: stop must be >= start");
}

void cmd_scan_mu(const ScanConfig& cfg) {
    if (cfg.n_atoms.empty() || cfg.kinds.empty())
        throw std::invalid_argument("scan-mu: need at least one N and one protocol");
    const std::vector<double> mus = cfg.mu_grid.points();

    struct Row {
        int n;
        Kind kind;
        double mu;
        std::optional<double> analytic, numeric;
        double qcr, pmf, naf, sens_dn;
        std::optional<double> in_plateau;
    };
    std::vector<Row> rows;
    for (int n : cfg.n_atoms)
        for (Kind kind : cfg.kinds)
            for (double mu : mus) rows.push_back({n, kind, mu, {}, {}, 0, 0, 0, 0, {}});

    std::vector<int> sim_ns;
    for (int n : cfg.n_atoms)
        if (n <= cfg.numeric_cutoff) sim_ns.push_back(n);
    prewarm_rotation_cache(sim_ns);

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(rows.size()); ++i) {
        Row& r = rows[i];
        const double mu = effective_mu(r.kind, r.mu);
        r.analytic = analytic_sensitivity(r.kind, r.n, mu);
        r.qcr = bound_for(r.kind, r.n, mu);
        const analytics::PmfNaf pn = pmf_for(r.kind, r.n, mu);
        r.pmf = pn.m;
        r.naf = pn.a;
        // Fringe-model sensitivity with detection noise folded in: maximum
        // gradient S*M over the quadrature sum of the operating-point QPN
        // A*sqrt(S/2) and the detection noise.
        const double s_spin = 0.5 * r.n;
        const double qpn = pn.a * std::sqrt(s_spin / 2.0);
        r.sens_dn = s_spin * pn.m /
                    std::sqrt(qpn * qpn + cfg.detection_noise * cfg.detection_noise);
        if (is_gesp(r.kind)) r.in_plateau = pn.outside_plateau ? 0.0 : 1.0;
        if (r.n <= cfg.numeric_cutoff) {
            const auto spec = protocols::build_protocol(r.kind, Form::Simplified, mu);
            r.numeric = protocols::numeric_sensitivity(spec, r.n);
        }
    }

    csv::Writer w(cfg.output_path);
    w.row({"n", "protocol", "mu", "sensitivity_analytic", "sensitivity_numeric", "qcr_bound",
           "pmf", "naf", "sensitivity_dn", "in_plateau", "heisenberg_limit", "sql",
           "sensitivity_over_n", "pmf_over_n", "naf_over_sqrt_n"});
    for (const Row& r : rows) {
        const double mu = effective_mu(r.kind, r.mu);
        std::optional<double> sens_over_n;
        if (r.analytic) sens_over_n = *r.analytic / r.n;
        w.row({csv::Writer::cell(r.n), protocols::kind_name(r.kind), csv::Writer::cell(mu),
               csv::Writer::cell(r.analytic), csv::Writer::cell(r.numeric),
               csv::Writer::cell(r.qcr), csv::Writer::cell(r.pmf), csv::Writer::cell(r.naf),
               csv::Writer::cell(r.sens_dn), csv::Writer::cell(r.in_plateau),
               csv::Writer::cell(double(r.n)), csv::Writer::cell(std::sqrt(double(r.n))),
               csv::Writer::cell(sens_over_n), csv::Writer::cell(r.pmf / r.n),
               csv::Writer::cell(r.naf / std::sqrt(double(r.n)))});
    }
    w.flush_or_throw();
}

void cmd_fringe(const ScanConfig& cfg) {
    if (cfg.n_atoms.empty() || cfg.kinds.empty())
        throw std::invalid_argument("fringe: need at least one N and one protocol");
    const std::vector<double> mus = cfg.mu_grid.points();
    const std::vector<double> phis = cfg.phi_grid.points();

    struct Row {
        int n;
        Kind kind;
        double mu, phi;
        int hop;
        double signal = 0.0, noise = 0.0;
    };
    std::vector<Row> rows;
    for (int n : cfg.n_atoms)
        for (Kind kind : cfg.kinds)
            for (double mu_raw : mus) {
                const double mu = effective_mu(kind, mu_raw);
                for (double phi : phis) rows.push_back({n, kind, mu, phi, 0});
                if (is_gesp(kind) && mu > 0.0) {
                    const double hop = analytics::hopping_operating_point(n, mu);
                    rows.push_back({n, kind, mu, -hop, 1});
                    rows.push_back({n, kind, mu, hop, 1});
                }
            }

    prewarm_rotation_cache(cfg.n_atoms);

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(rows.size()); ++i) {
        Row& r = rows[i];
        const auto spec = protocols::build_protocol(r.kind, Form::Simplified, r.mu);
        const dicke::DickeState state = protocols::run(spec, r.n, r.phi);
        const auto op = spec.measure_axis() == dicke::Axis::Y ? dicke::OperatorKind::Sy
                                                              : dicke::OperatorKind::Sx;
        r.signal = dicke::expectation(state, op).real();
        r.noise = std::sqrt(dicke::variance(state, op));
    }

    csv::Writer w(cfg.output_path);
    w.row({"n", "protocol", "mu", "phi", "signal", "noise", "hop_point"});
    for (const Row& r : rows)
        w.row({csv::Writer::cell(r.n), protocols::kind_name(r.kind), csv::Writer::cell(r.mu),
               csv::Writer::cell(r.phi), csv::Writer::cell(r.signal), csv::Writer::cell(r.noise),
               csv::Writer::cell(r.hop)});
    w.flush_or_throw();
}

void cmd_decoherence(const ScanConfig& cfg) {
    if (cfg.n_atoms.empty()) throw std::invalid_argument("decoherence: need an atom count");
    const int n = cfg.n_atoms.front();
    const std::vector<double> mus = cfg.mu_grid.points();

    csv::Writer w(cfg.output_path);
    w.row({"kind", "mu", "n_collided", "max_tolerable", "asymptote", "contrast", "cavity_factor",
           "spont_factor", "net_factor", "mu_bound", "within_mu_bound"});

    const std::string none;
    for (double mu : mus) {
        const double tol = decoherence::max_tolerable_collisions(std::min(mu, kPi / 2.0));
        const double asym = mu > 0.0 ? 2.0 / (mu * mu) : std::numeric_limits<double>::infinity();
        w.row({"tolerable", csv::Writer::cell(mu), none, csv::Writer::cell(tol),
               csv::Writer::cell(asym), none, none, none, none, none, none});
    }

    for (double mu : mus)
        for (int nc : cfg.n_collided) {
            if (nc > n) continue;
            const decoherence::CollisionScenario scn{n, nc, mu};
            const double surviving_spin = 0.5 * (n - nc);
            const double contrast =
                nc == n ? 0.0 : decoherence::collision_signal(scn) / surviving_spin;
            w.row({"contrast", csv::Writer::cell(mu), csv::Writer::cell(nc), none, none,
                   csv::Writer::cell(contrast), none, none, none, none, none});
        }

    if (cfg.decoherence) {
        const decoherence::DecoherenceParams& params = *cfg.decoherence;
        for (double mu : mus) {
            const double cavity = decoherence::cavity_signal_factor(mu, params);
            const auto budget = decoherence::spontaneous_budget(mu, params, n);
            const double alpha = params.resolve_alpha(mu, n);
            const double spont = std::exp(-2.0 * mu * alpha * budget.gamma_eff);
            w.row({"factors", csv::Writer::cell(mu), none, none, none, none,
                   csv::Writer::cell(cavity), csv::Writer::cell(spont),
                   csv::Writer::cell(budget.net_factor), csv::Writer::cell(budget.mu_bound),
                   csv::Writer::cell(mu <= budget.mu_bound ? 1.0 : 0.0)});
        }
    }
    w.flush_or_throw();
}

void cmd_husimi(const HusimiConfig& cfg) {
    const auto spec = protocols::build_protocol(cfg.kind, Form::Simplified, cfg.mu);
    size_t steps = 0;
    if (cfg.stage == "initial")
        steps = 0;
    else if (cfg.stage == "post-squeeze")
        steps = 1;
    else if (cfg.stage == "post-phase")
        steps = 2;
    else if (cfg.stage == "final")
        steps = 3;
    else
        throw std::invalid_argument("husimi: unknown stage: " + cfg.stage);

    dicke::DickeState state = dicke::make_css(cfg.n_atoms, kPi / 2.0, 0.0);
    for (size_t i = 0; i < steps; ++i) {
        const protocols::Step& step = spec.steps[i];
        if (step.type == protocols::Step::Type::Squeeze)
            state = dicke::apply_oats(state, -step.sign * step.mu);
        else if (step.type == protocols::Step::Type::PhaseRotation)
            state = dicke::apply_rotation(state, step.axis, step.scale * cfg.phi);
    }

    const dicke::HusimiGrid grid = dicke::husimi_grid(state, cfg.n_theta, cfg.n_phi);
    csv::Writer w(cfg.output_path);
    w.row({"theta", "phi", "q"});
    for (int i = 0; i < grid.n_theta; ++i)
        for (int j = 0; j < grid.n_phi; ++j)
            w.row({csv::Writer::cell(grid.theta[i]), csv::Writer::cell(grid.phi[j]),
                   csv::Writer::cell(grid.at(i, j))});
    w.flush_or_throw();
}

namespace {

struct VerifyRow {
    std::string label;
    double worst = 0.0;
    double limit = 0.0;
    std::string at;
    bool pass() const { return worst < limit; }
};

// Clock/LPAI reduction residuals per protocol kind, N <= 64 on a 5x5 grid.
std::vector<VerifyRow> suite_reductions() {
    std::vector<VerifyRow> rows;
    for (Kind kind : {Kind::GespE, Kind::GespO, Kind::Cesp, Kind::ScspE, Kind::ScspO}) {
        VerifyRow row{std::string("reduction ") + protocols::kind_name(kind), 0.0, 1e-9, ""};
        for (int n : {6, 7, 16, 33, 64})
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double mu = kPi / 2.0 * i / 4.0;
                    const double phi = -0.4 + 0.2 * j;
                    const double r = protocols::verify_reduction(kind, n, mu, phi).max();
                    if (r > row.worst) {
                        row.worst = r;
                        std::ostringstream os;
                        os << "N=" << n << " mu=" << mu << " phi=" << phi;
                        row.at = os.str();
                    }
                }
        rows.push_back(row);
    }
    return rows;
}

// Closed-form sensitivities against the finite-difference oracle.
std::vector<VerifyRow> suite_oracle() {
    std::vector<VerifyRow> rows;
    for (GespVersion v : {GespVersion::E, GespVersion::O}) {
        const Kind kind = v == GespVersion::E ? Kind::GespE : Kind::GespO;
        VerifyRow row{std::string("oracle ") + protocols::kind_name(kind), 0.0, 1e-6, ""};
        for (int n = 4; n <= 24; ++n)
            for (int k = 1; k <= 15; ++k) {
                const double mu = 0.1 * k;
                const auto analytic = analytics::gesp_sensitivity(n, mu, v);
                const auto numeric = protocols::numeric_sensitivity(
                    protocols::build_protocol(kind, Form::Simplified, mu), n);
                if (!analytic || !numeric) continue;
                const double rel = std::abs(*analytic - *numeric) / *numeric;
                if (rel > row.worst) {
                    std::ostringstream os;
                    os << "N=" << n << " mu=" << mu;
                    row.worst = rel;
                    row.at = os.str();
                }
            }
        rows.push_back(row);
    }
    VerifyRow cesp{"oracle cesp", 0.0, 1e-6, ""};
    for (int n : {10, 20, 40})
        for (double mu : {0.05, 0.1, 0.2}) {
            const double closed = analytics::cesp_sensitivity(n, mu);
            const auto numeric = protocols::numeric_sensitivity(
                protocols::build_protocol(Kind::Cesp, Form::Simplified, mu), n);
            if (!numeric) continue;
            const double rel = std::abs(closed - *numeric) / closed;
            if (rel > cesp.worst) {
                std::ostringstream os;
                os << "N=" << n << " mu=" << mu;
                cesp.worst = rel;
                cesp.at = os.str();
            }
        }
    rows.push_back(cesp);
    return rows;
}

// Sensitivities never exceed their quantum Cramer-Rao bounds.
std::vector<VerifyRow> suite_qcr() {
    std::vector<VerifyRow> rows = {
        {"qcr gesp-e", -1.0, 1e-9, ""}, {"qcr gesp-o", -1.0, 1e-9, ""}, {"qcr cesp", -1.0, 1e-9, ""}};
    for (int n : {10, 11, 100, 101})
        for (int i = 0; i < 100; ++i) {
            const double mu = kPi / 200.0 + (kPi / 2.0 - kPi / 200.0) * i / 99.0;
            const std::optional<double> sens[3] = {
                analytics::gesp_sensitivity(n, mu, GespVersion::E),
                analytics::gesp_sensitivity(n, mu, GespVersion::O),
                analytics::cesp_sensitivity(n, mu)};
            const double bounds[3] = {analytics::qcr_bound(n, mu, GespVersion::E),
                                      analytics::qcr_bound(n, mu, GespVersion::O),
                                      analytics::qcr_bound(n, mu, GespVersion::O)};
            for (int c = 0; c < 3; ++c) {
                if (!sens[c] || bounds[c] <= 0.0) continue;
                const double excess = *sens[c] / bounds[c] - 1.0;
                if (excess > rows[c].worst) {
                    std::ostringstream os;
                    os << "N=" << n << " mu=" << mu;
                    rows[c].worst = excess;
                    rows[c].at = os.str();
                }
            }
        }
    return rows;
}

// Collision ejection closed form against the two-ensemble oracle.
std::vector<VerifyRow> suite_collisions() {
    std::vector<VerifyRow> rows;
    for (double mu : {0.2, 0.5, 1.0, kPi / 2.0}) {
        std::ostringstream label;
        label << "collisions mu=" << mu;
        VerifyRow row{label.str(), 0.0, 1e-10, ""};
        for (int n = 1; n <= 14; ++n)
            for (int nc = 0; nc <= n; ++nc) {
                const decoherence::CollisionScenario scn{n, nc, mu};
                const double diff = std::abs(decoherence::collision_signal(scn) -
                                             decoherence::collision_oracle(scn));
                if (diff > row.worst) {
                    std::ostringstream os;
                    os << "N=" << n << " collided=" << nc;
                    row.worst = diff;
                    row.at = os.str();
                }
            }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    std::vector<VerifyRow> rows;
    auto want = [&](const char* name) { return opt.only.empty() || opt.only == name; };
    auto append = [&](std::vector<VerifyRow> suite) {
        for (auto& r : suite) rows.push_back(std::move(r));
    };
    if (want("reductions")) append(suite_reductions());
    if (want("oracle")) append(suite_oracle());
    if (want("qcr")) append(suite_qcr());
    if (want("collisions")) append(suite_collisions());
    if (rows.empty()) {
        out << "verify: unknown suite '" << opt.only
            << "' (choose reductions, oracle, qcr or collisions)\n";
        return 1;
    }

    bool all_pass = true;
    for (const VerifyRow& r : rows) {
        out << std::left << std::setw(24) << r.label << (r.pass() ? "PASS" : "FAIL") << "  worst "
            << std::scientific << std::setprecision(3) << r.worst << " (limit " << r.limit << ")";
        if (!r.at.empty()) out << "  at " << r.at;
        out << "\n";
        all_pass = all_pass && r.pass();
    }
    out << (all_pass ? "all invariants pass\n" : "INVARIANT FAILURES PRESENT\n");
    return all_pass ? 0 : 1;
}

}  // namespace esq::scan
