// End-to-end acceptance suite: one pass/fail line per criterion, each pinned
// to a fixed tolerance. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "esq/analytics.hpp"
#include "esq/decoherence.hpp"
#include "esq/dicke.hpp"
#include "esq/protocols.hpp"
#include "esq/scan.hpp"

using namespace esq;
using analytics::GespVersion;
using protocols::Form;
using protocols::Kind;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Criterion> results;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    results.push_back({id, name, pass, detail});
    std::printf("[%2d] %-28s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double simulated_signal(Kind kind, int n, double mu, double phi) {
    return protocols::signal(protocols::build_protocol(kind, Form::Simplified, mu), n, phi);
}

double simulated_noise(Kind kind, int n, double mu, double phi) {
    return protocols::noise(protocols::build_protocol(kind, Form::Simplified, mu), n, phi);
}

// 1. Analytic sensitivity against the brute-force oracle over the full
//    (N, mu) grid, both versions, 1e-6 relative, under a minute.
void criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string where;
    for (int n = 4; n <= 24; ++n)
        for (int k = 1; k <= 15; ++k) {
            const double mu = 0.1 * k;
            for (GespVersion v : {GespVersion::E, GespVersion::O}) {
                const Kind kind = v == GespVersion::E ? Kind::GespE : Kind::GespO;
                const auto analytic = analytics::gesp_sensitivity(n, mu, v);
                const auto numeric = protocols::numeric_sensitivity(
                    protocols::build_protocol(kind, Form::Simplified, mu), n);
                if (!analytic || !numeric) {
                    report(1, "oracle-equivalence", false,
                           "undefined value at N=" + std::to_string(n) + " mu=" + fmt(mu));
                    return;
                }
                const double rel = std::abs(*analytic - *numeric) / *numeric;
                if (rel > worst) {
                    worst = rel;
                    where = protocols::kind_name(kind);
                    where += " N=" + std::to_string(n) + " mu=" + fmt(mu);
                }
            }
        }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst < 1e-6 && seconds < 60.0;
    report(1, "oracle-equivalence", pass,
           "max rel " + fmt(worst) + " at " + where + ", " + fmt(seconds) + " s (limits 1e-6, 60 s)");
}

// 2. Plateau value N/sqrt(2) within 5% on a 50-point grid, N = 1000.
void criterion_plateau() {
    const auto p = analytics::plateau(1000);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double mu = p.mu_lo + (p.mu_hi - p.mu_lo) * i / 49.0;
        for (GespVersion v : {GespVersion::E, GespVersion::O}) {
            const auto sens = analytics::gesp_sensitivity(1000, mu, v);
            worst = std::max(worst, std::abs(*sens - p.value) / p.value);
        }
    }
    report(2, "plateau-value", worst < 0.05, "max rel dev " + fmt(worst) + " (limit 0.05)");
}

// 3. Heisenberg endpoints at mu = pi/2 and the parity-crossed fall to SQL.
void criterion_heisenberg_endpoints() {
    const double e100 = *analytics::gesp_sensitivity(100, kPi / 2.0, GespVersion::E);
    const double o101 = *analytics::gesp_sensitivity(101, kPi / 2.0, GespVersion::O);
    const double o100 = *analytics::gesp_sensitivity(100, kPi / 2.0, GespVersion::O);
    const double e101 = *analytics::gesp_sensitivity(101, kPi / 2.0, GespVersion::E);
    const bool pass = std::abs(e100 - 100.0) / 100.0 < 1e-6 &&
                      std::abs(o101 - 101.0) / 101.0 < 1e-6 && o100 <= 1.05 * 10.0 &&
                      e101 <= 1.05 * std::sqrt(101.0);
    report(3, "heisenberg-endpoints", pass,
           "matched " + fmt(e100) + "/" + fmt(o101) + ", crossed " + fmt(o100) + "/" + fmt(e101));
}

// 4. CESP closed form against the oracle, peak location and enhancement.
void criterion_cesp() {
    double worst = 0.0;
    for (int n = 4; n <= 40; ++n)
        for (double mu : {0.05, 0.1, 0.2}) {
            const double closed = analytics::cesp_sensitivity(n, mu);
            const auto numeric = protocols::numeric_sensitivity(
                protocols::build_protocol(Kind::Cesp, Form::Simplified, mu), n);
            worst = std::max(worst, std::abs(closed - *numeric) / closed);
        }

    bool peak_ok = true;
    for (int n : {20, 40, 400}) {
        const int grid_points = 2000;
        const double mu_max = 0.8;
        int best = 0;
        double best_v = -1.0;
        for (int i = 1; i <= grid_points; ++i) {
            const double v = analytics::cesp_sensitivity(n, mu_max * i / grid_points);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        const double mu_peak = mu_max * best / grid_points;
        const double mu_star = std::atan(1.0 / std::sqrt(n - 2.0));
        peak_ok = peak_ok && std::abs(mu_peak - mu_star) <= mu_max / grid_points + 1e-15;
    }

    double best_v = -1.0;
    for (int i = 1; i <= 4000; ++i) {
        const double v = analytics::cesp_sensitivity(400, 0.4 * i / 4000);
        best_v = std::max(best_v, v);
    }
    const double enhancement = best_v / std::sqrt(400.0);
    const double target = std::sqrt(400.0 / std::numbers::e);
    const double enh_rel = std::abs(enhancement - target) / target;

    const bool pass = worst < 1e-8 && peak_ok && enh_rel < 0.03;
    report(4, "cesp-closed-form", pass,
           "oracle rel " + fmt(worst) + ", peak " + (peak_ok ? "on-grid" : "off") +
               ", enhancement dev " + fmt(enh_rel) + " (limits 1e-8, 1 step, 0.03)");
}

// 5. QCR dominance on a 100-point grid plus the near-bound plateau property.
void criterion_qcr() {
    double worst_excess = -1.0;
    double worst_plateau_ratio = 2.0;
    for (int n : {100, 101}) {
        const auto p = analytics::plateau(n);
        for (int i = 0; i < 100; ++i) {
            const double mu = kPi / 200.0 + (kPi / 2.0 - kPi / 200.0) * i / 99.0;
            const double be = analytics::qcr_bound(n, mu, GespVersion::E);
            const double bo = analytics::qcr_bound(n, mu, GespVersion::O);
            const auto se = analytics::gesp_sensitivity(n, mu, GespVersion::E);
            const auto so = analytics::gesp_sensitivity(n, mu, GespVersion::O);
            const double sc = analytics::cesp_sensitivity(n, mu);
            if (se && be > 0.0) worst_excess = std::max(worst_excess, *se / be - 1.0);
            if (so && bo > 0.0) worst_excess = std::max(worst_excess, *so / bo - 1.0);
            if (bo > 0.0) worst_excess = std::max(worst_excess, sc / bo - 1.0);
            if (mu >= p.mu_lo && mu <= p.mu_hi) {
                if (se) worst_plateau_ratio = std::min(worst_plateau_ratio, *se / be);
                if (so) worst_plateau_ratio = std::min(worst_plateau_ratio, *so / bo);
            }
        }
    }
    const bool pass = worst_excess <= 1e-9 && worst_plateau_ratio >= 0.9;
    report(5, "qcr-dominance", pass,
           "max excess " + fmt(worst_excess) + ", min plateau sens/bound " +
               fmt(worst_plateau_ratio) + " (limits 1e-9, 0.9)");
}

// 6. SCSP fringe closed forms and CESP fringe parity independence.
void criterion_fringes() {
    double worst_scsp = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double phi = -0.3 + 0.6 * i / 60.0;
        struct Case {
            Kind kind;
            int n;
            bool matched;
        };
        const Case cases[] = {{Kind::ScspE, 20, true},
                              {Kind::ScspO, 20, false},
                              {Kind::ScspO, 21, true},
                              {Kind::ScspE, 21, false}};
        for (const Case& c : cases) {
            const double s = 0.5 * c.n;
            const double sim = simulated_signal(c.kind, c.n, kPi / 2.0, phi);
            const double closed = analytics::scsp_fringe(c.n, c.matched, phi).signal;
            worst_scsp = std::max(worst_scsp, std::abs(sim - closed) / s);
        }
    }

    const double m = std::sqrt(100.0 / std::numbers::e);
    double worst_cesp = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double phi = -kPi / (2.0 * m) + kPi / m * i / 20.0;
        const double mu100 = std::atan(1.0 / std::sqrt(98.0));
        const double mu101 = std::atan(1.0 / std::sqrt(99.0));
        const double f100 = simulated_signal(Kind::Cesp, 100, mu100, phi) / 50.0;
        const double f101 = simulated_signal(Kind::Cesp, 101, mu101, phi) / 50.5;
        worst_cesp = std::max(worst_cesp, std::abs(f100 - f101));
    }

    const bool pass = worst_scsp < 1e-8 && worst_cesp < 0.02;
    report(6, "fringe-forms", pass,
           "scsp dev " + fmt(worst_scsp) + ", cesp parity dev " + fmt(worst_cesp) +
               " (limits 1e-8, 0.02)");
}

// 7. PMF/NAF fits over the central fringe at N=100, mu=pi/4, and the exact
//    M/A = sqrt(S) ratio across the plateau.
void criterion_pmf_naf() {
    const int n = 100;
    const double s = 50.0, mu = kPi / 4.0;
    const double m_expected = std::sqrt(2.0) * s * std::sin(mu);
    const double a_expected = std::sqrt(2.0 * s) * std::sin(mu);
    const double phi_op = analytics::hopping_operating_point(n, mu);

    double worst_m = 0.0, worst_a = 0.0;
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        const double phi = frac * phi_op;
        const double sig = simulated_signal(Kind::GespE, n, mu, phi);
        const double noi = simulated_noise(Kind::GespE, n, mu, phi);
        const double m_fit = std::acos(std::clamp(sig / s, -1.0, 1.0)) / phi;
        const double a_fit = noi / (std::sqrt(s / 2.0) * std::abs(std::sin(m_fit * phi)));
        worst_m = std::max(worst_m, std::abs(m_fit - m_expected) / m_expected);
        worst_a = std::max(worst_a, std::abs(a_fit - a_expected) / a_expected);
    }

    const auto p = analytics::plateau(n);
    double worst_ratio = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double mu_i = p.mu_lo + (p.mu_hi - p.mu_lo) * i / 39.0;
        const auto pn = analytics::pmf_naf(n, mu_i, analytics::PmfProtocol::GespPlateau);
        worst_ratio = std::max(worst_ratio, std::abs(pn.m / pn.a - std::sqrt(s)) / std::sqrt(s));
    }

    const bool pass = worst_m < 0.03 && worst_a < 0.03 && worst_ratio < 0.01;
    report(7, "pmf-naf", pass,
           "M dev " + fmt(worst_m) + ", A dev " + fmt(worst_a) + ", M/A dev " + fmt(worst_ratio) +
               " (limits 0.03, 0.03, 0.01)");
}

// 8. Detection-noise robustness: the simulated assembly at phi = pi/(2M)
//    against the closed hopping-point formula, plus the exact sqrt(2)
//    degradation when the detection noise equals the operating-point QPN.
void criterion_detection_noise() {
    const int n = 200;
    const double s = 100.0;
    double worst_formula = 0.0;
    std::string where;
    double worst_degradation = 0.0;

    for (double mu : {0.5, 1.0}) {
        const double phi_op = analytics::hopping_operating_point(n, mu);
        const double h = phi_op * 1e-3;
        const double grad =
            std::abs(simulated_signal(Kind::GespE, n, mu, phi_op + h) -
                     simulated_signal(Kind::GespE, n, mu, phi_op - h)) /
            (2.0 * h);
        const double qpn = simulated_noise(Kind::GespE, n, mu, phi_op);
        for (double dn : {0.0, 0.5 * s * std::sin(mu), s * std::sin(mu)}) {
            const double assembled = grad / std::sqrt(qpn * qpn + dn * dn);
            const double closed = analytics::sensitivity_with_detection_noise(n, mu, dn);
            const double rel = std::abs(assembled - closed) / closed;
            if (rel > worst_formula) {
                worst_formula = rel;
                where = "mu=" + fmt(mu) + " dn=" + fmt(dn);
            }
        }
        const double base = grad / qpn;
        const double degraded = grad / std::sqrt(2.0 * qpn * qpn);
        worst_degradation =
            std::max(worst_degradation, std::abs(base / degraded - std::sqrt(2.0)) / std::sqrt(2.0));
    }

    // Control point: the same assembly where the cosine-fringe forms are
    // exact (cos 2mu = 0). Documents that the procedure itself is sound.
    const double mu_c = kPi / 4.0;
    const double phi_c = analytics::hopping_operating_point(n, mu_c);
    const double hc = phi_c * 1e-3;
    const double grad_c = std::abs(simulated_signal(Kind::GespE, n, mu_c, phi_c + hc) -
                                   simulated_signal(Kind::GespE, n, mu_c, phi_c - hc)) /
                          (2.0 * hc);
    const double qpn_c = simulated_noise(Kind::GespE, n, mu_c, phi_c);
    const double control_rel =
        std::abs(grad_c / qpn_c - analytics::sensitivity_with_detection_noise(n, mu_c, 0.0)) /
        analytics::sensitivity_with_detection_noise(n, mu_c, 0.0);

    const bool pass = worst_formula < 0.02 && worst_degradation < 0.01;
    report(8, "detection-noise", pass,
           "assembly dev " + fmt(worst_formula) + " at " + where + ", sqrt2 degradation dev " +
               fmt(worst_degradation) + ", mu=pi/4 control dev " + fmt(control_rel) +
               " (limits 0.02, 0.01)");
}

// 9. Collision ejection model: closed form vs two-ensemble oracle, and the
//    tolerable-collision count with its small-mu asymptote.
void criterion_collisions() {
    double worst = 0.0;
    for (int n = 1; n <= 14; ++n)
        for (int nc = 0; nc <= n; ++nc)
            for (double mu : {0.2, 0.5, 1.0, kPi / 2.0}) {
                const decoherence::CollisionScenario scn{n, nc, mu};
                worst = std::max(worst, std::abs(decoherence::collision_signal(scn) -
                                                 decoherence::collision_oracle(scn)));
            }
    const double tol = decoherence::max_tolerable_collisions(0.1);
    const double exact = -1.0 / std::log(std::cos(0.1));
    const double asym_rel = std::abs(tol / (2.0 / 0.01) - 1.0);
    const bool pass = worst < 1e-10 && tol == exact && asym_rel < 0.01;
    report(9, "collision-model", pass,
           "oracle dev " + fmt(worst) + ", tolerable(0.1)=" + fmt(tol) + ", asymptote dev " +
               fmt(asym_rel) + " (limits 1e-10, exact, 0.01)");
}

// 10. Clock and LPAI forms reduce to the simplified form, all kinds.
void criterion_reductions() {
    double worst = 0.0;
    std::string where;
    for (int n = 4; n <= 64; n += 3)
        for (Kind kind : {Kind::GespE, Kind::GespO, Kind::Cesp, Kind::ScspE, Kind::ScspO})
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double mu = kPi / 2.0 * i / 4.0;
                    const double phi = -0.4 + 0.2 * j;
                    const double r = protocols::verify_reduction(kind, n, mu, phi).max();
                    if (r > worst) {
                        worst = r;
                        where = std::string(protocols::kind_name(kind)) + " N=" +
                                std::to_string(n);
                    }
                }
    report(10, "protocol-reductions", worst < 1e-9,
           "max residual " + fmt(worst) + " at " + where + " (limit 1e-9)");
}

// 11. Cat orientation parity law up to N = 61.
void criterion_cat_orientation() {
    bool pass = true;
    for (int n = 2; n <= 61; ++n) {
        const dicke::Axis expected = n % 2 == 0 ? dicke::Axis::X : dicke::Axis::Y;
        if (protocols::cat_orientation(n) != expected) pass = false;
    }
    report(11, "cat-orientation-parity", pass, "N = 2..61 (even -> x, odd -> y)");
}

// 12. Byte-identical scan output across repeated runs.
void criterion_determinism() {
    auto run_once = [](const std::string& path) {
        scan::ScanConfig cfg;
        cfg.n_atoms = {24, 25};
        cfg.kinds = {Kind::GespE, Kind::GespO, Kind::Cesp};
        cfg.mu_grid = {0.05, kPi / 2.0, 40};
        cfg.output_path = path;
        scan::cmd_scan_mu(cfg);
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = run_once("/tmp/esq_acceptance_scan_a.csv");
    const std::string b = run_once("/tmp/esq_acceptance_scan_b.csv");
    std::remove("/tmp/esq_acceptance_scan_a.csv");
    std::remove("/tmp/esq_acceptance_scan_b.csv");
    const bool pass = !a.empty() && a == b;
    report(12, "scan-determinism", pass,
           pass ? std::to_string(a.size()) + " bytes identical" : "outputs differ");
}

}  // namespace

int main() {
    criterion_oracle_equivalence();
    criterion_plateau();
    criterion_heisenberg_endpoints();
    criterion_cesp();
    criterion_qcr();
    criterion_fringes();
    criterion_pmf_naf();
    criterion_detection_noise();
    criterion_collisions();
    criterion_reductions();
    criterion_cat_orientation();
    criterion_determinism();

    int failed = 0;
    for (const Criterion& c : results)
        if (!c.pass) ++failed;
    std::printf("\n%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
