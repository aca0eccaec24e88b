#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "esq/csv.hpp"
#include "esq/scan.hpp"

using namespace esq;
using protocols::Kind;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

double to_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(ec == std::errc{});
    REQUIRE(p == s.data() + s.size());
    return v;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("/tmp/esq_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("grid specs") {
    scan::GridSpec g{0.0, 1.0, 5};
    const auto pts = g.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
    CHECK(pts[2] == doctest::Approx(0.5));
    CHECK_THROWS(scan::GridSpec{1.0, 0.0, 3}.points());
    CHECK_THROWS(scan::GridSpec{0.0, 1.0, 0}.points());
    const auto single = scan::GridSpec{0.7, 0.7, 1}.points();
    CHECK(single == std::vector<double>{0.7});
}

TEST_CASE("csv formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 707.1067811865476, 1e-300, -0.0, 2e17}) {
        const std::string s = csv::format_double(v);
        CHECK(to_double(s) == v);
    }
}

TEST_CASE("scan-mu output") {
    TempPath tmp("scan_mu.csv");
    scan::ScanConfig cfg;
    cfg.n_atoms = {12};
    cfg.kinds = {Kind::GespE, Kind::Cesp};
    cfg.mu_grid = {0.1, 0.9, 8};
    cfg.output_path = tmp.path;
    scan::cmd_scan_mu(cfg);

    const auto rows = parse_csv(slurp(tmp.path));
    REQUIRE(rows.size() == 1 + 2 * 8);
    CHECK(rows[0][0] == "n");
    CHECK(rows[0][3] == "sensitivity_analytic");

    SUBCASE("analytic and numeric columns agree for small N") {
        for (size_t i = 1; i < rows.size(); ++i) {
            const double analytic = to_double(rows[i][3]);
            const double numeric = to_double(rows[i][4]);
            CHECK(std::abs(analytic - numeric) / numeric < 1e-6);
            CHECK(to_double(rows[i][5]) >= analytic * (1.0 - 1e-9));  // QCR bound
        }
    }
    SUBCASE("detection-noise column follows the fringe model") {
        TempPath tmp3("scan_mu_dn.csv");
        scan::ScanConfig noisy = cfg;
        noisy.kinds = {Kind::GespE};
        noisy.detection_noise = 2.0;
        noisy.output_path = tmp3.path;
        scan::cmd_scan_mu(noisy);
        const auto rows3 = parse_csv(slurp(tmp3.path));
        for (size_t i = 1; i < rows3.size(); ++i) {
            const double pmf = to_double(rows3[i][6]);
            const double naf = to_double(rows3[i][7]);
            const double qpn = naf * std::sqrt(6.0 / 2.0);  // A sqrt(S/2), S = 6
            const double expected = 6.0 * pmf / std::sqrt(qpn * qpn + 4.0);
            CHECK(to_double(rows3[i][8]) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("numeric column empty above the cutoff") {
        TempPath tmp2("scan_mu_cutoff.csv");
        scan::ScanConfig big = cfg;
        big.n_atoms = {40};
        big.numeric_cutoff = 20;
        big.output_path = tmp2.path;
        scan::cmd_scan_mu(big);
        const auto rows2 = parse_csv(slurp(tmp2.path));
        for (size_t i = 1; i < rows2.size(); ++i) CHECK(rows2[i][4].empty());
    }
    SUBCASE("byte-identical across repeated runs") {
        const std::string first = slurp(tmp.path);
        scan::cmd_scan_mu(cfg);
        CHECK(slurp(tmp.path) == first);
    }
    SUBCASE("byte-identical across thread counts") {
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        scan::cmd_scan_mu(cfg);
        const std::string serial = slurp(tmp.path);
        omp_set_num_threads(saved > 1 ? saved : 2);
        scan::cmd_scan_mu(cfg);
        CHECK(slurp(tmp.path) == serial);
        omp_set_num_threads(saved);
#endif
    }
}

TEST_CASE("fringe output") {
    TempPath tmp("fringe.csv");
    scan::ScanConfig cfg;
    cfg.n_atoms = {20, 21};
    cfg.kinds = {Kind::ScspE};
    cfg.mu_grid = {0.0, 0.0, 1};
    cfg.phi_grid = {-0.3, 0.3, 21};
    cfg.output_path = tmp.path;
    scan::cmd_fringe(cfg);

    const auto rows = parse_csv(slurp(tmp.path));
    REQUIRE(rows.size() == 1 + 2 * 21);  // SCSP carries no hop rows
    SUBCASE("matched and crossed fringe forms") {
        for (size_t i = 1; i < rows.size(); ++i) {
            const int n = int(to_double(rows[i][0]));
            const double phi = to_double(rows[i][3]);
            const double signal = to_double(rows[i][4]);
            const double s = 0.5 * n;
            const double expected =
                n == 20 ? s * std::cos(n * phi) : s * std::pow(std::cos(phi), n - 1);
            CHECK(std::abs(signal - expected) / s < 1e-8);
        }
    }
    SUBCASE("gesp fringes carry two marked hop rows") {
        TempPath tmp2("fringe_hop.csv");
        scan::ScanConfig g = cfg;
        g.n_atoms = {16};
        g.kinds = {Kind::GespE};
        g.mu_grid = {0.8, 0.8, 1};
        g.phi_grid = {-0.1, 0.1, 5};
        g.output_path = tmp2.path;
        scan::cmd_fringe(g);
        const auto rows2 = parse_csv(slurp(tmp2.path));
        REQUIRE(rows2.size() == 1 + 5 + 2);
        int hops = 0;
        for (size_t i = 1; i < rows2.size(); ++i)
            if (rows2[i][6] == "1") {
                ++hops;
                const double phi = to_double(rows2[i][3]);
                const double expected = kPi / (2.0 * std::sqrt(2.0) * 8.0 * std::sin(0.8));
                CHECK(std::abs(std::abs(phi) - expected) < 1e-12);
            }
        CHECK(hops == 2);
    }
}

TEST_CASE("decoherence output") {
    TempPath tmp("dec.csv");
    scan::ScanConfig cfg;
    cfg.n_atoms = {100};
    cfg.mu_grid = {0.05, 1.5, 10};
    cfg.n_collided = {0, 2};
    decoherence::DecoherenceParams p;
    p.kappa = 1.0;
    p.delta_abs = 10.0;
    p.gamma_sp = 0.04;
    p.g = 1.0;
    cfg.decoherence = p;
    cfg.output_path = tmp.path;
    scan::cmd_decoherence(cfg);

    const auto rows = parse_csv(slurp(tmp.path));
    REQUIRE(rows.size() == 1 + 10 + 2 * 10 + 10);
    int tolerable = 0, contrast_zero = 0, factors = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r[0] == "tolerable") {
            ++tolerable;
            const double mu = to_double(r[1]);
            CHECK(to_double(r[3]) ==
                  doctest::Approx(-1.0 / std::log(std::cos(mu))).epsilon(1e-12));
            CHECK(to_double(r[4]) == doctest::Approx(2.0 / (mu * mu)).epsilon(1e-12));
        } else if (r[0] == "contrast" && r[2] == "0") {
            ++contrast_zero;
            CHECK(to_double(r[5]) == 1.0);
        } else if (r[0] == "factors") {
            ++factors;
            CHECK(to_double(r[6]) <= 1.0);
            CHECK(to_double(r[8]) <= 1.0);
        }
    }
    CHECK(tolerable == 10);
    CHECK(contrast_zero == 10);
    CHECK(factors == 10);
}

TEST_CASE("husimi output") {
    TempPath tmp("husimi.csv");
    scan::HusimiConfig cfg;
    cfg.n_atoms = 16;
    cfg.kind = Kind::GespE;
    cfg.mu = kPi / 2.0;
    cfg.phi = 0.0;
    cfg.n_theta = 16;
    cfg.n_phi = 32;
    cfg.output_path = tmp.path;

    SUBCASE("initial stage is the x-pointing CSS") {
        cfg.stage = "initial";
        scan::cmd_husimi(cfg);
        const auto rows = parse_csv(slurp(tmp.path));
        REQUIRE(rows.size() == 1 + 16 * 32);
        double best = -1.0;
        double best_theta = 0.0, best_phi = 0.0;
        for (size_t i = 1; i < rows.size(); ++i) {
            const double q = to_double(rows[i][2]);
            if (q > best) {
                best = q;
                best_theta = to_double(rows[i][0]);
                best_phi = to_double(rows[i][1]);
            }
        }
        CHECK(best_phi == 0.0);
        CHECK(std::abs(best_theta - kPi / 2.0) < 0.11);
    }
    SUBCASE("post-squeeze cat at mu=pi/2 has two equatorial lobes") {
        cfg.stage = "post-squeeze";
        scan::cmd_husimi(cfg);
        const auto rows = parse_csv(slurp(tmp.path));
        double at0 = 0.0, atpi = 0.0;
        for (size_t i = 1; i < rows.size(); ++i) {
            const double theta = to_double(rows[i][0]);
            const double phi = to_double(rows[i][1]);
            if (std::abs(theta - kPi / 2.0) > 0.11) continue;
            if (phi == 0.0) at0 = std::max(at0, to_double(rows[i][2]));
            if (std::abs(phi - kPi) < 1e-9) atpi = std::max(atpi, to_double(rows[i][2]));
        }
        CHECK(at0 > 0.4);
        CHECK(atpi > 0.4);
    }
    SUBCASE("unknown stage rejected") {
        cfg.stage = "bogus";
        CHECK_THROWS(scan::cmd_husimi(cfg));
    }
}

TEST_CASE("verify suites") {
    SUBCASE("collisions suite passes standalone") {
        std::ostringstream out;
        CHECK(scan::cmd_verify({"collisions"}, out) == 0);
        CHECK(out.str().find("collisions") != std::string::npos);
        CHECK(out.str().find("PASS") != std::string::npos);
    }
    SUBCASE("unknown suite is an error") {
        std::ostringstream out;
        CHECK(scan::cmd_verify({"bogus"}, out) == 1);
    }
}
