#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "attractoscope/classical/dmkrm.hpp"
#include "attractoscope/diagnostics.hpp"
#include "attractoscope/errors.hpp"
#include "attractoscope/scan/attractor.hpp"
#include "attractoscope/scan/eta_map.hpp"
#include "attractoscope/scan/model.hpp"
#include "attractoscope/scan/search.hpp"

using namespace attractoscope;
using namespace attractoscope::scan;

namespace {

EtaMap synthetic_map(std::size_t nk, std::size_t nd, const std::vector<double>& values) {
    EtaMap m;
    m.k_axis = {0.0, 1.0, nk};
    m.d_axis = {0.0, 1.0, nd};
    m.values = values;
    m.status.assign(values.size(), CellStatus::ok);
    m.seeds.assign(values.size(), 0);
    m.errors.assign(values.size(), "");
    return m;
}

std::vector<std::size_t> all_cells(std::size_t n) {
    std::vector<std::size_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = i;
    return c;
}

ScanProtocol small_dmkrm() {
    ScanProtocol p;
    p.n_ic = 400;
    p.n_periods = 600;
    p.keep_last = 20;
    return p;
}

}  // namespace

TEST_CASE("system and mode names round trip") {
    for (auto s : {System::dmkrm, System::dpdds}) CHECK(parse_system(to_string(s)) == s);
    for (auto m : {Mode::classical, Mode::noisy, Mode::quantum}) CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_system("pendulum"), ConfigError);
}

TEST_CASE("model params expose the scanned pair") {
    ModelParams m;
    auto a = m.at(3.0, 0.4);
    CHECK(a.k() == 3.0);
    CHECK(a.d() == 0.4);
    CHECK(a.dmkrm.gamma == 0.4);
    m.system = System::dpdds;
    auto b = m.at(5.0, 0.1);
    CHECK(b.dpdds.Gamma == 0.1);
    CHECK(b.hbar_eff() == b.dpdds.hbar_eff);
    CHECK(b.with_noise(true).dpdds.noise);
}

TEST_CASE("axis geometry") {
    Axis a{2.0, 7.5, 12};
    CHECK(a.value(0) == 2.0);
    CHECK(a.value(11) == doctest::Approx(7.5));
    CHECK(a.normalized(4.75) == doctest::Approx(0.5));
    CHECK(a.nearest(2.26) == 1);
    CHECK(a.nearest(100.0) == 11);
    Axis single{0.7, 0.7, 1};
    CHECK(single.value(0) == 0.7);
    CHECK(single.normalized(0.7) == 0.0);
    CHECK_THROWS_AS((Axis{1.0, 0.5, 3}.validate("k")), ConfigError);
    CHECK_THROWS_AS((Axis{0.5, 0.6, 1}.validate("k")), ConfigError);
}

TEST_CASE("default windows and seeds") {
    CHECK(default_k_axis(System::dmkrm).count == 111);
    CHECK(default_d_axis(System::dmkrm).count == 91);
    CHECK(default_k_axis(System::dpdds, true).count == 28);
    CHECK(default_d_axis(System::dpdds, true).count == 23);
    CHECK(cell_seed(1, 5) == cell_seed(1, 5));
    CHECK(cell_seed(1, 5) != cell_seed(1, 6));
    CHECK(cell_seed(1, 5) != cell_seed(2, 5));
}

TEST_CASE("nearest_chaotic on a start cell that already qualifies") {
    std::vector<double> v(25, 0.001);
    v[12] = 0.3;
    auto m = synthetic_map(5, 5, v);
    auto t = nearest_chaotic(m, 0.5, 0.5);
    CHECK(t.distance == 0.0);
    CHECK(t.ik == 2);
    CHECK(t.id == 2);
}

TEST_CASE("nearest_chaotic ties go to smaller k, then smaller d") {
    std::vector<double> v(25, 0.0);
    v[2 * 5 + 3] = 0.5;  // (ik 3, id 2)
    v[2 * 5 + 1] = 0.5;  // (ik 1, id 2)
    v[1 * 5 + 2] = 0.5;  // (ik 2, id 1)
    v[3 * 5 + 2] = 0.5;  // (ik 2, id 3)
    auto m = synthetic_map(5, 5, v);
    auto t = nearest_chaotic(m, 0.5, 0.5);
    CHECK(t.ik == 1);
    CHECK(t.id == 2);
    CHECK(t.distance == doctest::Approx(0.25));
    v[2 * 5 + 1] = 0.0;
    t = nearest_chaotic(synthetic_map(5, 5, v), 0.5, 0.5);
    CHECK(t.ik == 2);
    CHECK(t.id == 1);
}

TEST_CASE("nearest_chaotic k_only search stays on the start row") {
    std::vector<double> v(25, 0.0);
    v[3 * 5 + 2] = 0.5;  // next row, same k
    v[2 * 5 + 4] = 0.5;  // same row, farther
    auto m = synthetic_map(5, 5, v);
    CHECK(nearest_chaotic(m, 0.5, 0.5).id == 3);
    auto t = nearest_chaotic(m, 0.5, 0.5, kDefaultEtaThreshold, SearchDirections::k_only);
    CHECK(t.id == 2);
    CHECK(t.ik == 4);
    CHECK(t.distance == doctest::Approx(0.5));
}

TEST_CASE("nearest_chaotic errors") {
    auto m = synthetic_map(3, 3, std::vector<double>(9, 0.01));
    try {
        nearest_chaotic(m, 0.5, 0.5);
        FAIL("expected an error");
    } catch (const ComputeError& e) {
        CHECK(std::string(e.what()) == "no chaotic background in window");
    }
    CHECK_THROWS_AS(nearest_chaotic(m, 2.0, 0.5), ConfigError);
    m.values[0] = 0.9;
    m.status[0] = CellStatus::failed;
    CHECK_THROWS_AS(nearest_chaotic(m, 0.5, 0.5), ComputeError);
}

TEST_CASE("nearest_chaotic distance is monotone in the threshold") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(12 * 9);
        for (auto& x : v) x = u(eng) * u(eng) * 5.0;
        auto m = synthetic_map(12, 9, v);
        double last = -1.0;
        for (double thr : {0.19, 0.15, 0.1, 0.07, 0.05, 0.03, 0.01}) {
            double dist;
            try {
                dist = nearest_chaotic(m, 0.3, 0.6, thr).distance;
            } catch (const ComputeError&) {
                continue;
            }
            if (last >= 0.0) CHECK(dist <= last + 1e-15);
            last = dist;
        }
    }
}

TEST_CASE("eta map is independent of thread count and evaluation subset") {
    ModelParams m;
    auto proto = small_dmkrm();
    Axis k{2.4, 2.8, 3}, d{0.6, 0.7, 2};
    proto.threads = 1;
    const auto a = eta_map(m, proto, k, d, Mode::noisy);
    proto.threads = 3;
    const auto b = eta_map(m, proto, k, d, Mode::noisy);
    CHECK(a.values == b.values);
    CHECK(a.seeds == b.seeds);
    const auto sub = eta_map_cells(m, proto, k, d, Mode::noisy, {4, 1});
    CHECK(sub.values[4] == a.values[4]);
    CHECK(sub.values[1] == a.values[1]);
    CHECK(sub.status[0] == CellStatus::failed);
    CHECK(sub.errors[0] == "not evaluated");
    CHECK(sub.failed_fraction() == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("eta map records per-cell failures") {
    ModelParams m;
    m.system = System::dpdds;
    ScanProtocol proto = ScanProtocol::coarse(System::dpdds);
    proto.n_ic = 2;
    proto.n_periods = 3;
    proto.keep_last = 1;
    proto.n_levels = 5;  // too small a basis for the quantum cells
    Axis k{2.0, 2.5, 2}, d{0.05, 0.1, 2};
    const auto map = eta_map(m, proto, k, d, Mode::quantum);
    CHECK(map.failed_fraction() == 1.0);
    for (const auto& e : map.errors) CHECK_FALSE(e.empty());
}

TEST_CASE("eta csv and pgm output") {
    std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    auto m = synthetic_map(3, 2, v);
    m.status[5] = CellStatus::failed;
    std::ostringstream csv;
    write_eta_csv(csv, m);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,d,eta,status");
    std::size_t rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 6);
    CHECK(last == "1,1,nan,failed");
    std::ostringstream pgm;
    write_eta_pgm(pgm, m);
    const auto s = pgm.str();
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(s.size() == header.size() + 6);
    // Top row is the largest d; the failed cell there is black.
    CHECK(static_cast<unsigned char>(s[header.size() + 2]) == 0);
    CHECK(static_cast<unsigned char>(s[header.size() + 1]) == 255);
}

TEST_CASE("k-only search from the period-3 cell finds the chaotic band") {
    ModelParams m;
    ScanProtocol proto;
    proto.n_ic = 1000;
    proto.n_periods = 2000;
    Axis k{2.3, 2.7, 17}, d{0.7, 0.7, 1};
    const auto map = eta_map_cells(m, proto, k, d, Mode::classical, all_cells(17));
    CHECK(map.at(k.nearest(2.6), 0) < 10.0 / 729.0);
    const auto t = nearest_chaotic(map, 2.6, 0.7, kDefaultEtaThreshold, SearchDirections::k_only);
    CHECK(t.distance > 0.0);
    CHECK(std::abs(t.k - 2.49) <= 0.1);
}

TEST_CASE("k-only search from the driven period-1 cell finds chaos above k = 2.6") {
    ModelParams m;
    m.system = System::dpdds;
    ScanProtocol proto = ScanProtocol::coarse(System::dpdds);
    proto.n_ic = 30;
    Axis k{2.5, 2.9, 9}, d{0.06, 0.06, 1};
    const auto map = eta_map_cells(m, proto, k, d, Mode::classical, all_cells(9));
    const auto t = nearest_chaotic(map, 2.6, 0.06, kDefaultEtaThreshold, SearchDirections::k_only);
    CHECK(t.k >= 2.6);
    CHECK(t.k <= 2.8);
}

TEST_CASE("noiseless period-3 attractor has a three-point support") {
    ModelParams m;
    auto proto = small_dmkrm();
    proto.n_periods = 5000;
    proto.keep_last = 21;
    const auto r = attractor_distribution(m, Mode::classical, proto);
    const auto& g = r.distribution.grid();
    // Cycle points from a single orbit.
    const auto orbit = classical::dmkrm_orbit(Ensemble::uniform_member(1, 0), m.dmkrm, 2000, 3);
    std::vector<PhasePoint> centers;
    for (const auto& pt : orbit) centers.push_back({pt.x, fold_momentum(pt.p)});
    const auto parts = moment_ellipses(r.distribution, centers);
    for (const auto& e : parts) {
        CHECK(e.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(e.var_x < g.cell_width_x() * g.cell_width_x());
        CHECK(e.var_p < g.cell_width_p() * g.cell_width_p());
    }
    CHECK(r.eta <= 3.0 / 729.0 + 1e-12);
}

TEST_CASE("noisy attractor with the same seed overlaps itself exactly") {
    ModelParams m = ModelParams{}.with_noise(true);
    const auto proto = small_dmkrm();
    const auto a = attractor_distribution(m, Mode::noisy, proto);
    const auto b = attractor_distribution(m, Mode::noisy, proto);
    CHECK(overlap(a.distribution, b.distribution) == 1.0);
    CHECK(a.eta > 0.05);
}

TEST_CASE("noisy attractor converges as the ensemble grows") {
    ModelParams m = ModelParams{}.with_noise(true);
    GridSpec g{81, 81, -kPi, kPi};
    ScanProtocol proto;
    proto.n_periods = 300;
    proto.keep_last = 10;
    std::vector<double> overlaps;
    for (std::size_t n : {250, 500, 1000, 2000}) {
        proto.n_ic = n;
        proto.seed = 1;
        const auto a = attractor_distribution(m, Mode::noisy, proto, g);
        proto.seed = 2;
        const auto b = attractor_distribution(m, Mode::noisy, proto, g);
        overlaps.push_back(overlap(a.distribution, b.distribution));
    }
    for (std::size_t i = 1; i < overlaps.size(); ++i) CHECK(overlaps[i] > overlaps[i - 1]);
}

TEST_CASE("protocol validation") {
    ScanProtocol p;
    p.keep_last = p.n_periods + 1;
    CHECK_THROWS_AS(p.validate(System::dmkrm, Mode::classical), ConfigError);
    p = ScanProtocol{};
    p.n_ic = 0;
    CHECK_THROWS_AS(p.validate(System::dmkrm, Mode::classical), ConfigError);
    p = ScanProtocol{};
    p.n_levels = 400;
    CHECK_THROWS_AS(p.validate(System::dmkrm, Mode::quantum), ConfigError);
}
